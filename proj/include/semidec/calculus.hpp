#pragma once

// Operator calculus on discrete forms: pairing with chains, coboundary,
// cup product, star and its inverse, codifferential, Laplacian and the
// inner product over a volume chain.
//
// Operators pull values: the output at a cell reads the input at shifted
// cells. On truncated axes a read outside the lattice contributes nothing.

#include <cstddef>
#include <vector>

#include "semidec/errors.hpp"
#include "semidec/form.hpp"
#include "semidec/lattice.hpp"
#include "semidec/tables.hpp"

namespace semidec {

/// <c, f>: sum over chain terms of coefficient times the matching component.
template <int Dim>
double pairing(const Chain<Dim>& c, const DiscreteForm<Dim>& f) {
  if (c.degree() != f.degree()) throw DegreeError("pairing a chain and a form of different degree");
  double sum = 0.0;
  for (const auto& [key, coeff] : c.terms()) {
    auto j = f.lattice().canonical(key.second);
    if (!j) throw OutOfRangeError("chain cell lies outside the truncated lattice");
    sum += coeff * f(key.first, *j);
  }
  return sum;
}

/// Discrete exterior derivative, defined by <a, d f> = <boundary a, f>.
/// Each output component is read off the boundary table of its basis cell.
template <int Dim>
DiscreteForm<Dim> coboundary(const DiscreteForm<Dim>& f,
                             const OperatorTables<Dim>& tables = standard_tables<Dim>()) {
  if (f.degree() == Dim) return DiscreteForm<Dim>(f.lattice(), Dim);
  const Lattice<Dim>& L = f.lattice();
  DiscreteForm<Dim> out(L, f.degree() + 1);
  for (Signature s : out.signatures()) {
    const auto* rule = find_boundary_rule(tables.boundary, s);
    if (rule == nullptr) throw TranscriptionFault("no boundary rule for e^" + s.label());
    auto dst = out.component(s);
    for (std::size_t pos = 0; pos < dst.size(); ++pos) {
      const CellIndex<Dim> i = L.unravel(pos);
      double v = 0.0;
      for (const auto& t : rule->terms) {
        auto j = L.try_offset(i, t.offset);
        if (j) v += t.sign * f(t.face, *j);
      }
      dst[pos] = v;
    }
  }
  return out;
}

namespace detail {

template <int Dim>
DiscreteForm<Dim> apply_star_rules(const DiscreteForm<Dim>& f,
                                   const std::vector<StarRule<Dim>>& rules) {
  const Lattice<Dim>& L = f.lattice();
  DiscreteForm<Dim> out(L, Dim - f.degree());
  for (const auto& r : rules) {
    if (r.source.degree() != f.degree()) continue;
    auto src = f.component(r.source);
    auto dst = out.component(r.target);
    const Offset<Dim> back = negate<Dim>(r.offset);
    for (std::size_t pos = 0; pos < dst.size(); ++pos) {
      auto j = L.try_offset(L.unravel(pos), back);
      if (j) dst[pos] += r.sign * src[L.linear(*j)];
    }
  }
  return out;
}

}  // namespace detail

/// Discrete Hodge star K^r -> K^{n-r}.
template <int Dim>
DiscreteForm<Dim> star(const DiscreteForm<Dim>& f,
                       const OperatorTables<Dim>& tables = standard_tables<Dim>()) {
  return detail::apply_star_rules(f, tables.star);
}

/// Two-sided inverse of star.
template <int Dim>
DiscreteForm<Dim> star_inverse(const DiscreteForm<Dim>& f,
                               const OperatorTables<Dim>& tables = standard_tables<Dim>()) {
  return detail::apply_star_rules(f, tables.star_inverse);
}

/// Cup product, the bilinear extension of the basis table. Basis pairs with
/// no table row multiply to zero.
template <int Dim>
DiscreteForm<Dim> cup(const DiscreteForm<Dim>& f, const DiscreteForm<Dim>& g,
                      const OperatorTables<Dim>& tables = standard_tables<Dim>()) {
  if (!(f.lattice() == g.lattice())) throw TopologyMismatch("cup of forms on different lattices");
  if (f.degree() + g.degree() > Dim) throw DegreeError("cup product degree exceeds dimension");
  const Lattice<Dim>& L = f.lattice();
  DiscreteForm<Dim> out(L, f.degree() + g.degree());
  for (const auto& r : tables.cup) {
    if (r.left.degree() != f.degree() || r.right.degree() != g.degree()) continue;
    auto lhs = f.component(r.left);
    auto rhs = g.component(r.right);
    auto dst = out.component(r.result);
    for (std::size_t pos = 0; pos < dst.size(); ++pos) {
      auto j = L.try_offset(L.unravel(pos), r.right_offset);
      if (j) dst[pos] += r.sign * lhs[pos] * rhs[L.linear(*j)];
    }
  }
  return out;
}

/// delta f = (-1)^deg(f) * star_inverse(d(star f)); zero on 0-forms.
template <int Dim>
DiscreteForm<Dim> codifferential(const DiscreteForm<Dim>& f,
                                 const OperatorTables<Dim>& tables = standard_tables<Dim>()) {
  if (f.degree() == 0) return DiscreteForm<Dim>(f.lattice(), 0);
  DiscreteForm<Dim> out = star_inverse(coboundary(star(f, tables), tables), tables);
  if (f.degree() % 2 == 1) out *= -1.0;
  return out;
}

/// Laplacian d delta + delta d. The term that would leave the degree range
/// (delta of a 0-form, d of a top form) is zero.
template <int Dim>
DiscreteForm<Dim> laplacian(const DiscreteForm<Dim>& f,
                            const OperatorTables<Dim>& tables = standard_tables<Dim>()) {
  DiscreteForm<Dim> out(f.lattice(), f.degree());
  if (f.degree() > 0) out += coboundary(codifferential(f, tables), tables);
  if (f.degree() < Dim) out += codifferential(coboundary(f, tables), tables);
  return out;
}

/// Region of integration for the inner product: a top-degree chain with
/// unit coefficients.
template <int Dim>
class InnerProductDomain {
 public:
  explicit InnerProductDomain(Chain<Dim> chain) : chain_(std::move(chain)) {
    if (chain_.degree() != Dim) throw DegreeError("inner product domain must be a top-degree chain");
    for (const auto& [key, c] : chain_.terms())
      if (c != 1.0) throw ValidationError("inner product domain must have unit coefficients");
  }
  /// The whole lattice.
  static InnerProductDomain full(const Lattice<Dim>& lattice) {
    return InnerProductDomain(volume_chain(lattice));
  }
  const Chain<Dim>& chain() const { return chain_; }

 private:
  Chain<Dim> chain_;
};

/// (f, g)_V = <V, f cup star g>; zero for forms of different degree.
template <int Dim>
double inner_product(const DiscreteForm<Dim>& f, const DiscreteForm<Dim>& g,
                     const InnerProductDomain<Dim>& domain,
                     const OperatorTables<Dim>& tables = standard_tables<Dim>()) {
  if (f.degree() != g.degree()) return 0.0;
  return pairing(domain.chain(), cup(f, star(g, tables), tables));
}

/// Inner product over the whole lattice.
template <int Dim>
double inner_product(const DiscreteForm<Dim>& f, const DiscreteForm<Dim>& g) {
  return inner_product(f, g, InnerProductDomain<Dim>::full(f.lattice()));
}

}  // namespace semidec
