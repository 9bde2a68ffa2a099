#pragma once

// Reference operators computed from the generic cubical sign rule instead of
// the per-signature tables. For a cell e_S with axes S in ascending order:
//   d:    (df)_S(i) = sum_{a in S} (-1)^pos(a) (f_{S-a}(i + 1_a) - f_{S-a}(i))
//   cup:  e_S(i) cup e_T(i + 1_S) = perm(S, T) e_{S+T}(i), S and T disjoint
//   star: star e_S(i) = perm(S, S^c) e_{S^c}(i + 1_S)
// where perm is the parity of sorting the concatenation.

#include <algorithm>
#include <random>
#include <vector>

#include "semidec/calculus.hpp"

namespace oracle {

using namespace semidec;

inline std::vector<int> axes_of(Signature s, int dim) {
  std::vector<int> out;
  for (int a = 0; a < dim; ++a)
    if (s.has(a)) out.push_back(a);
  return out;
}

inline int parity(std::vector<int> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) sign = -sign;
  return sign;
}

inline int perm(Signature a, Signature b, int dim) {
  std::vector<int> v = axes_of(a, dim);
  const std::vector<int> w = axes_of(b, dim);
  v.insert(v.end(), w.begin(), w.end());
  return parity(v);
}

template <int Dim>
CellIndex<Dim> plus(CellIndex<Dim> i, Signature s) {
  for (int a = 0; a < Dim; ++a)
    if (s.has(a)) ++i[a];
  return i;
}

template <int Dim>
DiscreteForm<Dim> d(const DiscreteForm<Dim>& f) {
  const auto& L = f.lattice();
  DiscreteForm<Dim> out(L, std::min(f.degree() + 1, Dim));
  if (f.degree() == Dim) return out;
  for (Signature s : out.signatures()) {
    const std::vector<int> axes = axes_of(s, Dim);
    for (std::size_t pos = 0; pos < L.cell_count(); ++pos) {
      const CellIndex<Dim> i = L.unravel(pos);
      double v = 0.0;
      for (std::size_t p = 0; p < axes.size(); ++p) {
        const Signature face(static_cast<std::uint8_t>(s.mask() & ~(1u << axes[p])));
        CellIndex<Dim> j = i;
        ++j[axes[p]];
        const double sign = p % 2 == 0 ? 1.0 : -1.0;
        v += sign * (f.value_at(face, j) - f.value_at(face, i));
      }
      out(s, i) = v;
    }
  }
  return out;
}

template <int Dim>
DiscreteForm<Dim> cup(const DiscreteForm<Dim>& f, const DiscreteForm<Dim>& g) {
  const auto& L = f.lattice();
  DiscreteForm<Dim> out(L, f.degree() + g.degree());
  for (Signature a : f.signatures())
    for (Signature b : g.signatures()) {
      if (a.mask() & b.mask()) continue;
      const Signature r(static_cast<std::uint8_t>(a.mask() | b.mask()));
      const int sign = perm(a, b, Dim);
      for (std::size_t pos = 0; pos < L.cell_count(); ++pos) {
        const CellIndex<Dim> i = L.unravel(pos);
        out(r, i) += sign * f(a, i) * g.value_at(b, plus<Dim>(i, a));
      }
    }
  return out;
}

template <int Dim>
DiscreteForm<Dim> star(const DiscreteForm<Dim>& f) {
  const auto& L = f.lattice();
  DiscreteForm<Dim> out(L, Dim - f.degree());
  const std::uint8_t full = static_cast<std::uint8_t>((1u << Dim) - 1);
  for (Signature s : f.signatures()) {
    const Signature c(static_cast<std::uint8_t>(full & ~s.mask()));
    const int sign = perm(s, c, Dim);
    for (std::size_t pos = 0; pos < L.cell_count(); ++pos) {
      const CellIndex<Dim> i = L.unravel(pos);
      auto j = L.canonical(plus<Dim>(i, s));
      if (j) out(c, *j) += sign * f(s, i);
    }
  }
  return out;
}

/// Form with every component shifted back by one along every axis:
/// result(i) = f(i - 1).
template <int Dim>
DiscreteForm<Dim> shift_all_back(const DiscreteForm<Dim>& f) {
  const auto& L = f.lattice();
  DiscreteForm<Dim> out(L, f.degree());
  for (Signature s : f.signatures())
    for (std::size_t pos = 0; pos < L.cell_count(); ++pos) {
      CellIndex<Dim> i = L.unravel(pos);
      CellIndex<Dim> j = i;
      for (int a = 0; a < Dim; ++a) --j[a];
      out(s, i) = f.value_at(s, j);
    }
  return out;
}

template <int Dim>
DiscreteForm<Dim> random_integer_form(std::mt19937_64& g, const Lattice<Dim>& L, int degree,
                                      int bound = 9) {
  std::uniform_int_distribution<int> u(-bound, bound);
  DiscreteForm<Dim> f(L, degree);
  for (Signature s : f.signatures())
    for (double& v : f.component(s)) v = u(g);
  return f;
}

template <int Dim>
DiscreteForm<Dim> random_real_form(std::mt19937_64& g, const Lattice<Dim>& L, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DiscreteForm<Dim> f(L, degree);
  for (Signature s : f.signatures())
    for (double& v : f.component(s)) v = u(g);
  return f;
}

template <int Dim>
Chain<Dim> random_chain(std::mt19937_64& g, const Lattice<Dim>& L, int degree, int terms = 6) {
  const auto sigs = signatures_of_degree<Dim>(degree);
  std::uniform_int_distribution<std::size_t> pick_sig(0, sigs.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_cell(0, L.cell_count() - 1);
  std::uniform_int_distribution<int> coeff(-5, 5);
  Chain<Dim> c(degree);
  for (int t = 0; t < terms; ++t) c.add(sigs[pick_sig(g)], L.unravel(pick_cell(g)), coeff(g));
  return c;
}

}  // namespace oracle
