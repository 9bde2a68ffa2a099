#pragma once

// Finite combinatorial models of R^2 and R^3: cell signatures, lattice
// index arithmetic, chains and the boundary operator.
//
// A basis cell of C(n) = C x ... x C is a tensor product of points x_k and
// intervals e_k, one factor per axis. The Signature records which factors are
// intervals; the CellIndex records the integer label on each axis.

#include <algorithm>
#include <array>
#include <type_traits>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semidec/errors.hpp"

namespace semidec {

/// Set of axes (0-based bit positions) along which a basis cell is an interval.
class Signature {
 public:
  constexpr Signature() = default;
  constexpr explicit Signature(std::uint8_t mask) : mask_(mask) {}

  /// Build from the paper-style 1-based axis labels, e.g. {1, 3} -> e^13.
  static constexpr Signature axes(std::initializer_list<int> one_based) {
    std::uint8_t m = 0;
    for (int a : one_based) m = static_cast<std::uint8_t>(m | (1u << (a - 1)));
    return Signature(m);
  }
  static constexpr Signature point() { return Signature(0); }
  template <int Dim>
  static constexpr Signature volume() {
    return Signature(static_cast<std::uint8_t>((1u << Dim) - 1));
  }

  constexpr std::uint8_t mask() const { return mask_; }
  constexpr int degree() const { return std::popcount(static_cast<unsigned>(mask_)); }
  constexpr bool has(int axis) const { return (mask_ >> axis) & 1u; }

  /// "x" for points, otherwise the 1-based axis digits ("1", "13", "123").
  std::string label() const {
    if (mask_ == 0) return "x";
    std::string s;
    for (int a = 0; a < 8; ++a)
      if (has(a)) s.push_back(static_cast<char>('1' + a));
    return s;
  }

  friend constexpr auto operator<=>(Signature, Signature) = default;

 private:
  std::uint8_t mask_ = 0;
};

/// Signatures of a given degree in ascending mask order. For 3D this is the
/// paper's component order: (1, 2, 3) and (12, 13, 23).
template <int Dim>
std::vector<Signature> signatures_of_degree(int degree) {
  std::vector<Signature> out;
  for (unsigned m = 0; m < (1u << Dim); ++m)
    if (std::popcount(m) == degree) out.emplace_back(static_cast<std::uint8_t>(m));
  return out;
}

/// Parse a signature label ("x", "1", "23", "V") for a given dimension.
template <int Dim>
Signature parse_signature(const std::string& label) {
  if (label == "x") return Signature::point();
  if (label == "V") return Signature::volume<Dim>();
  std::uint8_t m = 0;
  for (char ch : label) {
    const int a = ch - '1';
    if (a < 0 || a >= Dim || ((m >> a) & 1u))
      throw ValidationError("invalid signature label '" + label + "'");
    m = static_cast<std::uint8_t>(m | (1u << a));
  }
  if (m == 0) throw ValidationError("empty signature label");
  return Signature(m);
}

template <int Dim>
using CellIndex = std::array<int, Dim>;

/// Per-axis displacement by tau (+1) or sigma (-1).
template <int Dim>
using Offset = std::array<int, Dim>;

template <int Dim>
constexpr Offset<Dim> negate(Offset<Dim> o) {
  for (auto& v : o) v = -v;
  return o;
}

/// Finite lattice: per-axis extents and periodicity.
///
/// Periodic axes realize the infinite Z-indexed model by wraparound. A
/// non-periodic (truncated) axis has no cells outside [0, extent); operators
/// omit terms that would reach outside.
template <int Dim>
class Lattice {
  static_assert(Dim == 2 || Dim == 3, "only 2D and 3D lattices are modelled");

 public:
  Lattice(std::array<int, Dim> extents, std::array<bool, Dim> periodic)
      : extents_(extents), periodic_(periodic) {
    for (int e : extents_)
      if (e < 1) throw ValidationError("lattice extents must be >= 1");
  }
  explicit Lattice(std::array<int, Dim> extents) : Lattice(extents, all_true()) {}

  static constexpr int dimension() { return Dim; }
  const std::array<int, Dim>& extents() const { return extents_; }
  const std::array<bool, Dim>& periodic() const { return periodic_; }
  int extent(int axis) const { return extents_[axis]; }
  bool is_periodic(int axis) const { return periodic_[axis]; }
  bool fully_periodic() const {
    return std::all_of(periodic_.begin(), periodic_.end(), [](bool p) { return p; });
  }

  std::size_t cell_count() const {
    std::size_t n = 1;
    for (int e : extents_) n *= static_cast<std::size_t>(e);
    return n;
  }

  bool contains(const CellIndex<Dim>& i) const {
    for (int a = 0; a < Dim; ++a)
      if (i[a] < 0 || i[a] >= extents_[a]) return false;
    return true;
  }

  /// Row-major flat position; the first axis varies slowest.
  std::size_t linear(const CellIndex<Dim>& i) const {
    std::size_t pos = 0;
    for (int a = 0; a < Dim; ++a) pos = pos * static_cast<std::size_t>(extents_[a]) + i[a];
    return pos;
  }

  CellIndex<Dim> unravel(std::size_t pos) const {
    CellIndex<Dim> i{};
    for (int a = Dim - 1; a >= 0; --a) {
      i[a] = static_cast<int>(pos % static_cast<std::size_t>(extents_[a]));
      pos /= static_cast<std::size_t>(extents_[a]);
    }
    return i;
  }

  /// Reduce a coordinate tuple to its canonical representative, or nullopt
  /// when a truncated axis is left.
  std::optional<CellIndex<Dim>> canonical(CellIndex<Dim> i) const {
    for (int a = 0; a < Dim; ++a) {
      if (periodic_[a]) {
        i[a] = ((i[a] % extents_[a]) + extents_[a]) % extents_[a];
      } else if (i[a] < 0 || i[a] >= extents_[a]) {
        return std::nullopt;
      }
    }
    return i;
  }

  std::optional<CellIndex<Dim>> try_offset(const CellIndex<Dim>& i, const Offset<Dim>& o) const {
    CellIndex<Dim> j = i;
    for (int a = 0; a < Dim; ++a) j[a] += o[a];
    return canonical(j);
  }

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  static constexpr std::array<bool, Dim> all_true() {
    std::array<bool, Dim> p{};
    p.fill(true);
    return p;
  }

  std::array<int, Dim> extents_;
  std::array<bool, Dim> periodic_;
};

/// Unit shift along one axis: tau for direction +1, sigma for -1.
template <int Dim>
CellIndex<Dim> shift(const std::type_identity_t<CellIndex<Dim>>& index, int axis, int direction,
                     const Lattice<Dim>& lattice) {
  if (axis < 0 || axis >= Dim) throw ValidationError("shift axis out of range");
  if (direction != 1 && direction != -1) throw ValidationError("shift direction must be +1 or -1");
  Offset<Dim> o{};
  o[axis] = direction;
  auto j = lattice.try_offset(index, o);
  if (!j)
    throw OutOfRangeError("shift leaves truncated axis " + std::to_string(axis + 1) +
                          " of the lattice");
  return *j;
}

/// Formal real-coefficient sum of basis cells of one degree. Zero
/// coefficients are dropped so equal chains compare equal.
template <int Dim>
class Chain {
 public:
  using Key = std::pair<Signature, CellIndex<Dim>>;

  explicit Chain(int degree) : degree_(degree) {
    if (degree < 0 || degree > Dim) throw DegreeError("chain degree out of range");
  }

  static Chain cell(Signature sig, const CellIndex<Dim>& index, double coefficient = 1.0) {
    Chain c(sig.degree());
    c.add(sig, index, coefficient);
    return c;
  }

  int degree() const { return degree_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Key, double>& terms() const { return terms_; }

  double coefficient(Signature sig, const CellIndex<Dim>& index) const {
    auto it = terms_.find({sig, index});
    return it == terms_.end() ? 0.0 : it->second;
  }

  Chain& add(Signature sig, const CellIndex<Dim>& index, double coefficient) {
    if (sig.degree() != degree_) throw DegreeError("cell degree does not match chain degree");
    if (coefficient == 0.0) return *this;
    auto [it, inserted] = terms_.try_emplace(Key{sig, index}, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second == 0.0) terms_.erase(it);
    }
    return *this;
  }

  Chain& operator+=(const Chain& other) {
    if (other.degree_ != degree_) throw DegreeError("adding chains of different degree");
    for (const auto& [key, c] : other.terms_) add(key.first, key.second, c);
    return *this;
  }
  Chain& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [key, c] : terms_) c *= s;
    return *this;
  }
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator*(double s, Chain a) { return a *= s; }
  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  int degree_;
  std::map<Key, double> terms_;
};

/// One signed, shifted face in the boundary of a basis cell.
template <int Dim>
struct BoundaryTerm {
  Signature face;
  int sign;
  Offset<Dim> offset;
};

/// d(e_source at i) = sum of sign * e_face at (i + offset).
template <int Dim>
struct BoundaryRule {
  Signature source;
  std::vector<BoundaryTerm<Dim>> terms;
};

namespace detail {

inline Signature sig(std::initializer_list<int> a) { return Signature::axes(a); }

}  // namespace detail

/// Boundary table of C(3), term for term.
inline const std::vector<BoundaryRule<3>>& boundary_rules_3d() {
  using detail::sig;
  const Signature x = Signature::point();
  static const std::vector<BoundaryRule<3>> rules = {
      {sig({1}), {{x, +1, {1, 0, 0}}, {x, -1, {0, 0, 0}}}},
      {sig({2}), {{x, +1, {0, 1, 0}}, {x, -1, {0, 0, 0}}}},
      {sig({3}), {{x, +1, {0, 0, 1}}, {x, -1, {0, 0, 0}}}},
      {sig({1, 2}),
       {{sig({2}), +1, {1, 0, 0}},
        {sig({2}), -1, {0, 0, 0}},
        {sig({1}), -1, {0, 1, 0}},
        {sig({1}), +1, {0, 0, 0}}}},
      {sig({1, 3}),
       {{sig({3}), +1, {1, 0, 0}},
        {sig({3}), -1, {0, 0, 0}},
        {sig({1}), -1, {0, 0, 1}},
        {sig({1}), +1, {0, 0, 0}}}},
      {sig({2, 3}),
       {{sig({3}), +1, {0, 1, 0}},
        {sig({3}), -1, {0, 0, 0}},
        {sig({2}), -1, {0, 0, 1}},
        {sig({2}), +1, {0, 0, 0}}}},
      {sig({1, 2, 3}),
       {{sig({1, 2}), +1, {0, 0, 1}},
        {sig({1, 2}), -1, {0, 0, 0}},
        {sig({2, 3}), +1, {1, 0, 0}},
        {sig({2, 3}), -1, {0, 0, 0}},
        {sig({1, 3}), -1, {0, 1, 0}},
        {sig({1, 3}), +1, {0, 0, 0}}}},
  };
  return rules;
}

/// Boundary table of C(2): the 3D table with the third axis removed.
inline const std::vector<BoundaryRule<2>>& boundary_rules_2d() {
  using detail::sig;
  const Signature x = Signature::point();
  static const std::vector<BoundaryRule<2>> rules = {
      {sig({1}), {{x, +1, {1, 0}}, {x, -1, {0, 0}}}},
      {sig({2}), {{x, +1, {0, 1}}, {x, -1, {0, 0}}}},
      {sig({1, 2}),
       {{sig({2}), +1, {1, 0}},
        {sig({2}), -1, {0, 0}},
        {sig({1}), -1, {0, 1}},
        {sig({1}), +1, {0, 0}}}},
  };
  return rules;
}

template <int Dim>
const std::vector<BoundaryRule<Dim>>& standard_boundary_rules() {
  if constexpr (Dim == 3)
    return boundary_rules_3d();
  else
    return boundary_rules_2d();
}

template <int Dim>
const BoundaryRule<Dim>* find_boundary_rule(const std::vector<BoundaryRule<Dim>>& rules,
                                            Signature source) {
  for (const auto& r : rules)
    if (r.source == source) return &r;
  return nullptr;
}

/// Boundary operator, extended linearly. Degree-0 chains map to the zero
/// 0-chain. On truncated axes, faces outside the lattice are omitted.
template <int Dim>
Chain<Dim> boundary(const Chain<Dim>& c, const Lattice<Dim>& lattice,
                    const std::vector<BoundaryRule<Dim>>& rules = standard_boundary_rules<Dim>()) {
  if (c.degree() == 0) return Chain<Dim>(0);
  Chain<Dim> out(c.degree() - 1);
  for (const auto& [key, coeff] : c.terms()) {
    const auto* rule = find_boundary_rule(rules, key.first);
    if (rule == nullptr) throw TranscriptionFault("no boundary rule for e^" + key.first.label());
    for (const auto& t : rule->terms) {
      auto j = lattice.try_offset(key.second, t.offset);
      if (j) out.add(t.face, *j, coeff * t.sign);
    }
  }
  return out;
}

/// Half-open per-axis index range [begin, end).
struct IndexRange {
  int begin;
  int end;
};

/// Top-degree chain with unit coefficient on every cell of a box.
template <int Dim>
Chain<Dim> volume_chain(const Lattice<Dim>& lattice,
                        const std::type_identity_t<std::array<IndexRange, Dim>>& ranges) {
  Chain<Dim> out(Dim);
  for (int a = 0; a < Dim; ++a) {
    if (ranges[a].begin < 0 || ranges[a].end > lattice.extent(a))
      throw ValidationError("volume range exceeds lattice extents");
    if (ranges[a].begin >= ranges[a].end) return out;
  }
  CellIndex<Dim> i{};
  for (int a = 0; a < Dim; ++a) i[a] = ranges[a].begin;
  while (true) {
    out.add(Signature::volume<Dim>(), i, 1.0);
    int a = Dim - 1;
    for (; a >= 0; --a) {
      if (++i[a] < ranges[a].end) break;
      i[a] = ranges[a].begin;
    }
    if (a < 0) break;
  }
  return out;
}

/// Volume chain over the whole lattice.
template <int Dim>
Chain<Dim> volume_chain(const Lattice<Dim>& lattice) {
  std::array<IndexRange, Dim> r{};
  for (int a = 0; a < Dim; ++a) r[a] = {0, lattice.extent(a)};
  return volume_chain(lattice, r);
}

}  // namespace semidec
