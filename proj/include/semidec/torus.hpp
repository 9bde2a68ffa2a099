#pragma once

// The 2x2 combinatorial torus in natural units with J = 0, Q = 0.
//
// The semi-discrete system becomes d/dt [EH] = M [EH] with the Gauss
// constraint M1 [E] = 0. Eliminating the three dependent E components leaves
// d/dt [~EH] = M2 [~EH] on nine unknowns, which is solved in closed form.
//
// Component orderings (paper labels, 1-based (k,s)):
//   [EH]  = E1_11 E1_21 E2_12 E2_11 E1_12 E1_22 E2_22 E2_21 H_11 H_21 H_12 H_22
//   [~EH] = E1_21 E2_11 E1_22 E2_22 E2_21 H_11 H_21 H_12 H_22

#include <array>
#include <cmath>
#include <algorithm>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "semidec/errors.hpp"
#include "semidec/exact.hpp"
#include "semidec/maxwell.hpp"

namespace semidec::torus {

using IntMatrix = std::vector<std::vector<long long>>;
using Vector9 = Eigen::Matrix<double, 9, 1>;
using Vector12 = Eigen::Matrix<double, 12, 1>;
using Matrix9 = Eigen::Matrix<double, 9, 9>;

/// One entry of an ordering: field ('E' or 'H'), E component (1 or 2),
/// and 1-based cell labels.
struct ComponentLabel {
  char field;
  int component;
  int k;
  int s;

  /// "E1_21" or "H_22".
  std::string text() const {
    std::string out(1, field);
    if (field == 'E') out += std::to_string(component);
    return out + "_" + std::to_string(k) + std::to_string(s);
  }
};

inline const std::array<ComponentLabel, 12>& eh_ordering() {
  static const std::array<ComponentLabel, 12> o = {{{'E', 1, 1, 1},
                                                    {'E', 1, 2, 1},
                                                    {'E', 2, 1, 2},
                                                    {'E', 2, 1, 1},
                                                    {'E', 1, 1, 2},
                                                    {'E', 1, 2, 2},
                                                    {'E', 2, 2, 2},
                                                    {'E', 2, 2, 1},
                                                    {'H', 0, 1, 1},
                                                    {'H', 0, 2, 1},
                                                    {'H', 0, 1, 2},
                                                    {'H', 0, 2, 2}}};
  return o;
}

/// Positions in [EH] of the nine reduced unknowns [~EH].
inline constexpr std::array<std::size_t, 9> kReducedPositions = {1, 3, 5, 6, 7, 8, 9, 10, 11};

inline std::array<ComponentLabel, 9> reduced_ordering() {
  std::array<ComponentLabel, 9> o{};
  for (std::size_t i = 0; i < 9; ++i) o[i] = eh_ordering()[kReducedPositions[i]];
  return o;
}

inline Lattice<2> torus_lattice() { return Lattice<2>({2, 2}); }

/// Unpack an [EH] vector into forms on the 2x2 torus.
inline std::pair<DiscreteForm<2>, DiscreteForm<2>> unpack_eh(const Vector12& x) {
  const Lattice<2> L = torus_lattice();
  DiscreteForm<2> E(L, 1), H(L, 0);
  for (std::size_t i = 0; i < 12; ++i) {
    const auto& c = eh_ordering()[i];
    const CellIndex<2> idx{c.k - 1, c.s - 1};
    if (c.field == 'E')
      E(Signature::axes({c.component}), idx) = x[static_cast<Eigen::Index>(i)];
    else
      H(Signature::point(), idx) = x[static_cast<Eigen::Index>(i)];
  }
  return {std::move(E), std::move(H)};
}

inline Vector12 pack_eh(const DiscreteForm<2>& E, const DiscreteForm<2>& H) {
  Vector12 x;
  for (std::size_t i = 0; i < 12; ++i) {
    const auto& c = eh_ordering()[i];
    const CellIndex<2> idx{c.k - 1, c.s - 1};
    x[static_cast<Eigen::Index>(i)] =
        c.field == 'E' ? E(Signature::axes({c.component}), idx) : H(Signature::point(), idx);
  }
  return x;
}

struct TorusSystem {
  IntMatrix M;   ///< 12 x 12
  IntMatrix M1;  ///< 4 x 8
  IntMatrix M2;  ///< 9 x 9

  Matrix9 M2d() const {
    Matrix9 m;
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) m(i, j) = static_cast<double>(M2[i][j]);
    return m;
  }
};

/// The matrices exactly as printed.
inline TorusSystem printed_torus_system() {
  TorusSystem t;
  t.M = {
      {0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 1},  {0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 1, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 1, -1, 0, 0},  {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -1},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, -1},  {0, 0, 0, 0, 0, 0, 0, 0, 1, 0, -1, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, -1, 1, 0, 0},  {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 1},
      {-1, 0, 0, 1, 1, 0, 0, -1, 0, 0, 0, 0}, {0, -1, 0, -1, 0, 1, 0, 1, 0, 0, 0, 0},
      {1, 0, 1, 0, -1, 0, -1, 0, 0, 0, 0, 0}, {0, 1, -1, 0, 0, -1, 1, 0, 0, 0, 0, 0},
  };
  t.M1 = {
      {1, -1, -1, 1, 0, 0, 0, 0},
      {-1, 1, 0, 0, 0, 0, -1, 1},
      {0, 0, 1, -1, 1, -1, 0, 0},
      {0, 0, 0, 0, -1, 1, 1, -1},
  };
  t.M2 = {
      {0, 0, 0, 0, 0, -1, 0, 1, 0},   {0, 0, 0, 0, 0, 0, 0, 1, -1},
      {0, 0, 0, 0, 0, 1, 0, -1, 0},   {0, 0, 0, 0, 0, -1, 1, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, -1, 1},   {-1, 1, 1, 2, -3, 0, 0, 0, 0},
      {-1, -1, 1, 0, 1, 0, 0, 0, 0},  {1, 1, -1, -4, 3, 0, 0, 0, 0},
      {1, -1, -1, 2, -1, 0, 0, 0, 0},
  };
  return t;
}

/// Printed row echelon form of M1.
inline IntMatrix printed_m1_echelon() {
  return {
      {1, -1, 0, 0, 0, 0, 1, -1},
      {0, 0, 1, -1, 0, 0, 1, -1},
      {0, 0, 0, 0, 1, -1, -1, 1},
      {0, 0, 0, 0, 0, 0, 0, 0},
  };
}

namespace detail {

inline long long to_integer(double v, const std::string& what) {
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-12) throw NumericalError(what + " has a non-integer entry");
  return static_cast<long long>(r);
}

inline exact::Matrix rational_block(const IntMatrix& m) { return exact::to_rational(m); }

}  // namespace detail

/// Solution map of the Gauss constraint: every [E] in ker M1 is determined by
/// the free components through the reduced row echelon form.
struct ConstraintReduction {
  exact::Echelon echelon;                ///< exact RREF of M1
  std::vector<std::size_t> free_columns;  ///< [E] positions chosen freely
  /// 12 x 9 map from [~EH] to [EH], exact integers.
  IntMatrix lift;

  std::size_t rank() const { return echelon.rank(); }

  Vector12 apply(const Vector9& reduced) const {
    Vector12 x = Vector12::Zero();
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 9; ++j) x[i] += static_cast<double>(lift[i][j]) * reduced[j];
    return x;
  }
};

/// Row-reduce M1 exactly and express the pivot components of [E] in terms of
/// the remaining five.
inline ConstraintReduction constraint_reduce(const TorusSystem& sys) {
  ConstraintReduction out;
  out.echelon = exact::row_reduce(detail::rational_block(sys.M1));
  std::array<bool, 8> pivot{};
  for (std::size_t p : out.echelon.pivots) pivot[p] = true;
  for (std::size_t c = 0; c < 8; ++c)
    if (!pivot[c]) out.free_columns.push_back(c);

  // The reduced unknowns must be exactly the free E components followed by H.
  std::vector<std::size_t> expected(kReducedPositions.begin(), kReducedPositions.begin() + 5);
  if (out.free_columns != expected)
    throw TranscriptionFault("Gauss constraint does not leave the expected free components");

  out.lift.assign(12, std::vector<long long>(9, 0));
  for (std::size_t j = 0; j < 9; ++j) out.lift[kReducedPositions[j]][j] = 1;
  for (std::size_t r = 0; r < out.echelon.pivots.size(); ++r) {
    const std::size_t p = out.echelon.pivots[r];
    for (std::size_t j = 0; j < 5; ++j) {
      const exact::Rational v = -out.echelon.reduced[r][out.free_columns[j]];
      if (v.denominator() != 1) throw NumericalError("non-integer constraint coefficient");
      out.lift[p][j] = v.numerator();
    }
  }
  return out;
}

/// Re-derive M, M1, M2 from the Maxwell right-hand side on the periodic 2x2
/// lattice in natural units.
inline TorusSystem derived_torus_system() {
  const Lattice<2> L = torus_lattice();
  const PhysicalConstants k = PhysicalConstants::natural();
  const SourceSpec<2> none = SourceSpec<2>::zero(L);
  TorusSystem t;
  t.M.assign(12, std::vector<long long>(12, 0));
  t.M1.assign(4, std::vector<long long>(8, 0));
  for (int j = 0; j < 12; ++j) {
    Vector12 unit = Vector12::Zero();
    unit[j] = 1.0;
    auto [E, H] = unpack_eh(unit);
    const FluxState<2> x = flux_state(E, H, k);
    const FieldState<2> rates = field_rates(field_state(x, 0.0, k), none, k);
    const Vector12 col = pack_eh(rates.E, rates.H);
    for (int i = 0; i < 12; ++i) t.M[i][j] = detail::to_integer(col[i], "derived M");

    if (j < 8) {
      auto [electric, magnetic] = gauss_residual(field_state(x, 0.0, k), none);
      // Rows follow the cells (1,1), (2,1), (1,2), (2,2).
      const std::array<CellIndex<2>, 4> cells = {{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
      for (int i = 0; i < 4; ++i)
        t.M1[i][j] = detail::to_integer(electric(Signature::volume<2>(), cells[i]), "derived M1");
    }
  }
  TorusSystem partial = t;
  partial.M2.clear();
  const ConstraintReduction red = constraint_reduce(partial);
  t.M2.assign(9, std::vector<long long>(9, 0));
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      long long v = 0;
      for (int l = 0; l < 12; ++l) v += t.M[kReducedPositions[i]][l] * red.lift[l][j];
      t.M2[i][j] = v;
    }
  return t;
}

namespace detail {

inline void require_equal(const IntMatrix& printed, const IntMatrix& derived, const char* name) {
  for (std::size_t i = 0; i < printed.size(); ++i)
    for (std::size_t j = 0; j < printed[i].size(); ++j)
      if (printed[i][j] != derived[i][j])
        throw TranscriptionFault(std::string(name) + "(" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + "): printed " +
                                 std::to_string(printed[i][j]) + ", derived " +
                                 std::to_string(derived[i][j]));
}

}  // namespace detail

/// Printed matrices, checked entry by entry against the derivation from the
/// Maxwell right-hand side.
inline TorusSystem build_torus_system() {
  TorusSystem printed = printed_torus_system();
  const TorusSystem derived = derived_torus_system();
  detail::require_equal(printed.M, derived.M, "M");
  detail::require_equal(printed.M1, derived.M1, "M1");
  detail::require_equal(printed.M2, derived.M2, "M2");
  return printed;
}

/// A printed eigenvector entry that had to be changed.
struct Erratum {
  int vector;  ///< 1-based h index
  int entry;   ///< 1-based component
  double printed;
  double corrected;
};

/// Printed eigenvectors h1..h8 in exact form; h9 is (sqrt 2 / 2) times an
/// integer pattern.
inline std::array<std::array<exact::Rational, 9>, 8> printed_rational_vectors() {
  using R = exact::Rational;
  const R h(1, 2);
  return {{
      {1, 0, 1, 0, 0, 0, 0, 0, 0},
      {0, 1, 0, 1, 1, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 1, 1, 1, 1},
      {-h, -h, h, h, h, 0, -1, 1, 0},
      {-h, h, h, -h, -h, -1, 0, 0, 0},
      {h, h, -h, -h, -h, 0, -1, 1, 0},
      {h, -h, -h, h, h, -1, 0, 0, 1},
      {0, 0, 0, 0, 0, 1, -1, -1, 1},
  }};
}
inline constexpr std::array<int, 9> kPrintedH9Pattern = {-1, -1, 1, -1, 1, 0, 0, 0, 0};

/// Eigenvalues paired with h1..h7.
inline constexpr std::array<int, 7> kRealEigenvalues = {0, 0, 0, -2, -2, 2, 2};

inline std::array<Vector9, 9> printed_vectors() {
  std::array<Vector9, 9> out;
  const auto r = printed_rational_vectors();
  for (std::size_t i = 0; i < 8; ++i)
    for (int j = 0; j < 9; ++j) out[i][j] = boost::rational_cast<double>(r[i][j]);
  for (int j = 0; j < 9; ++j) out[8][j] = kPrintedH9Pattern[j] * std::numbers::sqrt2 / 2.0;
  return out;
}

/// Characteristic polynomial -l^3 (l-2)^2 (l+2)^2 (l^2+8), expanded.
inline exact::Polynomial printed_charpoly_expansion() {
  using exact::multiply;
  using exact::power;
  exact::Polynomial p = {-1, 0, 0, 0};  // -l^3
  p = multiply(p, power({1, -2}, 2));
  p = multiply(p, power({1, 2}, 2));
  return multiply(p, {1, 0, 8});
}

struct EigenvalueEntry {
  std::complex<double> value;
  int multiplicity;
};

struct EigenStructure {
  exact::Polynomial charpoly;           ///< det(M2 - l I), highest power first
  std::vector<EigenvalueEntry> eigenvalues;
  std::array<Vector9, 9> printed;       ///< h1..h9 as printed
  std::array<Vector9, 9> basis;         ///< after any single-entry corrections
  std::array<double, 7> printed_residuals{};  ///< |M2 h_i - l_i h_i|_inf, printed h
  std::array<double, 7> basis_residuals{};    ///< same for the corrected basis
  std::vector<Erratum> errata;

  double omega = 2.0 * std::numbers::sqrt2;
  /// Sign s with M2 (h8 + i s h9) = i omega (h8 + i s h9).
  int pair_sign = 0;
  double pair_residual = 0.0;
  /// M2 h8 = alpha h9 and M2 h9 = beta h8.
  double alpha = 0.0;
  double beta = 0.0;
  /// Dimension of the (c8, c9) family for which c8 h8 cos(wt) + c9 h9 sin(wt)
  /// solves the system; 2 would make it a fundamental pair.
  int printed_oscillatory_dimension = 0;
  bool printed_oscillatory_is_fundamental() const { return printed_oscillatory_dimension == 2; }
  double basis_determinant = 0.0;

  Matrix9 M2;
  /// (1/omega) M2 h8 and (1/omega) M2 h9, the sine partners of the real pair.
  Vector9 sine8, sine9;

  /// Eigenvalue attached to basis function i (0-based, i < 7).
  double lambda(std::size_t i) const { return kRealEigenvalues[i]; }
};

namespace detail {

using RVec = std::array<exact::Rational, 9>;

inline RVec shifted_residual(const IntMatrix& m, const RVec& h, long long lambda) {
  RVec r{};
  for (int i = 0; i < 9; ++i) {
    exact::Rational s = -exact::Rational(lambda) * h[i];
    for (int j = 0; j < 9; ++j) s += exact::Rational(m[i][j]) * h[j];
    r[i] = s;
  }
  return r;
}

/// If h fails (M - lambda I) h = 0 and exactly one single-entry change fixes
/// it, return that (entry, new value).
inline std::optional<std::pair<int, exact::Rational>> single_entry_repair(const IntMatrix& m,
                                                                          const RVec& h,
                                                                          long long lambda) {
  const RVec r = shifted_residual(m, h, lambda);
  std::optional<std::pair<int, exact::Rational>> found;
  int count = 0;
  for (int j = 0; j < 9; ++j) {
    // column j of (M - lambda I)
    RVec col{};
    for (int i = 0; i < 9; ++i) col[i] = exact::Rational(m[i][j] - (i == j ? lambda : 0));
    std::optional<exact::Rational> alpha;
    bool ok = true;
    for (int i = 0; i < 9 && ok; ++i) {
      if (exact::is_zero(col[i])) {
        ok = exact::is_zero(r[i]);
      } else {
        const exact::Rational a = -r[i] / col[i];
        if (!alpha)
          alpha = a;
        else if (*alpha != a)
          ok = false;
      }
    }
    if (ok && alpha && !exact::is_zero(*alpha)) {
      ++count;
      found = std::make_pair(j, h[j] + *alpha);
    }
  }
  if (count != 1) return std::nullopt;
  return found;
}

inline double max_abs(const Vector9& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace detail

/// Characteristic polynomial, eigenvalues and verified eigenvectors of M2.
///
/// Each printed h1..h7 is checked exactly. A failing vector is repaired only
/// when a unique single-entry change makes it an eigenvector; otherwise this
/// throws TranscriptionFault. The repair is recorded in `errata`.
inline EigenStructure eigenstructure(const TorusSystem& sys) {
  EigenStructure es;
  es.M2 = sys.M2d();

  es.charpoly = exact::charpoly(sys.M2);
  if (es.charpoly != printed_charpoly_expansion())
    throw TranscriptionFault("characteristic polynomial of M2 differs from the printed factorization");

  // Cross-check the roots against the polynomial itself.
  for (long long root : {0LL, -2LL, 2LL}) {
    const int m = exact::root_multiplicity(es.charpoly, root);
    es.eigenvalues.push_back({std::complex<double>(static_cast<double>(root), 0.0), m});
  }
  exact::Polynomial monic = es.charpoly;
  for (auto& c : monic) c = -c;
  if (exact::remainder(monic, {1, 0, 8}) != exact::Polynomial(2, 0) ||
      exact::root_multiplicity(es.charpoly, 0) != 3 ||
      exact::root_multiplicity(es.charpoly, 2) != 2 ||
      exact::root_multiplicity(es.charpoly, -2) != 2)
    throw TranscriptionFault("eigenvalue multiplicities do not match the factorization");
  es.eigenvalues.push_back({{0.0, es.omega}, 1});
  es.eigenvalues.push_back({{0.0, -es.omega}, 1});

  es.printed = printed_vectors();
  es.basis = es.printed;
  auto rational = printed_rational_vectors();
  for (std::size_t i = 0; i < 7; ++i) {
    const auto r = detail::shifted_residual(sys.M2, rational[i], kRealEigenvalues[i]);
    double worst = 0.0;
    for (const auto& v : r) worst = std::max(worst, std::abs(boost::rational_cast<double>(v)));
    es.printed_residuals[i] = worst;
    if (worst == 0.0) continue;
    auto fix = detail::single_entry_repair(sys.M2, rational[i], kRealEigenvalues[i]);
    if (!fix)
      throw TranscriptionFault("h" + std::to_string(i + 1) + " is not an eigenvector of M2");
    es.errata.push_back({static_cast<int>(i + 1), fix->first + 1,
                         boost::rational_cast<double>(rational[i][fix->first]),
                         boost::rational_cast<double>(fix->second)});
    rational[i][fix->first] = fix->second;
    es.basis[i][fix->first] = boost::rational_cast<double>(fix->second);
  }
  for (std::size_t i = 0; i < 7; ++i) {
    es.basis_residuals[i] = detail::max_abs(es.M2 * es.basis[i] - kRealEigenvalues[i] * es.basis[i]);
    if (es.basis_residuals[i] > 1e-12)
      throw TranscriptionFault("corrected h" + std::to_string(i + 1) + " still fails");
  }

  // Complex pair. With u = h8 + i s h9: M2 u = i omega u  <=>
  // M2 h8 = -s omega h9 and M2 h9 = s omega h8.
  const Vector9& h8 = es.basis[7];
  const Vector9& h9 = es.basis[8];
  const Vector9 m8 = es.M2 * h8;
  const Vector9 m9 = es.M2 * h9;
  double best = std::numeric_limits<double>::infinity();
  for (int s : {1, -1}) {
    const double res = std::max(detail::max_abs(m8 + s * es.omega * h9),
                                detail::max_abs(m9 - s * es.omega * h8));
    if (res < best) {
      best = res;
      es.pair_sign = s;
    }
  }
  es.pair_residual = best;
  if (best > 1e-12) throw TranscriptionFault("(h8, h9) is not a complex eigenpair of M2");
  es.alpha = m8.dot(h9) / h9.squaredNorm();
  es.beta = m9.dot(h8) / h8.squaredNorm();
  es.sine8 = m8 / es.omega;
  es.sine9 = m9 / es.omega;

  // c8 h8 cos + c9 h9 sin solves x' = M2 x iff
  //   alpha c8 - omega c9 = 0  and  omega c8 + beta c9 = 0.
  Eigen::Matrix2d cond;
  cond << es.alpha, -es.omega, es.omega, es.beta;
  Eigen::FullPivLU<Eigen::Matrix2d> lu(cond);
  lu.setThreshold(1e-12);
  es.printed_oscillatory_dimension = 2 - static_cast<int>(lu.rank());

  Matrix9 assembly;
  for (int i = 0; i < 9; ++i) assembly.col(i) = es.basis[static_cast<std::size_t>(i)];
  es.basis_determinant = assembly.determinant();
  return es;
}

/// Closed-form solution x(t) = sum c_i phi_i(t) of d/dt x = M2 x.
///
/// phi_1..3 are constant, phi_4,5 decay as e^{-2t}, phi_6,7 grow as e^{2t},
/// and the oscillatory pair is the real fundamental pair
///   phi_8 = h8 cos(wt) + (M2 h8 / w) sin(wt),
///   phi_9 = h9 cos(wt) + (M2 h9 / w) sin(wt),  w = 2 sqrt 2.
class TorusSolution {
 public:
  TorusSolution(EigenStructure es, const Vector9& coefficients)
      : es_(std::move(es)), c_(coefficients) {}

  const Vector9& coefficients() const { return c_; }
  const EigenStructure& eigen() const { return es_; }

  /// n-th time derivative of basis function i (0-based) at t.
  Vector9 basis_function(std::size_t i, double t, int order = 0) const {
    if (i < 7) {
      const double l = es_.lambda(i);
      return std::pow(l, order) * std::exp(l * t) * es_.basis[i];
    }
    const double w = es_.omega;
    const double phase = order * std::numbers::pi / 2.0;
    const double wn = std::pow(w, order);
    const double cs = wn * std::cos(w * t + phase);
    const double sn = wn * std::sin(w * t + phase);
    if (i == 7) return cs * es_.basis[7] + sn * es_.sine8;
    return cs * es_.basis[8] + sn * es_.sine9;
  }

  /// [~EH] (or its n-th derivative) at time t.
  Vector9 evaluate(double t, int order = 0) const {
    Vector9 x = Vector9::Zero();
    for (std::size_t i = 0; i < 9; ++i)
      if (c_[static_cast<Eigen::Index>(i)] != 0.0)
        x += c_[static_cast<Eigen::Index>(i)] * basis_function(i, t, order);
    return x;
  }

 private:
  EigenStructure es_;
  Vector9 c_;
};

inline TorusSolution analytic_solution(const EigenStructure& es, const Vector9& coefficients) {
  return TorusSolution(es, coefficients);
}

/// Coefficients c with sum c_i phi_i(0) = x0.
inline Vector9 fit_constants(const EigenStructure& es, const Vector9& x0) {
  Matrix9 a;
  for (int i = 0; i < 9; ++i) a.col(i) = es.basis[static_cast<std::size_t>(i)];
  Eigen::FullPivLU<Matrix9> lu(a);
  if (!lu.isInvertible()) throw NumericalError("fundamental basis at t = 0 is singular");
  const Vector9 c = lu.solve(x0);
  if ((a * c - x0).cwiseAbs().maxCoeff() > 1e-10)
    throw NumericalError("constant fit residual exceeds 1e-10");
  return c;
}

/// exp(M2 t) x0 by Pade scaling and squaring.
inline Vector9 matrix_exponential_propagate(const TorusSystem& sys, const Vector9& x0, double t) {
  if (!(t >= 0.0)) throw ValidationError("propagation time must be non-negative");
  if (t == 0.0) return x0;
  const Matrix9 a = sys.M2d() * t;
  return a.exp() * x0;
}

}  // namespace semidec::torus
