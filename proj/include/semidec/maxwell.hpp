#pragma once

// Semi-discrete Maxwell system on K(2) and K(3).
//
// Field degrees (3D / 2D):
//   E intensity 1 / 1,  H intensity 1 / 0,
//   D flux      2 / 1,  B flux      2 / 2,
//   J current   2 / 1,  Q charge    3 / 2.
//
// The evolved unknowns are the fluxes (D, B):
//   dB/dt = -d E,   dD/dt = d H - J,
// and the intensities are recovered with the exact inverse of the primal
// constitutive relations D = eps0 * star E, B = mu0 * star H.

#include <cmath>
#include <functional>
#include <initializer_list>
#include <type_traits>
#include <utility>

#include "semidec/calculus.hpp"
#include "semidec/errors.hpp"
#include "semidec/form.hpp"

namespace semidec {

/// Vacuum constants. Natural units (all 1) are the default.
class PhysicalConstants {
 public:
  PhysicalConstants() = default;
  PhysicalConstants(double eps0, double mu0) : eps0_(eps0), mu0_(mu0) {
    if (!(eps0 > 0.0) || !(mu0 > 0.0) || !std::isfinite(eps0) || !std::isfinite(mu0))
      throw ValidationError("eps0 and mu0 must be positive and finite");
  }
  /// Also checks a user-supplied c against c^2 = 1 / (mu0 eps0).
  PhysicalConstants(double eps0, double mu0, double c) : PhysicalConstants(eps0, mu0) {
    if (!(c > 0.0) || std::abs(c * c * mu0 * eps0 - 1.0) > 1e-9)
      throw ValidationError("speed of light inconsistent with c^2 = 1/(mu0 eps0)");
  }
  static PhysicalConstants natural() { return {}; }

  double eps0() const { return eps0_; }
  double mu0() const { return mu0_; }
  double c() const { return 1.0 / std::sqrt(mu0_ * eps0_); }
  double inv_c2() const { return mu0_ * eps0_; }

 private:
  double eps0_ = 1.0;
  double mu0_ = 1.0;
};

/// Degrees of each Maxwell quantity in dimension Dim.
template <int Dim>
struct FieldDegrees {
  static constexpr int E = 1;
  static constexpr int H = Dim - 2;
  static constexpr int D = Dim - 1;
  static constexpr int B = 2;
  static constexpr int J = Dim - 1;
  static constexpr int Q = Dim;
};

/// Snapshot of the Maxwell unknowns at time t.
template <int Dim>
struct FieldState {
  double t = 0.0;
  DiscreteForm<Dim> E, H, D, B;

  static FieldState zero(const Lattice<Dim>& L, double t = 0.0) {
    using Deg = FieldDegrees<Dim>;
    return {t, DiscreteForm<Dim>(L, Deg::E), DiscreteForm<Dim>(L, Deg::H),
            DiscreteForm<Dim>(L, Deg::D), DiscreteForm<Dim>(L, Deg::B)};
  }

  void validate() const {
    using Deg = FieldDegrees<Dim>;
    if (E.degree() != Deg::E || H.degree() != Deg::H || D.degree() != Deg::D ||
        B.degree() != Deg::B)
      throw DegreeError("field state has wrong form degrees");
    const auto& L = E.lattice();
    if (!(H.lattice() == L) || !(D.lattice() == L) || !(B.lattice() == L))
      throw TopologyMismatch("field state forms live on different lattices");
  }
};

/// The evolved pair (D, B). A vector space, so it can be fed to the integrators.
template <int Dim>
struct FluxState {
  DiscreteForm<Dim> D, B;

  FluxState& operator+=(const FluxState& o) {
    D += o.D;
    B += o.B;
    return *this;
  }
  FluxState& operator*=(double s) {
    D *= s;
    B *= s;
    return *this;
  }
  friend FluxState operator+(FluxState a, const FluxState& b) { return a += b; }
  friend FluxState operator-(FluxState a, const FluxState& b) {
    a.D -= b.D;
    a.B -= b.B;
    return a;
  }
  friend FluxState operator*(double s, FluxState a) { return a *= s; }
  friend bool all_finite(const FluxState& x) { return x.D.all_finite() && x.B.all_finite(); }
  double max_abs() const { return std::max(D.max_abs(), B.max_abs()); }
};

/// Time-dependent sources. dJ is only needed by the wave residuals.
template <int Dim>
struct SourceSpec {
  std::function<DiscreteForm<Dim>(double)> J;
  std::function<DiscreteForm<Dim>(double)> dJ;
  std::function<DiscreteForm<Dim>(double)> Q;

  static SourceSpec zero(const Lattice<Dim>& L) {
    auto j0 = [L](double) { return DiscreteForm<Dim>(L, FieldDegrees<Dim>::J); };
    auto q0 = [L](double) { return DiscreteForm<Dim>(L, FieldDegrees<Dim>::Q); };
    return {j0, j0, q0};
  }

  /// J(t) = amplitude * sin(omega t + phase), with its exact time derivative.
  static SourceSpec sinusoidal_current(const DiscreteForm<Dim>& amplitude, double omega,
                                       double phase, const DiscreteForm<Dim>& charge) {
    if (amplitude.degree() != FieldDegrees<Dim>::J) throw DegreeError("current has wrong degree");
    if (charge.degree() != FieldDegrees<Dim>::Q) throw DegreeError("charge has wrong degree");
    return {[=](double t) { return std::sin(omega * t + phase) * amplitude; },
            [=](double t) { return omega * std::cos(omega * t + phase) * amplitude; },
            [=](double) { return charge; }};
  }
};

/// D = eps0 * star E,  B = mu0 * star H.
template <int Dim>
std::pair<DiscreteForm<Dim>, DiscreteForm<Dim>> constitutive_primal(
    const DiscreteForm<Dim>& E, const DiscreteForm<Dim>& H, const PhysicalConstants& k) {
  if (E.degree() != FieldDegrees<Dim>::E || H.degree() != FieldDegrees<Dim>::H)
    throw DegreeError("constitutive_primal: E or H has wrong degree");
  if (!(E.lattice() == H.lattice())) throw TopologyMismatch("E and H on different lattices");
  return {k.eps0() * star(E), k.mu0() * star(H)};
}

/// Exact inverse of constitutive_primal: E = star_inverse(D) / eps0,
/// H = star_inverse(B) / mu0. This is what the time stepping uses.
template <int Dim>
std::pair<DiscreteForm<Dim>, DiscreteForm<Dim>> constitutive_dual(
    const DiscreteForm<Dim>& D, const DiscreteForm<Dim>& B, const PhysicalConstants& k) {
  if (D.degree() != FieldDegrees<Dim>::D || B.degree() != FieldDegrees<Dim>::B)
    throw DegreeError("constitutive_dual: D or B has wrong degree");
  return {star_inverse(D) / k.eps0(), star_inverse(B) / k.mu0()};
}

/// The dual relations written with star rather than its inverse:
/// eps0 E = star D, mu0 H = star B. They differ from constitutive_dual by
/// the index shift of star star, so the two sets are not simultaneously
/// satisfiable except for shift-invariant fields.
template <int Dim>
std::pair<DiscreteForm<Dim>, DiscreteForm<Dim>> hodge_dual_relations(
    const DiscreteForm<Dim>& D, const DiscreteForm<Dim>& B, const PhysicalConstants& k) {
  if (D.degree() != FieldDegrees<Dim>::D || B.degree() != FieldDegrees<Dim>::B)
    throw DegreeError("hodge_dual_relations: D or B has wrong degree");
  return {star(D) / k.eps0(), star(B) / k.mu0()};
}

/// Full field snapshot from evolved fluxes.
template <int Dim>
FieldState<Dim> field_state(const FluxState<Dim>& x, double t, const PhysicalConstants& k) {
  auto [E, H] = constitutive_dual(x.D, x.B, k);
  return {t, std::move(E), std::move(H), x.D, x.B};
}

/// Fluxes of a field snapshot given its intensities.
template <int Dim>
FluxState<Dim> flux_state(const DiscreteForm<Dim>& E, const DiscreteForm<Dim>& H,
                          const PhysicalConstants& k) {
  auto [D, B] = constitutive_primal(E, H, k);
  return {std::move(D), std::move(B)};
}

/// Time derivative of (D, B): (d H - J(t), -d E).
template <int Dim>
FluxState<Dim> maxwell_rhs(const FluxState<Dim>& x, double t, const SourceSpec<Dim>& sources,
                           const PhysicalConstants& k) {
  auto [E, H] = constitutive_dual(x.D, x.B, k);
  DiscreteForm<Dim> dD = coboundary(H);
  if (sources.J) dD -= sources.J(t);
  return {std::move(dD), -coboundary(E)};
}

/// Time derivatives of all four fields along the flow, given a snapshot.
template <int Dim>
FieldState<Dim> field_rates(const FieldState<Dim>& s, const SourceSpec<Dim>& sources,
                            const PhysicalConstants& k) {
  FluxState<Dim> rate = maxwell_rhs(FluxState<Dim>{s.D, s.B}, s.t, sources, k);
  auto [dE, dH] = constitutive_dual(rate.D, rate.B, k);
  return {s.t, std::move(dE), std::move(dH), std::move(rate.D), std::move(rate.B)};
}

/// Electric (d D - Q) and magnetic (d B) Gauss residuals, both top forms.
template <int Dim>
std::pair<DiscreteForm<Dim>, DiscreteForm<Dim>> gauss_residual(const FieldState<Dim>& s,
                                                               const SourceSpec<Dim>& sources) {
  DiscreteForm<Dim> electric = coboundary(s.D);
  if (sources.Q) electric -= sources.Q(s.t);
  return {std::move(electric), coboundary(s.B)};
}

/// d(E cup H) + 1/2 d/dt(E cup D + B cup H) + E cup J, assembled from cup
/// products. `rates` holds dE/dt, dH/dt, dD/dt, dB/dt.
template <int Dim>
DiscreteForm<Dim> poynting_residual(const FieldState<Dim>& s, const FieldState<Dim>& rates,
                                    const DiscreteForm<Dim>& J) {
  DiscreteForm<Dim> r = coboundary(cup(s.E, s.H));
  DiscreteForm<Dim> energy_rate = cup(rates.E, s.D) + cup(s.E, rates.D) + cup(rates.B, s.H) +
                                  cup(s.B, rates.H);
  r += 0.5 * energy_rate;
  r += cup(s.E, J);
  return r;
}

namespace detail {

template <int Dim>
double at(const DiscreteForm<Dim>& f, std::initializer_list<int> axes,
          std::type_identity_t<CellIndex<Dim>> i, std::type_identity_t<Offset<Dim>> o = {}) {
  for (int a = 0; a < Dim; ++a) i[a] += o[a];
  const Signature s = axes.size() == 0 ? Signature::point() : Signature::axes(axes);
  return f.value_at(s, i);
}

}  // namespace detail

/// The same residual written out component by component, with every cup
/// product expanded by hand. Evaluation shares no code with the cup table.
template <int Dim>
DiscreteForm<Dim> poynting_residual_componentwise(const FieldState<Dim>& s,
                                                  const FieldState<Dim>& rates,
                                                  const DiscreteForm<Dim>& J) {
  using detail::at;
  const Lattice<Dim>& L = s.E.lattice();
  DiscreteForm<Dim> out(L, Dim);
  const Signature V = Signature::volume<Dim>();
  const auto& E = s.E;
  const auto& H = s.H;
  const auto& D = s.D;
  const auto& B = s.B;
  const auto& dE = rates.E;
  const auto& dH = rates.H;
  const auto& dD = rates.D;
  const auto& dB = rates.B;

  for (std::size_t pos = 0; pos < L.cell_count(); ++pos) {
    const CellIndex<Dim> i = L.unravel(pos);
    double v = 0.0;
    if constexpr (Dim == 3) {
      constexpr Offset<3> K{1, 0, 0}, S{0, 1, 0}, M{0, 0, 1};
      constexpr Offset<3> KS{1, 1, 0}, KM{1, 0, 1}, SM{0, 1, 1};
      // (E cup H)^{12}, ^{13}, ^{23} at cell j
      auto eh12 = [&](CellIndex<3> j) {
        return at(E, {1}, j) * at(H, {2}, j, K) - at(E, {2}, j) * at(H, {1}, j, S);
      };
      auto eh13 = [&](CellIndex<3> j) {
        return at(E, {1}, j) * at(H, {3}, j, K) - at(E, {3}, j) * at(H, {1}, j, M);
      };
      auto eh23 = [&](CellIndex<3> j) {
        return at(E, {2}, j) * at(H, {3}, j, S) - at(E, {3}, j) * at(H, {2}, j, M);
      };
      auto plus = [](CellIndex<3> j, Offset<3> o) {
        for (int a = 0; a < 3; ++a) j[a] += o[a];
        return j;
      };
      const double flux = (eh12(plus(i, M)) - eh12(i)) - (eh13(plus(i, S)) - eh13(i)) +
                          (eh23(plus(i, K)) - eh23(i));
      // d/dt (E cup D) by the product rule
      const double ed = dE(Signature::axes({1}), i) * at(D, {2, 3}, i, K) +
                        at(E, {1}, i) * at(dD, {2, 3}, i, K) -
                        (dE(Signature::axes({2}), i) * at(D, {1, 3}, i, S) +
                         at(E, {2}, i) * at(dD, {1, 3}, i, S)) +
                        dE(Signature::axes({3}), i) * at(D, {1, 2}, i, M) +
                        at(E, {3}, i) * at(dD, {1, 2}, i, M);
      const double bh = dB(Signature::axes({1, 2}), i) * at(H, {3}, i, KS) +
                        at(B, {1, 2}, i) * at(dH, {3}, i, KS) -
                        (dB(Signature::axes({1, 3}), i) * at(H, {2}, i, KM) +
                         at(B, {1, 3}, i) * at(dH, {2}, i, KM)) +
                        dB(Signature::axes({2, 3}), i) * at(H, {1}, i, SM) +
                        at(B, {2, 3}, i) * at(dH, {1}, i, SM);
      const double ej = at(E, {1}, i) * at(J, {2, 3}, i, K) - at(E, {2}, i) * at(J, {1, 3}, i, S) +
                        at(E, {3}, i) * at(J, {1, 2}, i, M);
      v = flux + 0.5 * (ed + bh) + ej;
    } else {
      constexpr Offset<2> K{1, 0}, S{0, 1}, KS{1, 1};
      // E cup H is a 1-form: (E^1 H_{tau k}, E^2 H_{tau s})
      auto eh1 = [&](CellIndex<2> j) { return at(E, {1}, j) * at(H, {}, j, K); };
      auto eh2 = [&](CellIndex<2> j) { return at(E, {2}, j) * at(H, {}, j, S); };
      CellIndex<2> ik{i[0] + 1, i[1]}, is{i[0], i[1] + 1};
      const double flux = (eh2(ik) - eh2(i)) - (eh1(is) - eh1(i));
      const double ed = dE(Signature::axes({1}), i) * at(D, {2}, i, K) +
                        at(E, {1}, i) * at(dD, {2}, i, K) -
                        (dE(Signature::axes({2}), i) * at(D, {1}, i, S) +
                         at(E, {2}, i) * at(dD, {1}, i, S));
      const double bh = dB(V, i) * at(H, {}, i, KS) + at(B, {1, 2}, i) * at(dH, {}, i, KS);
      const double ej = at(E, {1}, i) * at(J, {2}, i, K) - at(E, {2}, i) * at(J, {1}, i, S);
      v = flux + 0.5 * (ed + bh) + ej;
    }
    out(V, i) = v;
  }
  return out;
}

}  // namespace semidec
