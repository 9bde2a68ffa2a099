#pragma once

// Wave-equation residuals for the electric field, and the potential
// formulation (A, Phi) with gauge transformations and the Lorentz condition.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "semidec/calculus.hpp"
#include "semidec/maxwell.hpp"

namespace semidec {

/// Sign in front of the time term of the electric wave equation.
///
/// `derived` is the equation satisfied by solutions of the semi-discrete
/// flow: Lap E + s/c^2 (star star E)'' with s = +1 in 3D and s = -1 in 2D.
/// `printed` uses s = +1 in both dimensions; in 2D it is not satisfied by
/// solutions and exists only to report that discrepancy.
enum class WaveConvention { derived, printed };

template <int Dim>
constexpr double wave_time_sign(WaveConvention c) {
  if (c == WaveConvention::printed) return 1.0;
  return Dim == 3 ? 1.0 : -1.0;
}

/// Residual of the electric wave equation at one instant:
///   Lap E + s/c^2 (star star E)'' - R,  R = -mu0 star J' (3D), +mu0 star J' (2D).
/// E_tt is the second time derivative of E, dJ the first of J.
template <int Dim>
DiscreteForm<Dim> wave_residual_E(const DiscreteForm<Dim>& E, const DiscreteForm<Dim>& E_tt,
                                  const DiscreteForm<Dim>& dJ, const PhysicalConstants& k,
                                  WaveConvention convention = WaveConvention::derived) {
  if (E.degree() != 1 || E_tt.degree() != 1) throw DegreeError("wave_residual_E expects 1-forms");
  DiscreteForm<Dim> r = laplacian(E);
  r += (wave_time_sign<Dim>(convention) * k.inv_c2()) * star(star(E_tt));
  const double source_sign = Dim == 3 ? -1.0 : 1.0;
  r -= (source_sign * k.mu0()) * star(dJ);
  return r;
}

/// Wave residual along a sampled trajectory, using centered second
/// differences with step dt. Returns one residual per interior sample
/// (samples 1 .. n-2). dJ[i] is the current derivative at sample i.
template <int Dim>
std::vector<DiscreteForm<Dim>> wave_residual_E_series(
    std::span<const DiscreteForm<Dim>> E, double dt, std::span<const DiscreteForm<Dim>> dJ,
    const PhysicalConstants& k, WaveConvention convention = WaveConvention::derived) {
  if (E.size() < 3) throw ValidationError("wave residual needs at least 3 samples");
  if (dJ.size() != E.size()) throw ValidationError("need one current derivative per sample");
  if (!(dt > 0.0)) throw ValidationError("sample step must be positive");
  std::vector<DiscreteForm<Dim>> out;
  out.reserve(E.size() - 2);
  for (std::size_t i = 1; i + 1 < E.size(); ++i) {
    DiscreteForm<Dim> E_tt = (E[i + 1] - 2.0 * E[i] + E[i - 1]) / (dt * dt);
    out.push_back(wave_residual_E(E[i], E_tt, dJ[i], k, convention));
  }
  return out;
}

/// Vector potential A (1-form) and scalar potential Phi (0-form) with their
/// first two time derivatives.
template <int Dim>
struct Potentials {
  DiscreteForm<Dim> A, dA, d2A;
  DiscreteForm<Dim> Phi, dPhi, d2Phi;

  static Potentials zero(const Lattice<Dim>& L) {
    DiscreteForm<Dim> a(L, 1), p(L, 0);
    return {a, a, a, p, p, p};
  }
};

/// Gauge function Psi (0-form) with three time derivatives, enough to
/// transform both potentials and their second derivatives.
template <int Dim>
struct GaugeFunction {
  DiscreteForm<Dim> Psi, dPsi, d2Psi, d3Psi;
};

/// B = d A,  E = -d Phi - dA/dt.
template <int Dim>
std::pair<DiscreteForm<Dim>, DiscreteForm<Dim>> potentials_to_fields(const Potentials<Dim>& p) {
  return {-coboundary(p.Phi) - p.dA, coboundary(p.A)};
}

/// A' = A + d Psi,  Phi' = Phi - dPsi/dt, applied to every time derivative.
template <int Dim>
Potentials<Dim> gauge_transform(const Potentials<Dim>& p, const GaugeFunction<Dim>& g) {
  return {p.A + coboundary(g.Psi),  p.dA + coboundary(g.dPsi), p.d2A + coboundary(g.d2Psi),
          p.Phi - g.dPsi,           p.dPhi - g.d2Psi,          p.d2Phi - g.d3Psi};
}

/// Lorentz gauge residual -delta A + (1/c^2) dPhi/dt.
template <int Dim>
DiscreteForm<Dim> lorentz_residual(const Potentials<Dim>& p, const PhysicalConstants& k) {
  return -codifferential(p.A) + k.inv_c2() * p.dPhi;
}

/// Residuals of the potential wave equations (Lorentz gauge assumed):
///   Lap A + A''/c^2 - mu0 star_inverse J,
///   Lap Phi + Phi''/c^2 - star_inverse Q / eps0.
template <int Dim>
std::pair<DiscreteForm<Dim>, DiscreteForm<Dim>> wave_residual_potentials(
    const Potentials<Dim>& p, const DiscreteForm<Dim>& J, const DiscreteForm<Dim>& Q,
    const PhysicalConstants& k) {
  DiscreteForm<Dim> ra = laplacian(p.A) + k.inv_c2() * p.d2A - k.mu0() * star_inverse(J);
  DiscreteForm<Dim> rp = laplacian(p.Phi) + k.inv_c2() * p.d2Phi - star_inverse(Q) / k.eps0();
  return {std::move(ra), std::move(rp)};
}

}  // namespace semidec
