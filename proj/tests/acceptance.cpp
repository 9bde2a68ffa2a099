// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   acceptance        run all criteria, exit 1 if any fails
//   acceptance N      run criterion N only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "semidec/integrate.hpp"
#include "semidec/maxwell.hpp"
#include "semidec/stencils.hpp"
#include "semidec/torus.hpp"
#include "semidec/verify.hpp"
#include "semidec/waves.hpp"

using namespace semidec;
using namespace semidec::torus;

namespace tol {
constexpr double kCriterion1Seconds = 1.0;
constexpr double kCriterion2Seconds = 1.0;
constexpr double kCriterion3Seconds = 1.0;
constexpr double kEigenResidual = 1e-12;
constexpr double kAnalyticVsExpm = 1e-8;
constexpr double kRk4VsExpm = 1e-6;
constexpr double kRk4Step = 1e-3;
constexpr double kConvergenceCoarse = 0.1;
constexpr double kConvergenceLow = 8.0;
constexpr double kConvergenceHigh = 32.0;
constexpr double kCriterion5Seconds = 5.0;
constexpr double kCriterion6Seconds = 30.0;
constexpr double kMagneticGauss = 1e-12;
constexpr double kElectricGaussDrift = 1e-9;
constexpr double kGauge = 1e-12;
constexpr double kPoyntingRealFields = 1e-12;
constexpr double kPoyntingConstant = 1e-12;
constexpr double kWave = 1e-8;
}  // namespace tol

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vector9 random_vector(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector9 v;
  for (int i = 0; i < 9; ++i) v[i] = u(rng);
  return v;
}

// 1. Printed matrices reproduced and equal to the ones derived from the flow.
Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const TorusSystem built = build_torus_system();
    const TorusSystem printed = printed_torus_system();
    const TorusSystem derived = derived_torus_system();
    const bool same = built.M == printed.M && built.M1 == printed.M1 && built.M2 == printed.M2 &&
                      derived.M == printed.M && derived.M1 == printed.M1 && derived.M2 == printed.M2;
    const bool shapes = printed.M.size() == 12 && printed.M[0].size() == 12 && printed.M1.size() == 4 &&
                        printed.M1[0].size() == 8 && printed.M2.size() == 9 && printed.M2[0].size() == 9;
    o.pass = same && shapes;
    o.detail = same ? "M, M1, M2 printed == derived entry for entry" : "printed and derived matrices differ";
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = e.what();
  }
  const double s = seconds_since(t0);
  o.pass = o.pass && s < tol::kCriterion1Seconds;
  o.detail += fmt(", %.3f s", s);
  return o;
}

// 2. Exact rank and echelon form of M1.
Outcome criterion2() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto red = constraint_reduce(printed_torus_system());
  const bool echelon =
      exact::equal_up_to_row_scaling(exact::to_rational(printed_m1_echelon()), red.echelon.reduced);
  const double s = seconds_since(t0);
  o.pass = red.rank() == 3 && echelon && s < tol::kCriterion2Seconds;
  o.detail = "rank " + std::to_string(red.rank()) + ", echelon " + (echelon ? "matches" : "differs") +
             " up to row scaling" + fmt(", %.3f s", s);
  return o;
}

// 3. Characteristic polynomial against the expanded factorization.
Outcome criterion3() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const exact::Polynomial p = exact::charpoly(printed_torus_system().M2);
  const exact::Polynomial q = printed_charpoly_expansion();
  const double s = seconds_since(t0);
  o.pass = p == q && s < tol::kCriterion3Seconds;
  std::string coeffs;
  for (long long c : p) coeffs += (coeffs.empty() ? "" : " ") + std::to_string(c);
  o.detail = "det(M2 - l I) = [" + coeffs + "] " + (p == q ? "==" : "!=") +
             " expansion of -l^3 (l-2)^2 (l+2)^2 (l^2+8)" + fmt(", %.3f s", s);
  return o;
}

// 4. Printed eigenvectors, oscillatory pair and the printed oscillatory form.
Outcome criterion4() {
  Outcome o;
  const TorusSystem sys = printed_torus_system();
  const Matrix9 M2 = sys.M2d();
  const auto h = printed_vectors();
  double worst = 0.0;
  int worst_index = 0;
  for (std::size_t i = 0; i < 7; ++i) {
    const double r = (M2 * h[i] - kRealEigenvalues[i] * h[i]).cwiseAbs().maxCoeff();
    if (r > worst) {
      worst = r;
      worst_index = static_cast<int>(i) + 1;
    }
    if (r > tol::kEigenResidual)
      o.notes.push_back("printed h" + std::to_string(i + 1) + fmt(": |M2 h - l h|_inf = %.3g", r));
  }
  // Pair relation with the printed h8, h9.
  const double w = 2.0 * std::sqrt(2.0);
  int sign = 0;
  double pair = INFINITY;
  for (int s : {1, -1}) {
    const double r = std::max((M2 * h[7] + s * w * h[8]).cwiseAbs().maxCoeff(),
                              (M2 * h[8] - s * w * h[7]).cwiseAbs().maxCoeff());
    if (r < pair) {
      pair = r;
      sign = s;
    }
  }
  const EigenStructure es = eigenstructure(sys);
  o.pass = worst <= tol::kEigenResidual && pair <= tol::kEigenResidual;
  o.detail = fmt("max printed residual h1..h7 %.3g", worst) +
             (worst_index ? " (h" + std::to_string(worst_index) + ")" : std::string()) +
             "; pair sign s = " + std::to_string(sign) + fmt(", pair residual %.3g", pair) +
             "; printed c8 h8 cos + c9 h9 sin is " +
             (es.printed_oscillatory_is_fundamental() ? "" : "NOT ") + "a fundamental pair (solution dimension " +
             std::to_string(es.printed_oscillatory_dimension) + ")";
  for (const auto& e : es.errata)
    o.notes.push_back("h" + std::to_string(e.vector) + " with entry " + std::to_string(e.entry) + " = " +
                      fmt("%g", e.corrected) + fmt(" instead of %g", e.printed) +
                      fmt(" is an eigenvector (residual %.3g)", es.basis_residuals[e.vector - 1]));
  o.notes.push_back(fmt("M2 h8 = %.6f h9", es.alpha) + fmt(", M2 h9 = %.6f h8", es.beta));
  return o;
}

// 5. Closed form vs matrix exponential vs RK4.
Outcome criterion5() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const TorusSystem sys = build_torus_system();
  const EigenStructure es = eigenstructure(sys);
  std::mt19937_64 rng(5);
  double analytic = 0.0, rk4 = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const Vector9 x0 = random_vector(rng);
    const TorusSolution sol = analytic_solution(es, fit_constants(es, x0));
    for (int n = 0; n <= 10; ++n) {
      const double t = 0.1 * n;
      analytic = std::max(analytic, (sol.evaluate(t) - matrix_exponential_propagate(sys, x0, t)).cwiseAbs().maxCoeff());
    }
    auto rhs = [&](double, const Vector9& x) -> Vector9 { return es.M2 * x; };
    const Vector9 end = integrate(rhs, x0, 1.0, tol::kRk4Step).states.back();
    rk4 = std::max(rk4, (end - matrix_exponential_propagate(sys, x0, 1.0)).cwiseAbs().maxCoeff());
  }
  // Order of convergence from one coarse pair of runs.
  const Vector9 x0 = random_vector(rng);
  const Vector9 exact_end = matrix_exponential_propagate(sys, x0, 1.0);
  auto rhs = [&](double, const Vector9& x) -> Vector9 { return es.M2 * x; };
  const double e1 = (integrate(rhs, x0, 1.0, tol::kConvergenceCoarse).states.back() - exact_end).cwiseAbs().maxCoeff();
  const double e2 =
      (integrate(rhs, x0, 1.0, tol::kConvergenceCoarse / 2).states.back() - exact_end).cwiseAbs().maxCoeff();
  const double factor = e1 / e2;
  const double s = seconds_since(t0);
  o.pass = analytic <= tol::kAnalyticVsExpm && rk4 <= tol::kRk4VsExpm && factor >= tol::kConvergenceLow &&
           factor <= tol::kConvergenceHigh && s < tol::kCriterion5Seconds;
  o.detail = fmt("max |analytic - expm| %.3g", analytic) + fmt(", max |rk4 - expm| at t=1 %.3g", rk4) +
             fmt(", halving factor %.2f", factor) + fmt(", %.3f s", s);
  return o;
}

// 6. Calculus identities.
Outcome criterion6() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  verify::Options opt;
  opt.sizes3d = {2, 3, 4};
  opt.sizes2d = {2, 3, 4, 5, 6};
  opt.trials = 1000;
  opt.seed = 6;
  const auto report = verify::run(opt);
  const double s = seconds_since(t0);
  const std::vector<std::string> wanted = {"coboundary_squared_zero",      "leibniz_rule",
                                           "star_star_commutes_with_d_3d", "star_star_anticommutes_with_d_2d",
                                           "star_inverse_roundtrip",       "codifferential_adjoint",
                                           "codifferential_explicit"};
  std::size_t found = 0;
  for (const auto& c : report.checks) {
    if (std::find(wanted.begin(), wanted.end(), c.name) == wanted.end()) continue;
    ++found;
    o.pass = o.pass && c.passed;
    o.notes.push_back(c.name + (c.passed ? " ok" : " FAILED") + fmt(", max residual %.3g", c.max_residual));
  }
  o.pass = o.pass && found == wanted.size() && s < tol::kCriterion6Seconds;
  o.detail = std::to_string(found) + " identity checks x 1000 trials on up to 4^3 and 6^2" + fmt(", %.2f s", s);
  return o;
}

// 7. Gauss laws along the flow, gauge invariance.
Outcome criterion7() {
  Outcome o;
  const Lattice<3> L({2, 2, 2});
  verify::FormSampler g(7);
  const PhysicalConstants k;
  const SourceSpec<3> none = SourceSpec<3>::zero(L);
  FluxState<3> x0{coboundary(g.real_form(L, 1)), coboundary(g.real_form(L, 1))};
  const DiscreteForm<3> dD0 = coboundary(x0.D);
  double magnetic = 0.0, electric = 0.0;
  std::function<void(double, const FluxState<3>&)> hook = [&](double, const FluxState<3>& x) {
    magnetic = std::max(magnetic, coboundary(x.B).max_abs());
    electric = std::max(electric, max_abs_diff(coboundary(x.D), dD0));
  };
  integrate([&](double t, const FluxState<3>& x) { return maxwell_rhs(x, t, none, k); }, x0, 1.0, 0.01, hook);

  double gauge = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Potentials<3> p{g.real_form(L, 1), g.real_form(L, 1), g.real_form(L, 1),
                    g.real_form(L, 0), g.real_form(L, 0), g.real_form(L, 0)};
    GaugeFunction<3> psi{g.real_form(L, 0), g.real_form(L, 0), g.real_form(L, 0), g.real_form(L, 0)};
    auto [E0, B0] = potentials_to_fields(p);
    auto [E1, B1] = potentials_to_fields(gauge_transform(p, psi));
    gauge = std::max({gauge, max_abs_diff(E0, E1), max_abs_diff(B0, B1)});
  }
  o.pass = magnetic <= tol::kMagneticGauss && electric <= tol::kElectricGaussDrift && gauge <= tol::kGauge;
  o.detail = fmt("max |dB| %.3g", magnetic) + fmt(", max |dD - dD(0)| %.3g", electric) +
             fmt(", gauge change of (E, B) %.3g", gauge);
  return o;
}

// 8. Poynting identity: two evaluations agree; vanishes for constant fields.
template <int Dim>
FieldState<Dim> random_state(const Lattice<Dim>& L, verify::FormSampler& g, bool integer) {
  using Deg = FieldDegrees<Dim>;
  auto f = [&](int d) { return integer ? g.integer_form(L, d) : g.real_form(L, d); };
  return {0.0, f(Deg::E), f(Deg::H), f(Deg::D), f(Deg::B)};
}

template <int Dim>
void poynting_agreement(const Lattice<Dim>& L, verify::FormSampler& g, double& exact, double& real) {
  for (int trial = 0; trial < 50; ++trial) {
    for (bool integer : {true, false}) {
      const auto s = random_state(L, g, integer);
      const auto r = random_state(L, g, integer);
      const auto J = integer ? g.integer_form(L, FieldDegrees<Dim>::J) : g.real_form(L, FieldDegrees<Dim>::J);
      const double d = max_abs_diff(poynting_residual(s, r, J), poynting_residual_componentwise(s, r, J));
      (integer ? exact : real) = std::max(integer ? exact : real, d);
    }
  }
}

template <int Dim>
double poynting_constant(const Lattice<Dim>& L, verify::FormSampler& g) {
  using Deg = FieldDegrees<Dim>;
  const PhysicalConstants k;
  auto constant_form = [&](int degree) {
    DiscreteForm<Dim> f(L, degree);
    for (Signature s : f.signatures()) {
      const double v = std::uniform_real_distribution<double>(-1.0, 1.0)(g.engine());
      for (double& x : f.component(s)) x = v;
    }
    return f;
  };
  const SourceSpec<Dim> none = SourceSpec<Dim>::zero(L);
  FluxState<Dim> x0 = flux_state(constant_form(Deg::E), constant_form(Deg::H), k);
  double worst = 0.0;
  std::function<void(double, const FluxState<Dim>&)> hook = [&](double t, const FluxState<Dim>& x) {
    const FieldState<Dim> s = field_state(x, t, k);
    const FieldState<Dim> rates = field_rates(s, none, k);
    worst = std::max({worst, poynting_residual(s, rates, none.J(t)).max_abs(),
                      poynting_residual_componentwise(s, rates, none.J(t)).max_abs()});
  };
  integrate([&](double t, const FluxState<Dim>& x) { return maxwell_rhs(x, t, none, k); }, x0, 1.0, 0.05, hook);
  return worst;
}

Outcome criterion8() {
  Outcome o;
  verify::FormSampler g(8);
  double exact = 0.0, real = 0.0;
  poynting_agreement(Lattice<3>({3, 3, 3}), g, exact, real);
  poynting_agreement(Lattice<2>({4, 4}), g, exact, real);
  const double constant = std::max(poynting_constant(Lattice<3>({2, 2, 2}), g), poynting_constant(Lattice<2>({2, 2}), g));
  o.pass = exact == 0.0 && real <= tol::kPoyntingRealFields && constant <= tol::kPoyntingConstant;
  o.detail = fmt("cup vs componentwise: integer fields %.3g", exact) + fmt(", real fields %.3g", real) +
             fmt("; constant-field residual %.3g", constant);
  return o;
}

// 9. Torus solutions in the 2D electric wave system as displayed.
double torus_wave_residual(WaveConvention convention) {
  const TorusSystem sys = build_torus_system();
  const EigenStructure es = eigenstructure(sys);
  const ConstraintReduction red = constraint_reduce(sys);
  const PhysicalConstants k;
  const DiscreteForm<2> zero_current(torus_lattice(), 1);
  std::mt19937_64 rng(9);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const TorusSolution sol = analytic_solution(es, fit_constants(es, random_vector(rng)));
    for (int n = 0; n <= 10; ++n) {
      const double t = 0.1 * n;
      const DiscreteForm<2> E = unpack_eh(red.apply(sol.evaluate(t, 0))).first;
      const DiscreteForm<2> E_tt = unpack_eh(red.apply(sol.evaluate(t, 2))).first;
      worst = std::max(worst, stencil::wave_system_residual_2d(E, E_tt, zero_current, k, convention).max_abs());
    }
  }
  return worst;
}

Outcome criterion9() {
  Outcome o;
  const double printed = torus_wave_residual(WaveConvention::printed);
  const double derived = torus_wave_residual(WaveConvention::derived);
  o.pass = printed <= tol::kWave;
  o.detail = fmt("displayed system (time term -1/c^2 E''_{sk,ss}): max residual %.3g", printed);
  o.notes.push_back(fmt("same system with +1/c^2 E''_{sk,ss}: max residual %.3g", derived));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3,
                                                          criterion4, criterion5, criterion6,
                                                          criterion7, criterion8, criterion9};
  std::vector<int> which;
  if (argc > 1) {
    const int n = std::atoi(argv[1]);
    if (n < 1 || n > 9) {
      std::fprintf(stderr, "criterion must be 1..9\n");
      return 2;
    }
    which.push_back(n);
  } else {
    for (int n = 1; n <= 9; ++n) which.push_back(n);
  }
  bool all = true;
  for (int n : which) {
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(n - 1)]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %d: %s  %s\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    for (const auto& note : o.notes) std::printf("    note: %s\n", note.c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
