#pragma once

// End-to-end torus analysis: matrices, rank certificate, eigen report and a
// trajectory comparison of the closed-form solution against the matrix
// exponential and RK4.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "semidec/errors.hpp"
#include "semidec/integrate.hpp"
#include "semidec/io.hpp"
#include "semidec/torus.hpp"

namespace semidec::torus {

struct ReportOptions {
  double t_end = 1.0;
  double dt = 1e-3;
  double sample_every = 0.1;
  /// "h1" .. "h9", "random:SEED" or nine comma-separated numbers.
  std::string x0 = "random:1";
};

inline constexpr double kAnalyticTolerance = 1e-8;
inline constexpr double kConstraintTolerance = 1e-10;

struct Report {
  nlohmann::json summary;
  std::string comparison_csv;
  bool ok = true;
  std::vector<std::string> failures;
};

inline Vector9 parse_initial_vector(const std::string& spec, const EigenStructure& es) {
  if (spec.size() == 2 && spec[0] == 'h' && spec[1] >= '1' && spec[1] <= '9')
    return es.basis[static_cast<std::size_t>(spec[1] - '1')];
  if (spec.rfind("random:", 0) == 0) {
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(spec.substr(7));
    } catch (const std::exception&) {
      throw ParseError("x0: bad seed in '" + spec + "'");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector9 v;
    for (int i = 0; i < 9; ++i) v[i] = u(rng);
    return v;
  }
  std::vector<double> vals;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(item, &used));
      if (used != item.size() && item.find_first_not_of(' ', used) != std::string::npos)
        throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("x0: cannot read '" + item + "' as a number");
    }
  }
  if (vals.size() != 9) throw ValidationError("x0: expected 9 values, h1 .. h9 or random:SEED");
  return Eigen::Map<const Vector9>(vals.data());
}

inline Vector9 rk4_propagate(const Matrix9& m, const Vector9& x0, double t, double dt) {
  auto rhs = [&](double, const Vector9& x) -> Vector9 { return m * x; };
  return integrate(rhs, x0, t, dt).states.back();
}

inline Report run_report(const ReportOptions& opt) {
  if (!(opt.t_end >= 0.0)) throw ValidationError("t-end must be non-negative");
  if (!(opt.dt > 0.0)) throw ValidationError("dt must be positive");
  if (!(opt.sample_every > 0.0)) throw ValidationError("sample spacing must be positive");

  Report rep;
  auto fail = [&](const std::string& why) {
    rep.ok = false;
    rep.failures.push_back(why);
  };
  using nlohmann::json;

  const TorusSystem sys = build_torus_system();
  const ConstraintReduction red = constraint_reduce(sys);
  const EigenStructure es = eigenstructure(sys);

  json labels_eh = json::array(), labels_reduced = json::array();
  for (const auto& c : eh_ordering()) labels_eh.push_back(c.text());
  for (const auto& c : reduced_ordering()) labels_reduced.push_back(c.text());

  // Echelon certificate.
  exact::Matrix computed = red.echelon.reduced;
  json echelon_rows = json::array();
  for (const auto& row : computed) {
    json r = json::array();
    for (const auto& v : row) r.push_back(boost::rational_cast<double>(v));
    echelon_rows.push_back(std::move(r));
  }
  const bool echelon_matches =
      exact::equal_up_to_row_scaling(exact::to_rational(printed_m1_echelon()), computed);
  if (red.rank() != 3) fail("rank of M1 is not 3");
  if (!echelon_matches) fail("echelon form differs from the printed one");

  json eigenvalues = json::array();
  for (const auto& e : es.eigenvalues)
    eigenvalues.push_back({{"re", e.value.real()}, {"im", e.value.imag()}, {"multiplicity", e.multiplicity}});
  json vectors = json::array();
  for (std::size_t i = 0; i < 9; ++i) {
    json v = {{"name", "h" + std::to_string(i + 1)},
              {"printed", std::vector<double>(es.printed[i].begin(), es.printed[i].end())},
              {"used", std::vector<double>(es.basis[i].begin(), es.basis[i].end())}};
    if (i < 7) {
      v["eigenvalue"] = es.lambda(i);
      v["printed_residual"] = es.printed_residuals[i];
      v["residual"] = es.basis_residuals[i];
    }
    vectors.push_back(std::move(v));
  }
  json errata = json::array();
  for (const auto& e : es.errata)
    errata.push_back({{"vector", "h" + std::to_string(e.vector)},
                      {"entry", e.entry},
                      {"printed", e.printed},
                      {"corrected", e.corrected}});

  // Trajectory comparison.
  const Vector9 x0 = parse_initial_vector(opt.x0, es);
  const TorusSolution sol = analytic_solution(es, fit_constants(es, x0));
  Eigen::Matrix<double, 12, 12> M12;
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) M12(i, j) = static_cast<double>(sys.M[i][j]);
  Eigen::Matrix<double, 4, 8> M1;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 8; ++j) M1(i, j) = static_cast<double>(sys.M1[i][j]);
  const Vector12 lifted0 = red.apply(x0);

  std::ostringstream csv;
  csv << "t";
  for (const auto& l : labels_reduced) csv << ',' << l.get<std::string>();
  csv << ",max_abs_analytic_minus_expm,max_abs_rk4_minus_expm,max_abs_gauss_constraint\n";

  double worst_analytic = 0.0, worst_rk4 = 0.0, worst_constraint = 0.0;
  Vector9 rk = x0;
  double t_prev = 0.0;
  const std::size_t samples = step_count(opt.t_end, opt.sample_every);
  for (std::size_t n = 0; n <= samples; ++n) {
    const double t = n == samples ? opt.t_end : static_cast<double>(n) * opt.sample_every;
    if (t > t_prev) rk = rk4_propagate(es.M2, rk, t - t_prev, opt.dt);
    t_prev = t;
    const Vector9 a = sol.evaluate(t);
    const Vector9 e = matrix_exponential_propagate(sys, x0, t);
    const Vector12 full = t == 0.0 ? lifted0 : Vector12((M12 * t).exp() * lifted0);
    const double da = (a - e).cwiseAbs().maxCoeff();
    const double dr = (rk - e).cwiseAbs().maxCoeff();
    const double dc = (M1 * full.head<8>()).cwiseAbs().maxCoeff();
    worst_analytic = std::max(worst_analytic, da);
    worst_rk4 = std::max(worst_rk4, dr);
    worst_constraint = std::max(worst_constraint, dc);
    csv << io::format_double(t);
    for (int i = 0; i < 9; ++i) csv << ',' << io::format_double(a[i]);
    csv << ',' << io::format_double(da) << ',' << io::format_double(dr) << ',' << io::format_double(dc)
        << '\n';
  }
  if (worst_analytic > kAnalyticTolerance) fail("analytic solution differs from the matrix exponential");
  if (worst_constraint > kConstraintTolerance) fail("Gauss constraint drifts along the flow");

  rep.summary = {
      {"orderings", {{"EH", labels_eh}, {"reduced", labels_reduced}}},
      {"matrices",
       {{"M", sys.M}, {"M1", sys.M1}, {"M2", sys.M2}, {"derived_from_maxwell_rhs_agree", true}}},
      {"constraint",
       {{"rank", red.rank()},
        {"echelon", echelon_rows},
        {"printed_echelon", printed_m1_echelon()},
        {"echelon_matches_printed_up_to_row_scaling", echelon_matches},
        {"lift", red.lift}}},
      {"charpoly",
       {{"coefficients_high_to_low", es.charpoly},
        {"factorization", "-l^3 (l-2)^2 (l+2)^2 (l^2+8)"},
        {"matches_factorization", es.charpoly == printed_charpoly_expansion()}}},
      {"eigenvalues", eigenvalues},
      {"eigenvectors", vectors},
      {"errata", errata},
      {"oscillatory_pair",
       {{"omega", es.omega},
        {"sign", es.pair_sign},
        {"residual", es.pair_residual},
        {"M2_h8_over_h9", es.alpha},
        {"M2_h9_over_h8", es.beta},
        {"printed_form_solution_dimension", es.printed_oscillatory_dimension},
        {"printed_form_is_fundamental", es.printed_oscillatory_is_fundamental()}}},
      {"basis_determinant", es.basis_determinant},
      {"comparison",
       {{"x0", std::vector<double>(x0.begin(), x0.end())},
        {"t_end", opt.t_end},
        {"dt", opt.dt},
        {"max_abs_analytic_minus_expm", worst_analytic},
        {"max_abs_rk4_minus_expm", worst_rk4},
        {"max_abs_gauss_constraint", worst_constraint}}},
      {"ok", rep.ok},
      {"failures", rep.failures},
  };
  rep.comparison_csv = csv.str();
  return rep;
}

}  // namespace semidec::torus
