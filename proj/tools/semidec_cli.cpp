// semidec command-line driver: simulate, verify, torus.
//
// Exit codes: 0 success, 1 internal error, 2 parse error, 3 validation
// error, 4 verification failure.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "semidec/scenario.hpp"
#include "semidec/torus_report.hpp"
#include "semidec/verify.hpp"

namespace {

enum Exit { kOk = 0, kInternal = 1, kParse = 2, kValidation = 3, kVerification = 4 };

struct SimulateArgs {
  std::string scenario;
  std::string csv, diagnostics, plot;
};

int cmd_simulate(const SimulateArgs& a) {
  semidec::AnyScenario any = semidec::load_scenario(a.scenario);
  return std::visit(
      [&](auto& sc) {
        if (!a.csv.empty()) sc.run.csv = a.csv;
        if (!a.diagnostics.empty()) sc.run.diagnostics = a.diagnostics;
        if (!a.plot.empty()) sc.run.plot_data = a.plot;
        const auto result = semidec::simulate(sc);
        semidec::write_outputs(sc, result);
        if (!sc.run.csv) {
          semidec::io::write_trajectory_csv(std::cout, semidec::io::field_columns(sc.lattice), result.states);
        } else {
          const auto& last = result.diagnostics.back();
          std::cerr << "simulated " << result.states.size() - 1 << " steps to t = " << last.t
                    << ", energy " << last.energy << ", max gauss residual "
                    << std::max(last.gauss_electric, last.gauss_magnetic) << '\n';
        }
        return int{kOk};
      },
      any);
}

struct VerifyArgs {
  semidec::verify::Options options;
  std::string out;
};

int cmd_verify(const VerifyArgs& a) {
  const auto report = semidec::verify::run(a.options);
  std::cout << semidec::verify::summary(report);
  if (!a.out.empty()) semidec::io::write_text_file(a.out, report.to_json().dump(2) + "\n");
  return report.passed() ? kOk : kVerification;
}

struct TorusArgs {
  semidec::torus::ReportOptions options;
  std::string out = ".";
  std::string plot;
};

int cmd_torus(const TorusArgs& a) {
  namespace fs = std::filesystem;
  const auto rep = semidec::torus::run_report(a.options);
  fs::create_directories(a.out);
  const auto& s = rep.summary;
  nlohmann::json matrices = s["matrices"];
  matrices["orderings"] = s["orderings"];
  matrices["constraint"] = s["constraint"];
  nlohmann::json eigen = {{"charpoly", s["charpoly"]},
                          {"eigenvalues", s["eigenvalues"]},
                          {"eigenvectors", s["eigenvectors"]},
                          {"errata", s["errata"]},
                          {"oscillatory_pair", s["oscillatory_pair"]},
                          {"basis_determinant", s["basis_determinant"]},
                          {"comparison", s["comparison"]},
                          {"ok", s["ok"]},
                          {"failures", s["failures"]}};
  semidec::io::write_text_file((fs::path(a.out) / "matrices.json").string(), matrices.dump(2) + "\n");
  semidec::io::write_text_file((fs::path(a.out) / "eigen_report.json").string(), eigen.dump(2) + "\n");
  semidec::io::write_text_file((fs::path(a.out) / "comparison.csv").string(), rep.comparison_csv);
  if (!a.plot.empty()) {
    // Long format from the wide comparison table.
    std::istringstream in(rep.comparison_csv);
    std::string header, line;
    std::getline(in, header);
    std::vector<std::string> names;
    std::stringstream hs(header);
    for (std::string h; std::getline(hs, h, ',');) names.push_back(h);
    std::ostringstream out;
    out << "t,series,value\n";
    while (std::getline(in, line)) {
      std::stringstream ls(line);
      std::string t, v;
      std::getline(ls, t, ',');
      for (std::size_t i = 1; std::getline(ls, v, ','); ++i) out << t << ',' << names[i] << ',' << v << '\n';
    }
    semidec::io::write_text_file(a.plot, out.str());
  }

  std::cout << "rank(M1) = " << s["constraint"]["rank"] << '\n'
            << "charpoly = " << s["charpoly"]["coefficients_high_to_low"].dump() << '\n'
            << "pair sign s = " << s["oscillatory_pair"]["sign"]
            << ", printed oscillatory form fundamental: " << s["oscillatory_pair"]["printed_form_is_fundamental"]
            << '\n';
  for (const auto& e : s["errata"])
    std::cout << "erratum: " << e["vector"].get<std::string>() << " entry " << e["entry"] << " printed "
              << e["printed"] << ", eigenvector needs " << e["corrected"] << '\n';
  std::cout << "max |analytic - expm| = " << s["comparison"]["max_abs_analytic_minus_expm"] << '\n'
            << "max |rk4 - expm| = " << s["comparison"]["max_abs_rk4_minus_expm"] << '\n';
  for (const auto& f : rep.failures) std::cerr << "FAIL: " << f << '\n';
  return rep.ok ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-discrete Maxwell equations on cubical lattices"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Integrate a scenario file with RK4");
  simulate->add_option("scenario", sim.scenario, "Scenario JSON")->required();
  simulate->add_option("--csv", sim.csv, "Trajectory CSV (overrides the scenario)");
  simulate->add_option("--diagnostics", sim.diagnostics, "Per-step diagnostics JSON");
  simulate->add_option("--emit-plot-data", sim.plot, "Long-format CSV for plotting");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Run the randomized identity suite");
  verify->add_option("--sizes", ver.options.sizes3d, "Cube edge lengths of the 3D lattices")->delimiter(',');
  verify->add_option("--sizes-2d", ver.options.sizes2d, "Square edge lengths of the 2D lattices")->delimiter(',');
  verify->add_option("--trials", ver.options.trials, "Trials per check")->check(CLI::PositiveNumber);
  verify->add_option("--seed", ver.options.seed, "Random seed");
  verify->add_flag("--timing", ver.options.timing, "Record elapsed time per check in the report");
  verify->add_option("--out", ver.out, "Write the JSON report here");

  TorusArgs tor;
  auto* torus = app.add_subcommand("torus", "Analyse the 2x2 combinatorial torus");
  torus->add_option("--t-end", tor.options.t_end, "Comparison horizon");
  torus->add_option("--dt", tor.options.dt, "RK4 step");
  torus->add_option("--sample", tor.options.sample_every, "Spacing of comparison samples");
  torus->add_option("--x0", tor.options.x0, "h1..h9, random:SEED or nine comma-separated numbers");
  torus->add_option("--out", tor.out, "Output directory");
  torus->add_option("--emit-plot-data", tor.plot, "Long-format CSV of the comparison");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*simulate) return cmd_simulate(sim);
    if (*verify) return cmd_verify(ver);
    if (*torus) return cmd_torus(tor);
  } catch (const semidec::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const semidec::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const semidec::DegreeError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const semidec::TopologyMismatch& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const semidec::TranscriptionFault& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
