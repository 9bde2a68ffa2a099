#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "semidec/verify.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(SEMIDEC_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string scenario(const std::string& name) { return std::string(SEMIDEC_SCENARIOS) + "/" + name; }

fs::path scratch(const std::string& tag) {
  static std::mt19937_64 g(std::random_device{}());
  const fs::path p = fs::temp_directory_path() / ("semidec_" + tag + "_" + std::to_string(g()));
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  }
};

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::stringstream hs(line);
  for (std::string h; std::getline(hs, h, ',');) t.header.push_back(h);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    for (std::string v; std::getline(ls, v, ',');) row.push_back(std::stod(v));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

TEST_CASE("simulate h3 on the torus keeps H at one and E at zero") {
  const Run r = cli("simulate " + scenario("torus_h3.json"));
  REQUIRE(r.code == 0);
  const Table t = parse_csv(r.out);
  REQUIRE(t.header.size() == 13);
  CHECK(t.header[0] == "t");
  CHECK(t.header[1] == "E1_11");
  CHECK(t.header[9] == "H_11");
  CHECK(t.rows.size() == 101);
  for (const auto& row : t.rows) {
    for (int c = 1; c <= 8; ++c) CHECK(std::abs(row[c]) <= 1e-12);
    for (int c = 9; c <= 12; ++c) CHECK(std::abs(row[c] - 1.0) <= 1e-12);
  }
}

TEST_CASE("simulate h4 decays like exp(-2t)") {
  const Run r = cli("simulate " + scenario("torus_h4.json"));
  REQUIRE(r.code == 0);
  const Table t = parse_csv(r.out);
  REQUIRE(t.rows.size() == 101);
  const auto& first = t.rows.front();
  int nonzero = 0;
  for (std::size_t c = 1; c < first.size(); ++c) {
    if (first[c] == 0.0) continue;
    ++nonzero;
    for (const auto& row : t.rows) CHECK(std::abs(row[c] - first[c] * std::exp(-2.0 * row[0])) <= 1e-8);
  }
  CHECK(nonzero > 0);
}

TEST_CASE("zero scenario stays zero") {
  const Run r = cli("simulate " + scenario("zero_3d.json"));
  REQUIRE(r.code == 0);
  const Table t = parse_csv(r.out);
  CHECK(t.header.size() == 1 + 6 * 27);
  CHECK(t.rows.size() == 11);
  for (const auto& row : t.rows)
    for (std::size_t c = 1; c < row.size(); ++c) CHECK(row[c] == 0.0);
}

TEST_CASE("simulate writes csv, diagnostics and plot data") {
  const fs::path dir = scratch("sim");
  const Run r = cli("simulate " + scenario("pulse_3d.json") + " --csv " + (dir / "traj.csv").string() +
                    " --diagnostics " + (dir / "diag.json").string() + " --emit-plot-data " +
                    (dir / "plot.csv").string());
  REQUIRE(r.code == 0);
  const Table traj = parse_csv(slurp(dir / "traj.csv"));
  CHECK(traj.rows.size() == 101);

  const auto diag = nlohmann::json::parse(slurp(dir / "diag.json"));
  REQUIRE(diag["steps"].size() == 101);
  for (const auto& s : diag["steps"]) {
    CHECK(s["gauss_electric"].get<double>() <= 1e-12);
    CHECK(s.contains("energy"));
    CHECK(s.contains("poynting"));
  }

  const std::string plot = slurp(dir / "plot.csv");
  CHECK(plot.rfind("t,component,value\n", 0) == 0);
  CHECK(std::count(plot.begin(), plot.end(), '\n') == 1 + 101 * 6 * 27);

  const fs::path again = scratch("sim2");
  REQUIRE(cli("simulate " + scenario("pulse_3d.json") + " --csv " + (again / "traj.csv").string()).code == 0);
  CHECK(slurp(again / "traj.csv") == slurp(dir / "traj.csv"));
  fs::remove_all(dir);
  fs::remove_all(again);
}

TEST_CASE("driven 2D scenario runs") {
  const fs::path dir = scratch("drive");
  REQUIRE(cli("simulate " + scenario("sinusoidal_2d.json") + " --csv " + (dir / "t.csv").string()).code == 0);
  const Table t = parse_csv(slurp(dir / "t.csv"));
  CHECK(t.rows.size() == 301);
  double peak = 0.0;
  for (const auto& row : t.rows)
    for (std::size_t c = 1; c < row.size(); ++c) peak = std::max(peak, std::abs(row[c]));
  CHECK(peak > 0.0);
  fs::remove_all(dir);
}

TEST_CASE("exit codes for bad input") {
  const fs::path dir = scratch("bad");
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream(dir / name) << body;
    return (dir / name).string();
  };

  CHECK(cli("").code == 2);
  CHECK(cli("bogus").code == 2);
  CHECK(cli("verify --no-such-flag").code == 2);
  CHECK(cli("simulate " + (dir / "missing.json").string()).code == 2);
  CHECK(cli("simulate " + write("broken.json", "{\"lattice\": ")).code == 2);

  CHECK(cli("simulate " + write("dt.json", R"({"lattice": {"extents": [2, 2]}, "run": {"t_end": 1, "dt": -0.1}})"))
            .code == 3);
  CHECK(cli("simulate " + write("ext.json", R"({"lattice": {"extents": [2, 0]}, "run": {"t_end": 1, "dt": 0.1}})"))
            .code == 3);
  CHECK(cli("simulate " + write("dims.json", R"({"lattice": {"extents": [2]}, "run": {"t_end": 1, "dt": 0.1}})"))
            .code == 3);
  CHECK(cli("simulate " + write("len.json", R"({"lattice": {"extents": [2, 2]},
      "initial": {"H": {"components": {"12": [1, 2, 3]}}}, "run": {"t_end": 1, "dt": 0.1}})"))
            .code == 3);
  CHECK(cli("simulate " + write("sig.json", R"({"lattice": {"extents": [2, 2]},
      "initial": {"E": {"components": {"12": [1, 2, 3, 4]}}}, "run": {"t_end": 1, "dt": 0.1}})"))
            .code == 3);
  CHECK(cli("simulate " + write("preset.json", R"({"lattice": {"extents": [2, 2]},
      "sources": {"preset": "lightning"}, "run": {"t_end": 1, "dt": 0.1}})"))
            .code == 3);
  CHECK(cli("verify --trials 0").code != 0);
  CHECK(cli("torus --out " + (dir / "t").string() + " --x0 h12").code == 2);
  CHECK(cli("torus --out " + (dir / "t").string() + " --x0 1,2,3").code == 3);
  CHECK(cli("torus --out " + (dir / "t").string() + " --x0 1,2,x").code == 2);
  CHECK(cli("torus --out " + (dir / "t").string() + " --dt 0").code == 3);
  fs::remove_all(dir);
}

TEST_CASE("verify is deterministic for a fixed seed") {
  const fs::path dir = scratch("verify");
  const std::string args = "verify --trials 20 --seed 7 --sizes 2,3 --sizes-2d 2,3 --out ";
  REQUIRE(cli(args + (dir / "a.json").string()).code == 0);
  REQUIRE(cli(args + (dir / "b.json").string()).code == 0);
  const std::string a = slurp(dir / "a.json");
  CHECK(a == slurp(dir / "b.json"));

  const auto j = nlohmann::json::parse(a);
  CHECK(j["seed"] == 7);
  CHECK(j["passed"] == true);
  CHECK(j["checks"].size() >= 10);
  CHECK_FALSE(j["checks"][0].contains("elapsed_ms"));

  REQUIRE(cli(args + (dir / "c.json").string() + " --timing").code == 0);
  CHECK(nlohmann::json::parse(slurp(dir / "c.json"))["checks"][0].contains("elapsed_ms"));
  fs::remove_all(dir);
}

TEST_CASE("default verify passes") { CHECK(cli("verify").code == 0); }

TEST_CASE("a corrupted star table is caught") {
  semidec::OperatorTables<3> bad = semidec::standard_tables<3>();
  bool flipped = false;
  for (auto& rule : bad.star)
    if (rule.source == semidec::Signature::axes({2})) {
      rule.sign = -rule.sign;
      flipped = true;
    }
  REQUIRE(flipped);
  semidec::verify::Options opt;
  opt.trials = 20;
  const auto report = semidec::verify::run(opt, bad);
  CHECK_FALSE(report.passed());
  const auto failed = report.failed();
  CHECK(std::find(failed.begin(), failed.end(), "star_star_commutes_with_d_3d") != failed.end());
  CHECK(std::find(failed.begin(), failed.end(), "star_inverse_roundtrip") != failed.end());
  CHECK(std::find(failed.begin(), failed.end(), "coboundary_squared_zero") == failed.end());
}

TEST_CASE("torus command writes its reports") {
  const fs::path dir = scratch("torus");
  const Run r = cli("torus --out " + dir.string() + " --emit-plot-data " + (dir / "plot.csv").string());
  CHECK(r.code == 0);
  CHECK(r.out.find("rank(M1) = 3") != std::string::npos);

  const auto m = nlohmann::json::parse(slurp(dir / "matrices.json"));
  CHECK(m["constraint"]["rank"] == 3);
  CHECK(m["M"].size() == 12);
  CHECK(m["M2"].size() == 9);

  const auto e = nlohmann::json::parse(slurp(dir / "eigen_report.json"));
  CHECK(e["charpoly"]["coefficients_high_to_low"] ==
        nlohmann::json::array({-1, 0, 0, 0, 48, 0, -128, 0, 0, 0}));
  CHECK(e["oscillatory_pair"]["printed_form_is_fundamental"] == false);
  REQUIRE(e["errata"].size() == 1);
  CHECK(e["errata"][0]["vector"] == "h5");

  const Table c = parse_csv(slurp(dir / "comparison.csv"));
  const int col = c.column("max_abs_analytic_minus_expm");
  REQUIRE(col > 0);
  REQUIRE_FALSE(c.rows.empty());
  for (const auto& row : c.rows) CHECK(row[col] <= 1e-8);

  const std::string plot = slurp(dir / "plot.csv");
  CHECK(plot.rfind("t,series,value\n", 0) == 0);
  CHECK(plot.find(",max_abs_rk4_minus_expm,") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("torus command with an explicit start vector") {
  const fs::path dir = scratch("torus_x0");
  CHECK(cli("torus --out " + dir.string() + " --x0 h3 --t-end 0.5").code == 0);
  CHECK(cli("torus --out " + dir.string() + " --x0 random:3 --t-end 0.5").code == 0);
  CHECK(cli("torus --out " + dir.string() + " --x0 1,0,0,0,0,0,0,0,1 --t-end 0.5").code == 0);
  const auto e = nlohmann::json::parse(slurp(dir / "eigen_report.json"));
  CHECK(e["comparison"]["t_end"] == 0.5);
  fs::remove_all(dir);
}
