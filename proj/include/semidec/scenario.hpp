#pragma once

// Scenario files and the simulate driver.
//
//   {
//     "lattice":   {"extents": [2, 2], "periodic": true},
//     "constants": {"eps0": 1, "mu0": 1},
//     "initial":   {"E": {...}, "H": {...}}  |  {"D": {...}, "B": {...}}
//                  |  {"torus_state": [9 numbers] or "h1" .. "h9"},
//     "sources":   {"preset": "zero"}
//                  |  {"preset": "sinusoidal", "omega": w, "phase": p,
//                      "amplitude": {...}, "charge": {...}},
//     "run":       {"t_end": 1, "dt": 0.01, "csv": "out.csv",
//                   "diagnostics": "diag.json", "plot_data": "plot.csv"}
//   }
//
// The dimension is the length of "extents". Form payloads only need
// "components". Output paths are resolved against the scenario directory.

#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "semidec/integrate.hpp"
#include "semidec/io.hpp"
#include "semidec/maxwell.hpp"
#include "semidec/torus.hpp"

namespace semidec {

struct RunSettings {
  double t_end = 1.0;
  double dt = 0.01;
  std::optional<std::string> csv;
  std::optional<std::string> diagnostics;
  std::optional<std::string> plot_data;
};

template <int Dim>
struct Scenario {
  Lattice<Dim> lattice;
  PhysicalConstants constants;
  FluxState<Dim> initial;
  SourceSpec<Dim> sources;
  RunSettings run;
};

using AnyScenario = std::variant<Scenario<2>, Scenario<3>>;

namespace detail {

template <int Dim>
FluxState<Dim> initial_from_json(const io::json& j, const Lattice<Dim>& L,
                                 const PhysicalConstants& k, const std::string& path) {
  using Deg = FieldDegrees<Dim>;
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  const bool intensities = j.contains("E") || j.contains("H");
  const bool fluxes = j.contains("D") || j.contains("B");
  const bool torus_state = j.contains("torus_state");
  if (intensities + fluxes + torus_state > 1)
    throw ValidationError(path + ": give exactly one of E/H, D/B or torus_state");

  auto read = [&](const char* name, int degree) {
    return j.contains(name) ? io::form_from_json<Dim>(j.at(name), L, degree, path + "/" + name)
                            : DiscreteForm<Dim>(L, degree);
  };
  if (fluxes) return {read("D", Deg::D), read("B", Deg::B)};
  if (torus_state) {
    if constexpr (Dim == 2) {
      if (!io::is_torus(L))
        throw ValidationError(path + "/torus_state: needs the periodic 2x2 lattice");
      const io::json& x = j.at("torus_state");
      torus::Vector9 v;
      if (x.is_string()) {
        const std::string name = x.get<std::string>();
        const int n = name.size() == 2 && name[0] == 'h' ? name[1] - '0' : 0;
        if (n < 1 || n > 9) throw ValidationError(path + "/torus_state: expected h1 .. h9");
        const auto es = torus::eigenstructure(torus::build_torus_system());
        v = es.basis[static_cast<std::size_t>(n - 1)];
      } else if (x.is_array() && x.size() == 9) {
        for (int i = 0; i < 9; ++i)
          v[i] = io::number(x[static_cast<std::size_t>(i)], path + "/torus_state/" + std::to_string(i));
      } else {
        throw ParseError(path + "/torus_state: expected 9 numbers or a name h1 .. h9");
      }
      const auto red = torus::constraint_reduce(torus::build_torus_system());
      auto [E, H] = torus::unpack_eh(red.apply(v));
      return flux_state(E, H, k);
    } else {
      throw ValidationError(path + "/torus_state: only defined in 2D");
    }
  }
  return flux_state(read("E", Deg::E), read("H", Deg::H), k);
}

template <int Dim>
SourceSpec<Dim> sources_from_json(const io::json& j, const Lattice<Dim>& L, const std::string& path) {
  const io::json& p = io::require(j, "preset", path);
  if (!p.is_string()) throw ParseError(path + "/preset: expected a string");
  const std::string preset = p.get<std::string>();
  if (preset == "zero") return SourceSpec<Dim>::zero(L);
  if (preset == "sinusoidal") {
    const double omega = io::number_or(j, "omega", 1.0, path);
    const double phase = io::number_or(j, "phase", 0.0, path);
    DiscreteForm<Dim> amp = j.contains("amplitude")
                                ? io::form_from_json<Dim>(j.at("amplitude"), L, FieldDegrees<Dim>::J,
                                                          path + "/amplitude")
                                : DiscreteForm<Dim>(L, FieldDegrees<Dim>::J);
    DiscreteForm<Dim> q = j.contains("charge")
                              ? io::form_from_json<Dim>(j.at("charge"), L, FieldDegrees<Dim>::Q,
                                                        path + "/charge")
                              : DiscreteForm<Dim>(L, FieldDegrees<Dim>::Q);
    return SourceSpec<Dim>::sinusoidal_current(amp, omega, phase, q);
  }
  throw ValidationError(path + "/preset: unknown preset '" + preset + "'");
}

inline RunSettings run_from_json(const io::json& j, const std::filesystem::path& base,
                                 const std::string& path) {
  RunSettings r;
  r.t_end = io::number_or(j, "t_end", r.t_end, path);
  r.dt = io::number_or(j, "dt", r.dt, path);
  if (!(r.dt > 0.0)) throw ValidationError(path + "/dt: must be positive");
  if (!(r.t_end >= 0.0)) throw ValidationError(path + "/t_end: must be non-negative");
  auto file = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key)) return std::nullopt;
    if (!j.at(key).is_string()) throw ParseError(path + "/" + key + ": expected a string");
    std::filesystem::path p = j.at(key).get<std::string>();
    return (p.is_absolute() ? p : base / p).string();
  };
  r.csv = file("csv");
  r.diagnostics = file("diagnostics");
  r.plot_data = file("plot_data");
  return r;
}

template <int Dim>
Scenario<Dim> scenario_from_json(const io::json& j, const std::filesystem::path& base) {
  Lattice<Dim> L = io::lattice_from_json<Dim>(j.at("lattice"), "/lattice");
  PhysicalConstants k;
  if (j.contains("constants")) {
    const io::json& c = j.at("constants");
    const double eps0 = io::number_or(c, "eps0", 1.0, "/constants");
    const double mu0 = io::number_or(c, "mu0", 1.0, "/constants");
    k = c.contains("c") ? PhysicalConstants(eps0, mu0, io::number(c.at("c"), "/constants/c"))
                        : PhysicalConstants(eps0, mu0);
  }
  FluxState<Dim> x0 = j.contains("initial")
                          ? initial_from_json<Dim>(j.at("initial"), L, k, "/initial")
                          : FluxState<Dim>{DiscreteForm<Dim>(L, FieldDegrees<Dim>::D),
                                           DiscreteForm<Dim>(L, FieldDegrees<Dim>::B)};
  SourceSpec<Dim> src = j.contains("sources") ? sources_from_json<Dim>(j.at("sources"), L, "/sources")
                                              : SourceSpec<Dim>::zero(L);
  RunSettings run = j.contains("run") ? run_from_json(j.at("run"), base, "/run") : RunSettings{};
  return {L, k, std::move(x0), std::move(src), std::move(run)};
}

}  // namespace detail

/// Parse a scenario document. `base` resolves relative output paths.
inline AnyScenario parse_scenario(const io::json& j, const std::filesystem::path& base = {}) {
  if (!j.is_object()) throw ParseError("/: expected an object");
  const std::size_t dim = io::extents_from_json(io::require(j, "lattice", ""), "/lattice").size();
  try {
    if (dim == 2) return detail::scenario_from_json<2>(j, base);
    if (dim == 3) return detail::scenario_from_json<3>(j, base);
  } catch (const io::json::exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  throw ValidationError("/lattice/extents: dimension must be 2 or 3");
}

inline AnyScenario load_scenario(const std::string& filename) {
  return parse_scenario(io::read_json_file(filename),
                        std::filesystem::path(filename).parent_path());
}

/// Per-snapshot diagnostics.
struct StepDiagnostics {
  double t;
  double gauss_electric;  ///< max |d D - Q|
  double gauss_magnetic;  ///< max |d B|
  double poynting;        ///< max |energy balance residual|
  double energy;          ///< (E, E) + (H, H)
};

template <int Dim>
StepDiagnostics diagnose(const FieldState<Dim>& s, const SourceSpec<Dim>& src,
                         const PhysicalConstants& k) {
  auto [ge, gm] = gauss_residual(s, src);
  const FieldState<Dim> rates = field_rates(s, src, k);
  const DiscreteForm<Dim> J = src.J ? src.J(s.t) : DiscreteForm<Dim>(s.E.lattice(), FieldDegrees<Dim>::J);
  const double poynting = poynting_residual(s, rates, J).max_abs();
  return {s.t, ge.max_abs(), gm.max_abs(), poynting, inner_product(s.E, s.E) + inner_product(s.H, s.H)};
}

template <int Dim>
struct SimulationResult {
  std::vector<FieldState<Dim>> states;
  std::vector<StepDiagnostics> diagnostics;
};

/// Integrate the scenario with RK4 and collect diagnostics at every step.
template <int Dim>
SimulationResult<Dim> simulate(const Scenario<Dim>& sc) {
  SimulationResult<Dim> out;
  auto rhs = [&](double t, const FluxState<Dim>& x) { return maxwell_rhs(x, t, sc.sources, sc.constants); };
  std::function<void(double, const FluxState<Dim>&)> hook = [&](double t, const FluxState<Dim>& x) {
    FieldState<Dim> s = field_state(x, t, sc.constants);
    out.diagnostics.push_back(diagnose(s, sc.sources, sc.constants));
    out.states.push_back(std::move(s));
  };
  integrate(rhs, sc.initial, sc.run.t_end, sc.run.dt, hook);
  return out;
}

inline io::json diagnostics_to_json(const std::vector<StepDiagnostics>& d) {
  io::json steps = io::json::array();
  for (const auto& s : d)
    steps.push_back({{"t", s.t},
                     {"gauss_electric", s.gauss_electric},
                     {"gauss_magnetic", s.gauss_magnetic},
                     {"poynting", s.poynting},
                     {"energy", s.energy}});
  return {{"steps", std::move(steps)}};
}

/// Write the CSV, diagnostics and plot files requested by the scenario.
template <int Dim>
void write_outputs(const Scenario<Dim>& sc, const SimulationResult<Dim>& r) {
  const auto cols = io::field_columns(sc.lattice);
  if (sc.run.csv) {
    std::ostringstream s;
    io::write_trajectory_csv(s, cols, r.states);
    io::write_text_file(*sc.run.csv, s.str());
  }
  if (sc.run.diagnostics) io::write_text_file(*sc.run.diagnostics, diagnostics_to_json(r.diagnostics).dump(2) + "\n");
  if (sc.run.plot_data) {
    std::ostringstream s;
    io::write_plot_csv(s, cols, r.states);
    io::write_text_file(*sc.run.plot_data, s.str());
  }
}

}  // namespace semidec
