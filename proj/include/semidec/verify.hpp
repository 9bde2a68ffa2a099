#pragma once

// Randomized identity checks over the operator calculus, runnable against
// any operator tables so a corrupted table can be shown to be caught.
//
// Exact checks draw integer-valued forms, for which every operator is exact
// in floating point, and require a residual of exactly zero.

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "semidec/calculus.hpp"
#include "semidec/maxwell.hpp"
#include "semidec/stencils.hpp"
#include "semidec/waves.hpp"

namespace semidec::verify {

struct Options {
  std::vector<int> sizes3d = {2, 3, 4};
  std::vector<int> sizes2d = {2, 3, 4, 5, 6};
  int trials = 1000;
  std::uint64_t seed = 20240917;
  bool timing = false;
};

struct CheckResult {
  std::string name;
  std::vector<std::string> lattices;
  int trials = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  double elapsed_ms = 0.0;
};

struct Report {
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<CheckResult> checks;
  bool timing = false;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  std::vector<std::string> failed() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.passed) out.push_back(c.name);
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json checks_json = nlohmann::json::array();
    for (const auto& c : checks) {
      nlohmann::json j = {{"name", c.name},         {"lattices", c.lattices},
                          {"trials", c.trials},     {"max_residual", c.max_residual},
                          {"tolerance", c.tolerance}, {"passed", c.passed}};
      if (timing) j["elapsed_ms"] = c.elapsed_ms;
      checks_json.push_back(std::move(j));
    }
    return {{"seed", seed}, {"trials", trials}, {"passed", passed()}, {"checks", std::move(checks_json)}};
  }
};

/// Random forms with a fixed engine, so runs are reproducible from the seed.
class FormSampler {
 public:
  explicit FormSampler(std::uint64_t seed) : rng_(seed) {}

  template <int Dim>
  DiscreteForm<Dim> integer_form(const Lattice<Dim>& L, int degree, int bound = 9) {
    std::uniform_int_distribution<int> u(-bound, bound);
    DiscreteForm<Dim> f(L, degree);
    for (Signature s : f.signatures())
      for (double& v : f.component(s)) v = u(rng_);
    return f;
  }

  template <int Dim>
  DiscreteForm<Dim> real_form(const Lattice<Dim>& L, int degree) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DiscreteForm<Dim> f(L, degree);
    for (Signature s : f.signatures())
      for (double& v : f.component(s)) v = u(rng_);
    return f;
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

namespace detail {

template <int Dim>
std::string describe(const Lattice<Dim>& L) {
  std::string s;
  for (int a = 0; a < Dim; ++a) s += (a ? "x" : "") + std::to_string(L.extents()[a]);
  return s;
}

template <int Dim>
std::vector<Lattice<Dim>> lattices(const std::vector<int>& sizes) {
  std::vector<Lattice<Dim>> out;
  for (int n : sizes) {
    std::array<int, Dim> e{};
    e.fill(n);
    out.emplace_back(e);
  }
  return out;
}

/// Run `trial(lattice, sampler)` once per trial, cycling through the
/// lattices, and keep the largest residual.
template <int Dim, class Trial>
void accumulate(CheckResult& r, const std::vector<Lattice<Dim>>& Ls, int trials, FormSampler& g,
                Trial&& trial) {
  for (const auto& L : Ls) r.lattices.push_back(describe(L));
  for (int t = 0; t < trials; ++t) {
    const Lattice<Dim>& L = Ls[static_cast<std::size_t>(t) % Ls.size()];
    r.max_residual = std::max(r.max_residual, trial(L, g));
  }
}

}  // namespace detail

/// Run every check. Each check draws from its own engine seeded from the
/// master seed, so checks stay reproducible independently of one another.
inline Report run(const Options& opt, const OperatorTables<3>& t3 = standard_tables<3>(),
                  const OperatorTables<2>& t2 = standard_tables<2>()) {
  if (opt.trials < 1) throw ValidationError("trials must be at least 1");
  if (opt.sizes3d.empty() || opt.sizes2d.empty()) throw ValidationError("lattice size lists must not be empty");
  const auto L3 = detail::lattices<3>(opt.sizes3d);
  const auto L2 = detail::lattices<2>(opt.sizes2d);
  Report report;
  report.seed = opt.seed;
  report.trials = opt.trials;
  report.timing = opt.timing;
  std::uint64_t stream = 0;

  auto check = [&](const std::string& name, double tol, auto&& body) {
    CheckResult r;
    r.name = name;
    r.trials = opt.trials;
    r.tolerance = tol;
    FormSampler g(opt.seed + 0x9E3779B97F4A7C15ULL * ++stream);
    const auto start = std::chrono::steady_clock::now();
    body(r, g);
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.passed = r.max_residual <= tol;
    report.checks.push_back(std::move(r));
  };

  // Both dimensions in one check, half of the trials each.
  auto both = [&](CheckResult& r, FormSampler& g, auto&& trial3, auto&& trial2) {
    const int n3 = (opt.trials + 1) / 2;
    detail::accumulate<3>(r, L3, n3, g, trial3);
    detail::accumulate<2>(r, L2, opt.trials - n3, g, trial2);
  };

  check("coboundary_squared_zero", 0.0, [&](CheckResult& r, FormSampler& g) {
    auto trial = [&]<int Dim>(const Lattice<Dim>& L, FormSampler& s, const OperatorTables<Dim>& t) {
      auto f = s.integer_form(L, s.uniform(0, Dim));
      return coboundary(coboundary(f, t), t).max_abs();
    };
    both(r, g, [&](const Lattice<3>& L, FormSampler& s) { return trial(L, s, t3); },
         [&](const Lattice<2>& L, FormSampler& s) { return trial(L, s, t2); });
  });

  check("leibniz_rule", 0.0, [&](CheckResult& r, FormSampler& g) {
    auto trial = [&]<int Dim>(const Lattice<Dim>& L, FormSampler& s, const OperatorTables<Dim>& t) {
      const int p = s.uniform(0, Dim - 1);
      const int q = s.uniform(0, Dim - 1 - p);
      auto a = s.integer_form(L, p);
      auto b = s.integer_form(L, q);
      auto lhs = coboundary(cup(a, b, t), t);
      auto rhs = cup(coboundary(a, t), b, t) + ((p % 2 == 0) ? 1.0 : -1.0) * cup(a, coboundary(b, t), t);
      return max_abs_diff(lhs, rhs);
    };
    both(r, g, [&](const Lattice<3>& L, FormSampler& s) { return trial(L, s, t3); },
         [&](const Lattice<2>& L, FormSampler& s) { return trial(L, s, t2); });
  });

  check("star_star_commutes_with_d_3d", 0.0, [&](CheckResult& r, FormSampler& g) {
    detail::accumulate<3>(r, L3, opt.trials, g, [&](const Lattice<3>& L, FormSampler& s) {
      auto f = s.integer_form(L, s.uniform(0, 3));
      return max_abs_diff(coboundary(star(star(f, t3), t3), t3), star(star(coboundary(f, t3), t3), t3));
    });
  });

  check("star_star_anticommutes_with_d_2d", 0.0, [&](CheckResult& r, FormSampler& g) {
    detail::accumulate<2>(r, L2, opt.trials, g, [&](const Lattice<2>& L, FormSampler& s) {
      auto f = s.integer_form(L, s.uniform(0, 2));
      return max_abs_diff(coboundary(star(star(f, t2), t2), t2), -star(star(coboundary(f, t2), t2), t2));
    });
  });

  check("star_inverse_roundtrip", 0.0, [&](CheckResult& r, FormSampler& g) {
    auto trial = [&]<int Dim>(const Lattice<Dim>& L, FormSampler& s, const OperatorTables<Dim>& t) {
      auto f = s.integer_form(L, s.uniform(0, Dim));
      return std::max(max_abs_diff(star_inverse(star(f, t), t), f),
                      max_abs_diff(star(star_inverse(f, t), t), f));
    };
    both(r, g, [&](const Lattice<3>& L, FormSampler& s) { return trial(L, s, t3); },
         [&](const Lattice<2>& L, FormSampler& s) { return trial(L, s, t2); });
  });

  check("codifferential_adjoint", 1e-12, [&](CheckResult& r, FormSampler& g) {
    auto trial = [&]<int Dim>(const Lattice<Dim>& L, FormSampler& s, const OperatorTables<Dim>& t) {
      const int p = s.uniform(0, Dim - 1);
      auto phi = s.real_form(L, p);
      auto omega = s.real_form(L, p + 1);
      const auto V = InnerProductDomain<Dim>::full(L);
      return std::abs(inner_product(coboundary(phi, t), omega, V, t) -
                      inner_product(phi, codifferential(omega, t), V, t));
    };
    both(r, g, [&](const Lattice<3>& L, FormSampler& s) { return trial(L, s, t3); },
         [&](const Lattice<2>& L, FormSampler& s) { return trial(L, s, t2); });
  });

  check("codifferential_explicit", 0.0, [&](CheckResult& r, FormSampler& g) {
    auto trial = [&]<int Dim>(const Lattice<Dim>& L, FormSampler& s, const OperatorTables<Dim>& t) {
      auto f = s.integer_form(L, s.uniform(1, Dim));
      return max_abs_diff(codifferential(f, t), stencil::codifferential(f));
    };
    both(r, g, [&](const Lattice<3>& L, FormSampler& s) { return trial(L, s, t3); },
         [&](const Lattice<2>& L, FormSampler& s) { return trial(L, s, t2); });
  });

  check("coboundary_explicit", 0.0, [&](CheckResult& r, FormSampler& g) {
    auto trial = [&]<int Dim>(const Lattice<Dim>& L, FormSampler& s, const OperatorTables<Dim>& t) {
      auto f = s.integer_form(L, s.uniform(0, Dim - 1));
      return max_abs_diff(coboundary(f, t), stencil::coboundary(f));
    };
    both(r, g, [&](const Lattice<3>& L, FormSampler& s) { return trial(L, s, t3); },
         [&](const Lattice<2>& L, FormSampler& s) { return trial(L, s, t2); });
  });

  check("gauge_invariance", 1e-12, [&](CheckResult& r, FormSampler& g) {
    auto trial = [&]<int Dim>(const Lattice<Dim>& L, FormSampler& s) {
      Potentials<Dim> p{s.real_form(L, 1), s.real_form(L, 1), s.real_form(L, 1),
                        s.real_form(L, 0), s.real_form(L, 0), s.real_form(L, 0)};
      GaugeFunction<Dim> psi{s.real_form(L, 0), s.real_form(L, 0), s.real_form(L, 0), s.real_form(L, 0)};
      auto [E0, B0] = potentials_to_fields(p);
      auto [E1, B1] = potentials_to_fields(gauge_transform(p, psi));
      return std::max(max_abs_diff(E0, E1), max_abs_diff(B0, B1));
    };
    both(r, g, [&](const Lattice<3>& L, FormSampler& s) { return trial(L, s); },
         [&](const Lattice<2>& L, FormSampler& s) { return trial(L, s); });
  });

  check("constitutive_roundtrip", 0.0, [&](CheckResult& r, FormSampler& g) {
    auto trial = [&]<int Dim>(const Lattice<Dim>& L, FormSampler& s) {
      const PhysicalConstants k(2.0, 0.5);
      auto E = s.integer_form(L, FieldDegrees<Dim>::E);
      auto H = s.integer_form(L, FieldDegrees<Dim>::H);
      auto [D, B] = constitutive_primal(E, H, k);
      auto [E2, H2] = constitutive_dual(D, B, k);
      return std::max(max_abs_diff(E, E2), max_abs_diff(H, H2));
    };
    both(r, g, [&](const Lattice<3>& L, FormSampler& s) { return trial(L, s); },
         [&](const Lattice<2>& L, FormSampler& s) { return trial(L, s); });
  });

  check("poynting_cup_matches_components", 0.0, [&](CheckResult& r, FormSampler& g) {
    auto trial = [&]<int Dim>(const Lattice<Dim>& L, FormSampler& s) {
      using Deg = FieldDegrees<Dim>;
      auto state = [&] {
        return FieldState<Dim>{0.0, s.integer_form(L, Deg::E), s.integer_form(L, Deg::H),
                               s.integer_form(L, Deg::D), s.integer_form(L, Deg::B)};
      };
      const FieldState<Dim> x = state();
      const FieldState<Dim> rates = state();
      const auto J = s.integer_form(L, Deg::J);
      return max_abs_diff(poynting_residual(x, rates, J), poynting_residual_componentwise(x, rates, J));
    };
    both(r, g, [&](const Lattice<3>& L, FormSampler& s) { return trial(L, s); },
         [&](const Lattice<2>& L, FormSampler& s) { return trial(L, s); });
  });

  return report;
}

/// One line per check, then an overall line.
inline std::string summary(const Report& r) {
  std::string out;
  char buf[160];
  for (const auto& c : r.checks) {
    std::snprintf(buf, sizeof buf, "%-34s %s  max residual %.3e  (tol %.1e, %d trials)\n",
                  c.name.c_str(), c.passed ? "PASS" : "FAIL", c.max_residual, c.tolerance, c.trials);
    out += buf;
  }
  out += r.passed() ? "all checks passed\n" : "FAILED:";
  if (!r.passed())
    for (const auto& n : r.failed()) out += " " + n;
  if (!r.passed()) out += "\n";
  return out;
}

}  // namespace semidec::verify
