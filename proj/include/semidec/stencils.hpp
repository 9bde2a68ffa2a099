#pragma once

// Closed-form component formulas for d, delta and the electric wave system,
// written directly in terms of forward differences and index shifts. They
// share no code with the rule tables and serve as a second evaluation path.

#include <cstddef>

#include "semidec/errors.hpp"
#include "semidec/form.hpp"
#include "semidec/maxwell.hpp"
#include "semidec/waves.hpp"

namespace semidec::stencil {

namespace detail {

template <int Dim>
struct Reader {
  const DiscreteForm<Dim>& f;
  CellIndex<Dim> i;

  /// Component with the given axes at i + o.
  double operator()(std::initializer_list<int> axes, Offset<Dim> o = {}) const {
    CellIndex<Dim> j = i;
    for (int a = 0; a < Dim; ++a) j[a] += o[a];
    const Signature s = axes.size() == 0 ? Signature::point() : Signature::axes(axes);
    return f.value_at(s, j);
  }
  /// Forward difference along axis a (1-based) of a component read at i + o.
  double diff(int a, std::initializer_list<int> axes, Offset<Dim> o = {}) const {
    Offset<Dim> p = o;
    p[a - 1] += 1;
    return (*this)(axes, p) - (*this)(axes, o);
  }
};

template <int Dim, class Fn>
DiscreteForm<Dim> build(const Lattice<Dim>& L, int degree, Fn&& fn) {
  DiscreteForm<Dim> out(L, degree);
  for (std::size_t pos = 0; pos < L.cell_count(); ++pos) fn(out, L.unravel(pos));
  return out;
}

}  // namespace detail

/// d written out with forward differences.
template <int Dim>
DiscreteForm<Dim> coboundary(const DiscreteForm<Dim>& f) {
  const Lattice<Dim>& L = f.lattice();
  const int r = f.degree();
  if (r == Dim) return DiscreteForm<Dim>(L, Dim);
  return detail::build<Dim>(L, r + 1, [&](DiscreteForm<Dim>& out, CellIndex<Dim> i) {
    detail::Reader<Dim> F{f, i};
    if constexpr (Dim == 3) {
      if (r == 0) {
        out(Signature::axes({1}), i) = F.diff(1, {});
        out(Signature::axes({2}), i) = F.diff(2, {});
        out(Signature::axes({3}), i) = F.diff(3, {});
      } else if (r == 1) {
        out(Signature::axes({1, 2}), i) = F.diff(1, {2}) - F.diff(2, {1});
        out(Signature::axes({1, 3}), i) = F.diff(1, {3}) - F.diff(3, {1});
        out(Signature::axes({2, 3}), i) = F.diff(2, {3}) - F.diff(3, {2});
      } else {
        out(Signature::axes({1, 2, 3}), i) =
            F.diff(1, {2, 3}) - F.diff(2, {1, 3}) + F.diff(3, {1, 2});
      }
    } else {
      if (r == 0) {
        out(Signature::axes({1}), i) = F.diff(1, {});
        out(Signature::axes({2}), i) = F.diff(2, {});
      } else {
        out(Signature::axes({1, 2}), i) = F.diff(1, {2}) - F.diff(2, {1});
      }
    }
  });
}

/// delta written out with backward-shifted forward differences.
template <int Dim>
DiscreteForm<Dim> codifferential(const DiscreteForm<Dim>& f) {
  const Lattice<Dim>& L = f.lattice();
  const int r = f.degree();
  if (r == 0) return DiscreteForm<Dim>(L, 0);
  return detail::build<Dim>(L, r - 1, [&](DiscreteForm<Dim>& out, CellIndex<Dim> i) {
    detail::Reader<Dim> F{f, i};
    if constexpr (Dim == 3) {
      constexpr Offset<3> sk{-1, 0, 0}, ss{0, -1, 0}, sm{0, 0, -1};
      if (r == 3) {
        out(Signature::axes({1, 3}), i) = F.diff(2, {1, 2, 3}, ss);
        out(Signature::axes({1, 2}), i) = -F.diff(3, {1, 2, 3}, sm);
        out(Signature::axes({2, 3}), i) = -F.diff(1, {1, 2, 3}, sk);
      } else if (r == 1) {
        out(Signature::point(), i) = -F.diff(1, {1}, sk) - F.diff(2, {2}, ss) - F.diff(3, {3}, sm);
      } else {
        out(Signature::axes({1}), i) = F.diff(2, {1, 2}, ss) + F.diff(3, {1, 3}, sm);
        out(Signature::axes({2}), i) = -(F.diff(1, {1, 2}, sk) - F.diff(3, {2, 3}, sm));
        out(Signature::axes({3}), i) = -(F.diff(1, {1, 3}, sk) + F.diff(2, {2, 3}, ss));
      }
    } else {
      constexpr Offset<2> sk{-1, 0}, ss{0, -1};
      if (r == 1) {
        out(Signature::point(), i) = -F.diff(1, {1}, sk) - F.diff(2, {2}, ss);
      } else {
        out(Signature::axes({1}), i) = F.diff(2, {1, 2}, ss);
        out(Signature::axes({2}), i) = -F.diff(1, {1, 2}, sk);
      }
    }
  });
}

/// Electric wave system in component form on K(3):
///   -sum_a (Delta_a)^2 E^i_{sigma_a} + s/c^2 (E^i_{sigma k, sigma s, sigma m})''
///   = -mu0 (star J')^i.
/// Returns left minus right side.
inline DiscreteForm<3> wave_system_residual_3d(const DiscreteForm<3>& E,
                                               const DiscreteForm<3>& E_tt,
                                               const DiscreteForm<3>& dJ,
                                               const PhysicalConstants& k) {
  const Lattice<3>& L = E.lattice();
  return detail::build<3>(L, 1, [&](DiscreteForm<3>& out, CellIndex<3> i) {
    detail::Reader<3> e{E, i}, ett{E_tt, i}, j{dJ, i};
    constexpr Offset<3> sss{-1, -1, -1};
    auto second = [&](int axis) {
      // (Delta_a)^2 E_{sigma a} = E_{tau a} - 2 E + E_{sigma a}
      Offset<3> up{}, down{};
      up[axis] = 1;
      down[axis] = -1;
      return [=](std::initializer_list<int> c) { return e(c, up) - 2.0 * e(c) + e(c, down); };
    };
    for (int c = 1; c <= 3; ++c) {
      double lap = 0.0;
      for (int a = 0; a < 3; ++a) lap -= second(a)({c});
      const double tt = k.inv_c2() * ett({c}, sss);
      double rhs = 0.0;
      if (c == 1) rhs = -k.mu0() * j({2, 3}, {0, -1, -1});
      if (c == 2) rhs = k.mu0() * j({1, 3}, {-1, 0, -1});
      if (c == 3) rhs = -k.mu0() * j({1, 2}, {-1, -1, 0});
      out(Signature::axes({c}), i) = lap + tt - rhs;
    }
  });
}

/// Electric wave system in component form on K(2):
///   4 E^i - (four neighbours) + t/c^2 (E^i_{sigma k, sigma s})'' = R^i,
///   R^1 = -mu0 J^2'_{k, sigma s},  R^2 = mu0 J^1'_{sigma k, s},
/// with t = -1 for the printed display and t = +1 for the system the flow
/// actually satisfies. Returns left minus right side.
inline DiscreteForm<2> wave_system_residual_2d(const DiscreteForm<2>& E,
                                               const DiscreteForm<2>& E_tt,
                                               const DiscreteForm<2>& dJ,
                                               const PhysicalConstants& k,
                                               WaveConvention convention) {
  const double t = convention == WaveConvention::printed ? -1.0 : 1.0;
  return detail::build<2>(E.lattice(), 1, [&](DiscreteForm<2>& out, CellIndex<2> i) {
    detail::Reader<2> e{E, i}, ett{E_tt, i}, j{dJ, i};
    for (int c = 1; c <= 2; ++c) {
      const double lap = 4.0 * e({c}) - e({c}, {-1, 0}) - e({c}, {0, -1}) - e({c}, {1, 0}) -
                         e({c}, {0, 1});
      const double tt = t * k.inv_c2() * ett({c}, {-1, -1});
      const double rhs = c == 1 ? -k.mu0() * j({2}, {0, -1}) : k.mu0() * j({1}, {-1, 0});
      out(Signature::axes({c}), i) = lap + tt - rhs;
    }
  });
}

}  // namespace semidec::stencil
