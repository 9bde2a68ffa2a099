#pragma once

// Signed-shift rule tables for the operators on K(2) and K(3).
//
// Every operator acts on basis cochains by sending a basis element to a
// signed basis element at a shifted index. The tables below are written out
// row by row so each sign and shift can be checked against the defining
// formulas; nothing here is generated.

#include <vector>

#include "semidec/lattice.hpp"

namespace semidec {

/// star(e_source at i) = sign * e_target at (i + offset).
template <int Dim>
struct StarRule {
  Signature source;
  Signature target;
  int sign;
  Offset<Dim> offset;
};

/// e_left at i  cup  e_right at (i + right_offset) = sign * e_result at i.
template <int Dim>
struct CupRule {
  Signature left;
  Signature right;
  Offset<Dim> right_offset;
  Signature result;
  int sign;
};

/// The complete rule set the calculus is evaluated against. Tests swap in
/// corrupted copies to check that the identity suite notices.
template <int Dim>
struct OperatorTables {
  std::vector<BoundaryRule<Dim>> boundary;
  std::vector<StarRule<Dim>> star;
  std::vector<StarRule<Dim>> star_inverse;
  std::vector<CupRule<Dim>> cup;
};

namespace detail {

inline OperatorTables<3> make_tables_3d() {
  const Signature x = Signature::point();
  const Signature e1 = sig({1}), e2 = sig({2}), e3 = sig({3});
  const Signature e12 = sig({1, 2}), e13 = sig({1, 3}), e23 = sig({2, 3});
  const Signature V = sig({1, 2, 3});

  OperatorTables<3> t;
  t.boundary = boundary_rules_3d();

  t.star = {
      {x, V, +1, {0, 0, 0}},
      {V, x, +1, {1, 1, 1}},
      {e1, e23, +1, {1, 0, 0}},
      {e2, e13, -1, {0, 1, 0}},
      {e3, e12, +1, {0, 0, 1}},
      {e12, e3, +1, {1, 1, 0}},
      {e13, e2, -1, {1, 0, 1}},
      {e23, e1, +1, {0, 1, 1}},
  };

  t.star_inverse = {
      {x, V, +1, {-1, -1, -1}},
      {V, x, +1, {0, 0, 0}},
      {e1, e23, +1, {0, -1, -1}},
      {e2, e13, -1, {-1, 0, -1}},
      {e3, e12, +1, {-1, -1, 0}},
      {e12, e3, +1, {0, 0, -1}},
      {e13, e2, -1, {0, -1, 0}},
      {e23, e1, +1, {-1, 0, 0}},
  };

  t.cup = {
      // x on the left: unit element, no shift.
      {x, x, {0, 0, 0}, x, +1},
      {x, e1, {0, 0, 0}, e1, +1},
      {x, e2, {0, 0, 0}, e2, +1},
      {x, e3, {0, 0, 0}, e3, +1},
      {x, e12, {0, 0, 0}, e12, +1},
      {x, e13, {0, 0, 0}, e13, +1},
      {x, e23, {0, 0, 0}, e23, +1},
      {x, V, {0, 0, 0}, V, +1},
      // x on the right sits at the far corner of the left cell.
      {V, x, {1, 1, 1}, V, +1},
      {e1, x, {1, 0, 0}, e1, +1},
      {e2, x, {0, 1, 0}, e2, +1},
      {e3, x, {0, 0, 1}, e3, +1},
      {e12, x, {1, 1, 0}, e12, +1},
      {e13, x, {1, 0, 1}, e13, +1},
      {e23, x, {0, 1, 1}, e23, +1},
      // 1 x 1
      {e1, e2, {1, 0, 0}, e12, +1},
      {e1, e3, {1, 0, 0}, e13, +1},
      {e2, e1, {0, 1, 0}, e12, -1},
      {e2, e3, {0, 1, 0}, e23, +1},
      {e3, e1, {0, 0, 1}, e13, -1},
      {e3, e2, {0, 0, 1}, e23, -1},
      // 1 x 2
      {e1, e23, {1, 0, 0}, V, +1},
      {e2, e13, {0, 1, 0}, V, -1},
      {e3, e12, {0, 0, 1}, V, +1},
      // 2 x 1
      {e12, e3, {1, 1, 0}, V, +1},
      {e13, e2, {1, 0, 1}, V, -1},
      {e23, e1, {0, 1, 1}, V, +1},
  };
  return t;
}

// K(2): the star is fixed by *E = (-E^2_{k,sigma s}, E^1_{sigma k,s}) and
// *H = H V; *V and the cup table mirror the 3D rows with axis 3 removed.
inline OperatorTables<2> make_tables_2d() {
  const Signature x = Signature::point();
  const Signature e1 = sig({1}), e2 = sig({2});
  const Signature V = sig({1, 2});

  OperatorTables<2> t;
  t.boundary = boundary_rules_2d();

  t.star = {
      {x, V, +1, {0, 0}},
      {V, x, +1, {1, 1}},
      {e1, e2, +1, {1, 0}},
      {e2, e1, -1, {0, 1}},
  };

  t.star_inverse = {
      {x, V, +1, {-1, -1}},
      {V, x, +1, {0, 0}},
      {e1, e2, -1, {0, -1}},
      {e2, e1, +1, {-1, 0}},
  };

  t.cup = {
      {x, x, {0, 0}, x, +1},
      {x, e1, {0, 0}, e1, +1},
      {x, e2, {0, 0}, e2, +1},
      {x, V, {0, 0}, V, +1},
      {V, x, {1, 1}, V, +1},
      {e1, x, {1, 0}, e1, +1},
      {e2, x, {0, 1}, e2, +1},
      {e1, e2, {1, 0}, V, +1},
      {e2, e1, {0, 1}, V, -1},
  };
  return t;
}

}  // namespace detail

template <int Dim>
const OperatorTables<Dim>& standard_tables() {
  if constexpr (Dim == 3) {
    static const OperatorTables<3> t = detail::make_tables_3d();
    return t;
  } else {
    static const OperatorTables<2> t = detail::make_tables_2d();
    return t;
  }
}

}  // namespace semidec
