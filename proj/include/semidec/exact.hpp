#pragma once

// Exact rational and integer linear algebra for small dense matrices.

#include <cstddef>
#include <cstdlib>
#include <vector>

#include <boost/rational.hpp>

#include "semidec/errors.hpp"

namespace semidec::exact {

using Rational = boost::rational<long long>;
using Matrix = std::vector<std::vector<Rational>>;
/// Integer polynomial, coefficients from the highest power down.
using Polynomial = std::vector<long long>;

/// Zero test that avoids boost's mixed integer comparison, which recurses
/// under C++20 rewritten operators.
inline bool is_zero(const Rational& r) { return r.numerator() == 0; }

inline Matrix to_rational(const std::vector<std::vector<long long>>& a) {
  Matrix m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (long long v : a[i]) m[i].emplace_back(v);
  return m;
}

struct Echelon {
  Matrix reduced;              ///< reduced row echelon form, leading entries 1
  std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination in exact arithmetic.
inline Echelon row_reduce(Matrix a) {
  Echelon out;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(a[p][c])) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Rational lead = a[r][c];
    for (auto& v : a[r]) v /= lead;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(a[i][c])) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(a);
  return out;
}

/// True when b equals a up to a nonzero scale of each row (zero rows match
/// zero rows).
inline bool equal_up_to_row_scaling(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    Rational scale = 0;
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      if (is_zero(a[i][j]) != is_zero(b[i][j])) return false;
      if (is_zero(a[i][j])) continue;
      const Rational s = b[i][j] / a[i][j];
      if (is_zero(scale))
        scale = s;
      else if (s != scale)
        return false;
    }
  }
  return true;
}

/// det(lambda I - A) for an integer matrix by the Faddeev-LeVerrier
/// recursion. Every division is exact for integer input; a remainder
/// signals overflow and throws.
inline Polynomial charpoly_monic(const std::vector<std::vector<long long>>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
  Polynomial c(n + 1, 0);
  c[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    // m <- A m + c_{k-1} I
    std::vector<std::vector<long long>> next(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        long long s = 0;
        for (std::size_t l = 0; l < n; ++l) s += a[i][l] * m[l][j];
        next[i][j] = s + (i == j ? c[k - 1] : 0);
      }
    m = std::move(next);
    long long trace = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) trace += a[i][l] * m[l][i];
    if (trace % static_cast<long long>(k) != 0)
      throw NumericalError("Faddeev-LeVerrier division was not exact");
    c[k] = -trace / static_cast<long long>(k);
  }
  return c;
}

/// det(A - lambda I) = (-1)^n det(lambda I - A).
inline Polynomial charpoly(const std::vector<std::vector<long long>>& a) {
  Polynomial c = charpoly_monic(a);
  if (a.size() % 2 == 1)
    for (auto& v : c) v = -v;
  return c;
}

inline Polynomial multiply(const Polynomial& p, const Polynomial& q) {
  Polynomial r(p.size() + q.size() - 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

inline Polynomial power(const Polynomial& p, int e) {
  Polynomial r{1};
  for (int i = 0; i < e; ++i) r = multiply(r, p);
  return r;
}

inline Polynomial derivative(const Polynomial& p) {
  if (p.size() <= 1) return {0};
  Polynomial d;
  const std::size_t deg = p.size() - 1;
  for (std::size_t i = 0; i < deg; ++i) d.push_back(p[i] * static_cast<long long>(deg - i));
  return d;
}

inline long long evaluate(const Polynomial& p, long long x) {
  long long v = 0;
  for (long long c : p) v = v * x + c;
  return v;
}

/// Remainder of p divided by a monic q.
inline Polynomial remainder(Polynomial p, const Polynomial& monic) {
  const std::size_t dq = monic.size() - 1;
  while (p.size() > dq && !p.empty()) {
    const long long lead = p.front();
    for (std::size_t i = 0; i < monic.size(); ++i) p[i] -= lead * monic[i];
    p.erase(p.begin());
  }
  return p;
}

/// Multiplicity of an integer root.
inline int root_multiplicity(Polynomial p, long long root) {
  int m = 0;
  while (p.size() > 1 && evaluate(p, root) == 0) {
    ++m;
    p = derivative(p);
  }
  return m;
}

}  // namespace semidec::exact
