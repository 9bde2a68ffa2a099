#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "semidec/errors.hpp"
#include "semidec/lattice.hpp"

namespace semidec {

/// Degree-r cochain: one dense real array per signature of degree r.
///
/// Components are addressed by (signature, cell index); the value at
/// (e^{12}, (k,s,m)) is the coefficient B^{12}_{k,s,m} of e_{12}^{k,s,m}.
template <int Dim>
class DiscreteForm {
 public:
  DiscreteForm(const Lattice<Dim>& lattice, int degree) : lattice_(lattice), degree_(degree) {
    if (degree < 0 || degree > Dim) throw DegreeError("form degree out of range");
    for (Signature s : signatures_of_degree<Dim>(degree))
      components_[s.mask()].assign(lattice.cell_count(), 0.0);
  }

  static DiscreteForm constant(const Lattice<Dim>& lattice, int degree, double value) {
    DiscreteForm f(lattice, degree);
    for (auto& c : f.components_) std::fill(c.begin(), c.end(), value);
    return f;
  }

  const Lattice<Dim>& lattice() const { return lattice_; }
  int degree() const { return degree_; }
  std::vector<Signature> signatures() const { return signatures_of_degree<Dim>(degree_); }
  /// Number of scalar unknowns (components x cells).
  std::size_t size() const {
    return signatures_of_degree<Dim>(degree_).size() * lattice_.cell_count();
  }

  std::span<double> component(Signature s) { return slot(s); }
  std::span<const double> component(Signature s) const { return slot(s); }

  double& operator()(Signature s, const CellIndex<Dim>& i) { return slot(s)[lattice_.linear(i)]; }
  double operator()(Signature s, const CellIndex<Dim>& i) const {
    return slot(s)[lattice_.linear(i)];
  }

  /// Value at an arbitrary coordinate tuple; zero outside a truncated lattice.
  double value_at(Signature s, const CellIndex<Dim>& i) const {
    auto j = lattice_.canonical(i);
    return j ? (*this)(s, *j) : 0.0;
  }

  /// Components laid out signature-major (ascending), cells row-major.
  std::vector<double> flatten() const {
    std::vector<double> out;
    out.reserve(size());
    for (Signature s : signatures()) {
      auto c = component(s);
      out.insert(out.end(), c.begin(), c.end());
    }
    return out;
  }

  static DiscreteForm unflatten(const Lattice<Dim>& lattice, int degree,
                                std::span<const double> values) {
    DiscreteForm f(lattice, degree);
    if (values.size() != f.size()) throw ValidationError("flat form has wrong length");
    std::size_t pos = 0;
    for (Signature s : f.signatures()) {
      auto c = f.component(s);
      std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(pos), c.size(), c.begin());
      pos += c.size();
    }
    return f;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& c : components_)
      for (double v : c) m = std::max(m, std::abs(v));
    return m;
  }

  bool all_finite() const {
    for (const auto& c : components_)
      for (double v : c)
        if (!std::isfinite(v)) return false;
    return true;
  }

  bool is_zero() const { return max_abs() == 0.0; }

  DiscreteForm& operator+=(const DiscreteForm& o) {
    check_compatible(o);
    for (std::size_t m = 0; m < components_.size(); ++m)
      for (std::size_t i = 0; i < components_[m].size(); ++i) components_[m][i] += o.components_[m][i];
    return *this;
  }
  DiscreteForm& operator-=(const DiscreteForm& o) {
    check_compatible(o);
    for (std::size_t m = 0; m < components_.size(); ++m)
      for (std::size_t i = 0; i < components_[m].size(); ++i) components_[m][i] -= o.components_[m][i];
    return *this;
  }
  DiscreteForm& operator*=(double s) {
    for (auto& c : components_)
      for (double& v : c) v *= s;
    return *this;
  }

  friend DiscreteForm operator+(DiscreteForm a, const DiscreteForm& b) { return a += b; }
  friend DiscreteForm operator-(DiscreteForm a, const DiscreteForm& b) { return a -= b; }
  friend DiscreteForm operator-(DiscreteForm a) { return a *= -1.0; }
  friend DiscreteForm operator*(double s, DiscreteForm a) { return a *= s; }
  friend DiscreteForm operator*(DiscreteForm a, double s) { return a *= s; }
  friend DiscreteForm operator/(DiscreteForm a, double s) { return a *= 1.0 / s; }

  friend bool operator==(const DiscreteForm&, const DiscreteForm&) = default;

  void check_compatible(const DiscreteForm& o) const {
    if (!(lattice_ == o.lattice_)) throw TopologyMismatch("forms live on different lattices");
    if (degree_ != o.degree_) throw DegreeError("forms have different degrees");
  }

 private:
  std::span<double> slot(Signature s) {
    if (s.degree() != degree_ || s.mask() >= components_.size())
      throw DegreeError("signature e^" + s.label() + " is not a component of this form");
    return components_[s.mask()];
  }
  std::span<const double> slot(Signature s) const {
    if (s.degree() != degree_ || s.mask() >= components_.size())
      throw DegreeError("signature e^" + s.label() + " is not a component of this form");
    return components_[s.mask()];
  }

  Lattice<Dim> lattice_;
  int degree_;
  std::array<std::vector<double>, (1u << Dim)> components_;
};

/// max |a - b| over all components.
template <int Dim>
double max_abs_diff(const DiscreteForm<Dim>& a, const DiscreteForm<Dim>& b) {
  return (a - b).max_abs();
}

}  // namespace semidec
