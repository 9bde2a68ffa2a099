#pragma once

// Debug path: the dense matrix of a linear form operator on a finite
// lattice, assembled column by column from unit forms. Used as an oracle
// against the rule-table evaluation, never by the operators themselves.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "semidec/form.hpp"

namespace semidec {

template <int Dim, class Op>
Eigen::MatrixXd assemble_matrix(Op&& op, const Lattice<Dim>& lattice, int in_degree) {
  const DiscreteForm<Dim> probe(lattice, in_degree);
  const std::size_t n = probe.size();
  std::vector<double> unit(n, 0.0);
  Eigen::MatrixXd m;
  for (std::size_t j = 0; j < n; ++j) {
    unit[j] = 1.0;
    const DiscreteForm<Dim> col = op(DiscreteForm<Dim>::unflatten(lattice, in_degree, unit));
    unit[j] = 0.0;
    const std::vector<double> v = col.flatten();
    if (j == 0) m.setZero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < v.size(); ++i)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[i];
  }
  return m;
}

}  // namespace semidec
