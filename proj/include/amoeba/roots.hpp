#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace amoeba {

struct RootSet {
  std::vector<std::complex<double>> roots;  // finite roots after trimming
  int degree_drop = 0;                      // vanished leading coefficients (roots at infinity)
};

// All complex roots of sum_k a[k] z^k (ascending coefficients). Leading
// coefficients below rel_trim * max|a| count as a degree drop. Companion
// eigenvalues up to degree 8, Aberth-Ehrlich above, Newton polish either way.
RootSet poly_roots(const Eigen::VectorXcd& ascending, double rel_trim = 1e-13);

// Aberth-Ehrlich exposed for cross-checking against the companion route.
std::vector<std::complex<double>> aberth_roots(const Eigen::VectorXcd& monic_ascending);
std::vector<std::complex<double>> companion_roots(const Eigen::VectorXcd& monic_ascending);

}  // namespace amoeba
