#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "amoeba/fs_geometry.hpp"
#include "amoeba/homogeneous_poly.hpp"
#include "amoeba/rng.hpp"

namespace amoeba {

// Hermitian positive-definite matrix with cached spectral data.
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(const Eigen::MatrixXcd& m, double tol = 1e-12);

  int size() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  const Eigen::VectorXd& eigenvalues() const { return evals_; }

  double op_norm() const;       // largest |eigenvalue|
  double inf_norm() const;      // entrywise sup norm
  double min_eigenvalue() const { return evals_[0]; }
  double determinant() const;
  double inverse_op_norm() const { return 1.0 / evals_[0]; }

 private:
  Eigen::MatrixXcd mat_;
  Eigen::VectorXd evals_;  // ascending
};

// ||C^{-1}|| <= 1/(1-||C-I||) and ||C^{-1}-I|| <= ||C-I||/(1-||C-I||),
// valid when ||C-I|| < 1; otherwise hypothesis-violated.
struct InverseBounds {
  double inv_norm_bound;
  double inv_minus_id_bound;
};
InverseBounds inverse_bounds(const CovarianceMatrix& c);

// B(u,v) = N_d (1+<u,v>)^d (1+||u||^2)^{-d/2} (1+||v||^2)^{-d/2}, log-scaled.
Complex bergman_kernel(const Point2& u, const Point2& v, int d);

// Empirical covariance of the normalized point evaluations
// Z_i(P) = P(1, z_i) / (1+||z_i||^2)^{d/2} over Gaussian draws of P.
Eigen::MatrixXcd empirical_evaluation_covariance(const std::vector<Point2>& points, int d,
                                                 int n_samples, RngStream& rng);

// E exp(lambda ||Z||^2) = 1/det(I - lambda B), for 0 < lambda < 1/||B||.
double mgf_sq_norm(const CovarianceMatrix& b, double lambda);

// P(||P|| >= R) <= R^{2N}/N^N exp(-R^2+N) for a standard Gaussian vector, R > sqrt(N).
double tail_bound_large_ball(int n, double r);

// P(||Z||^2 >= N y) <= y^N/det(B) exp(N(1 - y/||B||)), y > ||B||.
double bernstein_tail_bound(const CovarianceMatrix& b, double y);

// Complement bound 5e (b (mu + (1-mu) e^{-1/2}))^N; vacuous when >= 1.
struct ProbabilityBound {
  double value;
  bool vacuous;
  double log_value;
};
ProbabilityBound cormain_bound(double b, double mu, int n);

// 1 - (1 - pX pY)^N for independent pairs.
double independent_case_probability(double p_x, double p_y, int n);

// Draw Z ~ N_C(0, B) through the Cholesky factor.
Eigen::VectorXcd sample_gaussian_vector(const Eigen::MatrixXcd& chol_lower, RngStream& rng);

// Sampling check of the two conditional-expectation bounds for the real
// variable S = ||Z||^2 and the event A = {S >= q}:
//   P(A) <= E[(S - x)^+] / (E_A(S) - x)        for x < E_A(S)
//   P(A) <= 4 V(S) / (E_A(S) - E(S))^2         when E(S) < E_A(S)
struct ConditionalBoundsReport {
  double p_event = 0.0;
  double conditional_mean = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  double integral_bound = 0.0;  // first inequality's right side at the chosen x
  double variance_bound = 0.0;
  bool integral_bound_holds = false;
  bool variance_bound_holds = false;
  bool inconclusive = false;
};
ConditionalBoundsReport check_conditional_bounds(const CovarianceMatrix& b, double event_threshold,
                                                 int n_samples, RngStream& rng);

// Sampling check of the coordinate-pattern bound
//   P(|X_i|^2 < x^2 V(X_i) iff i in I) <= (||C|| ||C^{-1}||)^N mu^{#I} (1-mu)^{N-#I},
// C the correlation matrix, mu = 1 - exp(-x^2/||C||).
struct PatternBoundReport {
  double empirical = 0.0;
  double empirical_stderr = 0.0;
  double bound = 0.0;
  bool holds_with_slack = false;
};
PatternBoundReport bergmanbound_check(const CovarianceMatrix& c, double x,
                                      const std::vector<int>& inside_set, int n_samples,
                                      RngStream& rng);

}  // namespace amoeba
