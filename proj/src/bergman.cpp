#include "amoeba/bergman.hpp"

#include <cmath>
#include <stdexcept>

#include "amoeba/kostlan.hpp"
#include "amoeba/multi_index.hpp"

namespace amoeba {

CovarianceMatrix::CovarianceMatrix(const Eigen::MatrixXcd& m, double tol) : mat_(m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("CovarianceMatrix: must be square and non-empty");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * scale)
    throw std::invalid_argument("CovarianceMatrix: not Hermitian");
  mat_ = 0.5 * (m + m.adjoint());  // exact Hermitian symmetry
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mat_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("CovarianceMatrix: eigensolver failed");
  evals_ = es.eigenvalues();
  if (evals_[0] <= tol * scale)
    throw std::invalid_argument("CovarianceMatrix: not positive definite");
}

double CovarianceMatrix::op_norm() const {
  return std::max(std::abs(evals_[0]), std::abs(evals_[evals_.size() - 1]));
}

double CovarianceMatrix::inf_norm() const { return mat_.cwiseAbs().maxCoeff(); }

double CovarianceMatrix::determinant() const {
  double det = 1.0;
  for (int i = 0; i < evals_.size(); ++i) det *= evals_[i];
  return det;
}

InverseBounds inverse_bounds(const CovarianceMatrix& c) {
  const Eigen::MatrixXcd diff =
      c.matrix() - Eigen::MatrixXcd::Identity(c.size(), c.size());
  const double dev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(diff, Eigen::EigenvaluesOnly)
                         .eigenvalues()
                         .cwiseAbs()
                         .maxCoeff();
  if (dev >= 1.0) throw std::domain_error("inverse_bounds: requires ||C - I|| < 1");
  return {1.0 / (1.0 - dev), dev / (1.0 - dev)};
}

Complex bergman_kernel(const Point2& u, const Point2& v, int d) {
  const Complex ip = 1.0 + u[0] * std::conj(v[0]) + u[1] * std::conj(v[1]);
  const double nu = std::norm(u[0]) + std::norm(u[1]);
  const double nv = std::norm(v[0]) + std::norm(v[1]);
  // N_d (1+<u,v>)^d / ((1+||u||^2)(1+||v||^2))^{d/2} with the modulus in logs.
  const double ln_mag =
      d * std::log(std::abs(ip)) - 0.5 * d * (std::log1p(nu) + std::log1p(nv));
  const double phase = d * std::arg(ip);
  return static_cast<double>(poly_space_dim(d)) * std::polar(std::exp(ln_mag), phase);
}

Eigen::MatrixXcd empirical_evaluation_covariance(const std::vector<Point2>& points, int d,
                                                 int n_samples, RngStream& rng) {
  const int n = static_cast<int>(points.size());
  if (n == 0) throw std::invalid_argument("empirical_evaluation_covariance: no points");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (points[i] == points[j])
        throw std::invalid_argument("empirical_evaluation_covariance: points must be distinct");

  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  Eigen::VectorXcd z(n);
  for (int s = 0; s < n_samples; ++s) {
    const HomogeneousPoly p = sample_poly(d, rng);
    for (int i = 0; i < n; ++i) {
      const double nz = std::norm(points[i][0]) + std::norm(points[i][1]);
      z[i] = p.eval_affine(points[i][0], points[i][1]) * std::exp(-0.5 * d * std::log1p(nz));
    }
    acc += z * z.adjoint();
  }
  return acc / static_cast<double>(n_samples);
}

double mgf_sq_norm(const CovarianceMatrix& b, double lambda) {
  if (!(lambda > 0.0) || !(lambda < 1.0 / b.op_norm()))
    throw std::domain_error("mgf_sq_norm: requires 0 < lambda < 1/||B||");
  double log_det = 0.0;
  for (int i = 0; i < b.size(); ++i) log_det += std::log1p(-lambda * b.eigenvalues()[i]);
  return std::exp(-log_det);
}

double tail_bound_large_ball(int n, double r) {
  if (n < 1) throw std::invalid_argument("tail_bound_large_ball: N >= 1");
  if (!(r > std::sqrt(static_cast<double>(n))))
    throw std::domain_error("tail_bound_large_ball: requires R > sqrt(N)");
  return std::exp(2.0 * n * std::log(r) - n * std::log(static_cast<double>(n)) - r * r + n);
}

double bernstein_tail_bound(const CovarianceMatrix& b, double y) {
  const double norm = b.op_norm();
  if (!(y > norm)) throw std::domain_error("bernstein_tail_bound: requires y > ||B||");
  const int n = b.size();
  double log_det = 0.0;
  for (int i = 0; i < n; ++i) log_det += std::log(b.eigenvalues()[i]);
  return std::exp(n * std::log(y) - log_det + n * (1.0 - y / norm));
}

ProbabilityBound cormain_bound(double b, double mu, int n) {
  if (!(b >= 1.0) || mu < 0.0 || mu > 1.0 || n < 1)
    throw std::invalid_argument("cormain_bound: need b >= 1, mu in [0,1], N >= 1");
  const double base = b * (mu + (1.0 - mu) * std::exp(-0.5));
  const double log_value = std::log(5.0) + 1.0 + n * std::log(base);
  const double value = std::exp(log_value);
  return {value, !(value < 1.0), log_value};
}

double independent_case_probability(double p_x, double p_y, int n) {
  if (p_x < 0.0 || p_x > 1.0 || p_y < 0.0 || p_y > 1.0 || n < 1)
    throw std::invalid_argument("independent_case_probability: arguments out of range");
  return 1.0 - std::pow(1.0 - p_x * p_y, n);
}

Eigen::VectorXcd sample_gaussian_vector(const Eigen::MatrixXcd& chol_lower, RngStream& rng) {
  const int n = static_cast<int>(chol_lower.rows());
  Eigen::VectorXcd g(n);
  for (int i = 0; i < n; ++i) g[i] = rng.next_complex_gaussian();
  return chol_lower * g;
}

ConditionalBoundsReport check_conditional_bounds(const CovarianceMatrix& b, double event_threshold,
                                                 int n_samples, RngStream& rng) {
  if (n_samples < 100) throw std::invalid_argument("check_conditional_bounds: too few samples");
  const Eigen::MatrixXcd chol = Eigen::LLT<Eigen::MatrixXcd>(b.matrix()).matrixL();

  std::vector<double> s(n_samples);
  for (int i = 0; i < n_samples; ++i) s[i] = sample_gaussian_vector(chol, rng).squaredNorm();

  ConditionalBoundsReport rep;
  double sum = 0.0, sum_sq = 0.0, sum_a = 0.0;
  int n_a = 0;
  for (double v : s) {
    sum += v;
    sum_sq += v * v;
    if (v >= event_threshold) {
      sum_a += v;
      ++n_a;
    }
  }
  rep.mean = sum / n_samples;
  rep.variance = sum_sq / n_samples - rep.mean * rep.mean;
  rep.p_event = static_cast<double>(n_a) / n_samples;
  // A threshold at or below the mean leaves no room between E and E_A.
  if (event_threshold <= rep.mean || n_a < 10 || n_a > n_samples - 10) {
    rep.inconclusive = true;
    return rep;
  }
  rep.conditional_mean = sum_a / n_a;
  if (!(rep.conditional_mean > rep.mean)) {
    rep.inconclusive = true;
    return rep;
  }

  // x halfway between the mean and the conditional mean satisfies x < E_A(S).
  const double x = 0.5 * (rep.mean + rep.conditional_mean);
  double tail_integral = 0.0;
  for (double v : s) tail_integral += std::max(v - x, 0.0);
  tail_integral /= n_samples;
  rep.integral_bound = tail_integral / (rep.conditional_mean - x);
  rep.variance_bound = 4.0 * rep.variance / ((rep.conditional_mean - rep.mean) *
                                             (rep.conditional_mean - rep.mean));

  const double slack = 3.0 * std::sqrt(rep.p_event * (1.0 - rep.p_event) / n_samples);
  rep.integral_bound_holds = rep.p_event <= rep.integral_bound + slack;
  rep.variance_bound_holds = rep.p_event <= rep.variance_bound + slack;
  return rep;
}

PatternBoundReport bergmanbound_check(const CovarianceMatrix& c, double x,
                                      const std::vector<int>& inside_set, int n_samples,
                                      RngStream& rng) {
  const int n = c.size();
  for (int i = 0; i < n; ++i)
    if (std::abs(c.matrix()(i, i).real() - 1.0) > 1e-9)
      throw std::invalid_argument("bergmanbound_check: C must have unit diagonal");
  std::vector<bool> inside(n, false);
  for (int i : inside_set) {
    if (i < 0 || i >= n) throw std::invalid_argument("bergmanbound_check: index out of range");
    inside[i] = true;
  }

  const Eigen::MatrixXcd chol = Eigen::LLT<Eigen::MatrixXcd>(c.matrix()).matrixL();
  int hits = 0;
  for (int s = 0; s < n_samples; ++s) {
    const Eigen::VectorXcd z = sample_gaussian_vector(chol, rng);
    bool match = true;
    for (int i = 0; i < n && match; ++i) match = (std::norm(z[i]) < x * x) == inside[i];
    if (match) ++hits;
  }

  PatternBoundReport rep;
  rep.empirical = static_cast<double>(hits) / n_samples;
  rep.empirical_stderr = std::sqrt(rep.empirical * (1.0 - rep.empirical) / n_samples);
  const double mu = -std::expm1(-x * x / c.op_norm());
  const int k = static_cast<int>(inside_set.size());
  const double cond = c.op_norm() * c.inverse_op_norm();
  rep.bound = std::exp(n * std::log(cond) + k * std::log(std::max(mu, 1e-300)) +
                       (n - k) * std::log(std::max(1.0 - mu, 1e-300)));
  if (mu == 0.0 && k > 0) rep.bound = 0.0;
  rep.holds_with_slack = rep.empirical <= rep.bound + 3.0 * rep.empirical_stderr;
  return rep;
}

}  // namespace amoeba
