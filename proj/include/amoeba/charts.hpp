#pragma once

#include <Eigen/Dense>
#include <vector>

#include "amoeba/estimator.hpp"
#include "amoeba/fs_geometry.hpp"
#include "amoeba/homogeneous_poly.hpp"
#include "amoeba/rng.hpp"

namespace amoeba {

// Ball radius used by all chart estimates.
inline double chart_ball_radius(int d) { return std::atan(2.0 / std::sqrt(static_cast<double>(d))); }

// Bidisc D(0, 1/sqrt(6d)) x D(0, kappa/sqrt(6d)) moved by an isometry of CP^2.
struct MarkedChart {
  int d = 1;
  double kappa = 1.0;
  Eigen::Matrix3cd isometry = Eigen::Matrix3cd::Identity();
  int chart_flag = 0;      // affine chart carrying the center
  Point2 center_affine{};  // coordinates in that chart

  static MarkedChart make(int d, double kappa, const Eigen::Matrix3cd& isometry);
};

// Unitary sending [1:0:0] to the given affine point of the standard chart.
Eigen::Matrix3cd unitary_from_affine_point(const Point2& z);

// P_d = sqrt(d N_d) Y Z^{d-1}; unit Fubini-Study norm.
HomogeneousPoly reference_poly(int d);

// Monte Carlo mean of ||Q||^2_FS over B_FS(center, chart_ball_radius(d)),
// uniform for the Fubini-Study volume.
double ball_average_norm_sq(const HomogeneousPoly& q, const Point2& center, int d, int n_mc,
                            RngStream& rng);

// c1(d) = 3^3 2^5 e^{4/3} (1 + 4/d)^3
double c1(int d);

// ln(1 - gamma(kappa)) = -2^11 3^3 / kappa^2 + ln(1 - e^{-1/2}); gamma itself
// rounds to 1 in double precision for every kappa <= 1.
double gamma_log_complement(double kappa);

// 1 - 14 gamma(kappa)^N evaluated in log space; vacuous whenever it is <= 0,
// which at double precision is every feasible (kappa, N).
struct ChartProbabilityBound {
  double lower_bound;
  bool vacuous;
  double ln_one_minus_gamma;
};
ChartProbabilityBound exponential_chart_bound(double kappa, long long n_charts);

// |a|^2 > c1(d) / (kappa^2 N_d) ||Q||^2_ball implies the standard chart is a
// submanifold chart for V_{a P_d + Q}; Q is projected orthogonal to P_d first.
bool criterion_holds(Complex a, const HomogeneousPoly& q, double kappa, int d, int n_mc,
                     RngStream& rng);

enum class ChartCheck { Pass, Fail, Indeterminate };

// Direct graph test over the standard chart: every sampled z1 in
// D(0, 1/sqrt(6d)) must see exactly one root of P(1, z1, .) inside
// D(0, kappa/sqrt(6d)); roots in the relative guard band around the boundary
// circle make the verdict indeterminate.
ChartCheck direct_chart_check(const HomogeneousPoly& p, double kappa, int d, int n_grid);

struct ChartExperimentReport {
  std::int64_t n_samples = 0;
  std::int64_t n_success = 0;
  std::int64_t n_indeterminate = 0;
  EstimatorResult probability;
  ChartProbabilityBound bound{};
  double min_spacing = 0.0;
  double required_spacing = 0.0;
};

// Random curves against N marked charts: empirical probability that at least
// one chart is a submanifold chart, with the exponential lower bound evaluated
// alongside. Centers must be pairwise sqrt(20 ln d / d) apart in FS distance.
ChartExperimentReport chart_probability_experiment(int d, double kappa,
                                                   const std::vector<MarkedChart>& charts,
                                                   std::int64_t n_samples, const RngStream& rng,
                                                   int n_grid = 64, int threads = 0);

// N = floor(2 delta sqrt(d) / (3 sqrt(5 ln d)))^2 for 1 > delta >= 3 sqrt(5 ln d / d).
long long packed_chart_count(double delta, int d);

}  // namespace amoeba
