#include "amoeba/charts.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "amoeba/kostlan.hpp"
#include "amoeba/parallel.hpp"
#include "amoeba/roots.hpp"

namespace amoeba {

namespace {
constexpr double kGuardBand = 1e-3;  // relative, separates tangency from solver noise

Point2 apply_isometry(const Eigen::Matrix3cd& u, const Point2& z) {
  const Eigen::Vector3cd lift(1.0, z[0], z[1]);
  const Eigen::Vector3cd w = u * lift;
  return {w[1] / w[0], w[2] / w[0]};
}
}  // namespace

MarkedChart MarkedChart::make(int d, double kappa, const Eigen::Matrix3cd& isometry) {
  if (d < 1) throw std::invalid_argument("MarkedChart: degree must be >= 1");
  if (!(kappa > 0.0) || kappa > 1.0) throw std::invalid_argument("MarkedChart: kappa in (0, 1]");
  if ((isometry.adjoint() * isometry - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("MarkedChart: isometry must be unitary");
  MarkedChart c;
  c.d = d;
  c.kappa = kappa;
  c.isometry = isometry;
  const Eigen::Vector3cd center = isometry.col(0);  // image of [1:0:0]
  int flag = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(center[i]) > std::abs(center[flag])) flag = i;
  c.chart_flag = flag;
  c.center_affine = {center[(flag + 1) % 3] / center[flag], center[(flag + 2) % 3] / center[flag]};
  return c;
}

Eigen::Matrix3cd unitary_from_affine_point(const Point2& z) {
  Eigen::Matrix3cd u;
  Eigen::Vector3cd v0(1.0, z[0], z[1]);
  v0.normalize();
  u.col(0) = v0;
  // Complete by Gram-Schmidt over the standard basis.
  int col = 1;
  for (int k = 0; k < 3 && col < 3; ++k) {
    Eigen::Vector3cd v = Eigen::Vector3cd::Zero();
    v[k] = 1.0;
    for (int j = 0; j < col; ++j) v -= u.col(j).dot(v) * u.col(j);
    if (v.norm() > 1e-6) {
      v.normalize();
      u.col(col++) = v;
    }
  }
  return u;
}

HomogeneousPoly reference_poly(int d) {
  if (d < 1) throw std::invalid_argument("reference_poly: degree must be >= 1");
  HomogeneousPoly p = HomogeneousPoly::zero(d);
  p.set_coeff({d - 1, 0, 1}, std::sqrt(static_cast<double>(d) * poly_space_dim(d)));
  return p;
}

double ball_average_norm_sq(const HomogeneousPoly& q, const Point2& center, int d, int n_mc,
                            RngStream& rng) {
  if (n_mc < 1000) throw std::invalid_argument("ball_average_norm_sq: n_mc must be >= 1000");
  const double radius = 2.0 / std::sqrt(static_cast<double>(d));  // tan(chart_ball_radius)
  const bool at_origin = center[0] == Complex(0.0) && center[1] == Complex(0.0);
  const Eigen::Matrix3cd u =
      at_origin ? Eigen::Matrix3cd::Identity() : unitary_from_affine_point(center);

  double sum = 0.0;
  for (int i = 0; i < n_mc; ++i) {
    // Uniform FS draw on B_FS(0, rho_d): Euclidean ball rejection against the
    // density (1+||z||^2)^{-3}.
    Point2 z;
    for (;;) {
      Complex g1 = rng.next_complex_gaussian();
      Complex g2 = rng.next_complex_gaussian();
      const double n2 = std::norm(g1) + std::norm(g2);
      if (n2 < 1e-280) continue;
      const double r = radius * std::pow(rng.next_unit(), 0.25) / std::sqrt(n2);
      z = {r * g1, r * g2};
      const double s = 1.0 + std::norm(z[0]) + std::norm(z[1]);
      if (rng.next_unit() <= 1.0 / (s * s * s)) break;
    }
    const Point2 w = at_origin ? z : apply_isometry(u, z);
    sum += fs_point_norm_sq(q, w[0], w[1]);
  }
  return sum / n_mc;
}

double c1(int d) {
  if (d < 1) throw std::invalid_argument("c1: degree must be >= 1");
  const double f = 1.0 + 4.0 / d;
  return 864.0 * std::exp(4.0 / 3.0) * f * f * f;
}

double gamma_log_complement(double kappa) {
  if (!(kappa > 0.0) || kappa > 1.0) throw std::invalid_argument("gamma: kappa in (0, 1]");
  return -55296.0 / (kappa * kappa) + std::log1p(-std::exp(-0.5));
}

ChartProbabilityBound exponential_chart_bound(double kappa, long long n_charts) {
  if (n_charts < 1) throw std::invalid_argument("exponential_chart_bound: N >= 1");
  const double g = gamma_log_complement(kappa);
  // ln gamma = ln(1 - exp(g)); exp(g) underflows, so gamma is 1 - 0 here.
  const double ln_gamma = std::log1p(-std::exp(g));
  const double lower = -std::expm1(std::log(14.0) + n_charts * ln_gamma);
  return {lower, !(lower > 0.0), g};
}

bool criterion_holds(Complex a, const HomogeneousPoly& q, double kappa, int d, int n_mc,
                     RngStream& rng) {
  if (!(kappa > 0.0) || kappa > 1.0) throw std::invalid_argument("criterion_holds: kappa in (0, 1]");
  const HomogeneousPoly pd = reference_poly(d);
  HomogeneousPoly q_perp = q;
  q_perp.coeffs -= fs_inner_product(q, pd) * pd.coeffs;  // ||P_d||_FS = 1
  const double ball = ball_average_norm_sq(q_perp, Point2{}, d, n_mc, rng);
  return std::norm(a) > c1(d) / (kappa * kappa * poly_space_dim(d)) * ball;
}

ChartCheck direct_chart_check(const HomogeneousPoly& p, double kappa, int d, int n_grid) {
  if (n_grid < 64) throw std::invalid_argument("direct_chart_check: n_grid must be >= 64");
  const double r1 = 1.0 / std::sqrt(6.0 * d);
  const double r2 = kappa * r1;

  std::vector<Complex> samples;
  samples.reserve(2 * n_grid);
  samples.push_back(0.0);
  for (int j = 0; j < n_grid; ++j)
    samples.push_back(std::polar(r1, 2.0 * std::numbers::pi * j / n_grid));
  for (double frac : {0.25, 0.5, 0.75}) {
    const int m = std::max(8, n_grid / 4);
    for (int j = 0; j < m; ++j)
      samples.push_back(std::polar(frac * r1, 2.0 * std::numbers::pi * (j + 0.5) / m));
  }

  bool indeterminate = false;
  for (const Complex z1 : samples) {
    const Eigen::VectorXcd b = p.slice_in_z2(z1);
    if (b.cwiseAbs().maxCoeff() < 1e-300) return ChartCheck::Fail;  // no graph over this z1
    const RootSet rs = poly_roots(b);
    int inside = 0;
    for (const auto& z2 : rs.roots) {
      const double m = std::abs(z2);
      if (std::abs(m - r2) < kGuardBand * r2) indeterminate = true;
      if (m < r2) ++inside;
    }
    if (inside != 1) return indeterminate ? ChartCheck::Indeterminate : ChartCheck::Fail;
  }
  return indeterminate ? ChartCheck::Indeterminate : ChartCheck::Pass;
}

ChartExperimentReport chart_probability_experiment(int d, double kappa,
                                                   const std::vector<MarkedChart>& charts,
                                                   std::int64_t n_samples, const RngStream& rng,
                                                   int n_grid, int threads) {
  if (charts.empty()) throw std::invalid_argument("chart_probability_experiment: no charts");
  ChartExperimentReport rep;
  rep.required_spacing = std::sqrt(20.0 * std::log(static_cast<double>(d)) / d);
  rep.min_spacing = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < charts.size(); ++i) {
    const Eigen::Vector3cd ci = charts[i].isometry.col(0);
    for (std::size_t j = i + 1; j < charts.size(); ++j) {
      const Eigen::Vector3cd cj = charts[j].isometry.col(0);
      const double cosd = std::min(1.0, std::abs((ci.adjoint() * cj)(0)));
      rep.min_spacing = std::min(rep.min_spacing, std::acos(cosd));
    }
  }
  if (charts.size() > 1 && rep.min_spacing < rep.required_spacing)
    throw std::domain_error("chart_probability_experiment: center spacing below sqrt(20 ln d / d)");

  const std::int64_t n_blocks = (n_samples + 63) / 64;
  std::vector<std::int64_t> success(n_blocks, 0), indet(n_blocks, 0);
  parallel_for_blocks(n_blocks, threads, [&](std::int64_t blk) {
    const std::int64_t lo = blk * 64, hi = std::min(n_samples, lo + 64);
    for (std::int64_t i = lo; i < hi; ++i) {
      RngStream stream = rng.derive(static_cast<std::uint64_t>(i));
      const HomogeneousPoly p = sample_poly(d, stream);
      bool any_pass = false, any_indet = false;
      for (const MarkedChart& chart : charts) {
        const HomogeneousPoly moved = compose_with_matrix(p, chart.isometry);
        const ChartCheck c = direct_chart_check(moved, kappa, d, n_grid);
        if (c == ChartCheck::Pass) {
          any_pass = true;
          break;
        }
        if (c == ChartCheck::Indeterminate) any_indet = true;
      }
      if (any_pass)
        ++success[blk];
      else if (any_indet)
        ++indet[blk];
    }
  });
  for (std::int64_t blk = 0; blk < n_blocks; ++blk) {
    rep.n_success += success[blk];
    rep.n_indeterminate += indet[blk];
  }
  rep.n_samples = n_samples;
  rep.probability = wilson_estimate(rep.n_success, n_samples - rep.n_indeterminate);
  rep.bound = exponential_chart_bound(kappa, static_cast<long long>(charts.size()));
  return rep;
}

long long packed_chart_count(double delta, int d) {
  if (d < 2) throw std::domain_error("packed_chart_count: need d >= 2");
  const double min_delta = 3.0 * std::sqrt(5.0 * std::log(static_cast<double>(d)) / d);
  if (!(delta < 1.0) || !(delta >= min_delta))
    throw std::domain_error("packed_chart_count: requires 1 > delta >= 3 sqrt(5 ln d / d)");
  const double root = std::floor(2.0 * delta * std::sqrt(static_cast<double>(d)) /
                                 (3.0 * std::sqrt(5.0 * std::log(static_cast<double>(d)))));
  return static_cast<long long>(root) * static_cast<long long>(root);
}

}  // namespace amoeba
