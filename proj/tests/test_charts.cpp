#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "amoeba/charts.hpp"
#include "amoeba/kostlan.hpp"

using namespace amoeba;
namespace {
constexpr double kPi = std::numbers::pi;

Eigen::Matrix3cd cycle_matrix() {
  Eigen::Matrix3cd c = Eigen::Matrix3cd::Zero();
  c(1, 0) = c(2, 1) = c(0, 2) = 1.0;
  return c;
}

Eigen::Matrix3cd random_unitary(RngStream& rng) {
  Eigen::Matrix3cd a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = rng.next_complex_gaussian();
  return Eigen::HouseholderQR<Eigen::Matrix3cd>(a).householderQ();
}

}  // namespace

TEST_CASE("reference polynomial: coefficient, norm, pointwise decay") {
  const HomogeneousPoly p2 = reference_poly(2);
  CHECK(std::abs(p2.coeff({1, 0, 1}) - std::sqrt(12.0)) < 1e-12);
  for (int d = 1; d <= 10; ++d) CHECK(fs_norm_sq(reference_poly(d)) == doctest::Approx(1.0).epsilon(1e-12));

  RngStream rng(31, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 7);
    const HomogeneousPoly pd = reference_poly(d);
    const Complex z1 = 2.0 * rng.next_complex_gaussian();
    const Complex z2 = 2.0 * rng.next_complex_gaussian();
    const double dist = fs_distance_from_origin({z1, z2});
    const double cap = d * poly_space_dim(d) * std::pow(std::cos(dist), 2 * (d - 1));
    CHECK(fs_point_norm_sq(pd, z1, z2) <= cap * (1 + 1e-9));
  }
}

TEST_CASE("boundary lower bound on the reference polynomial") {
  RngStream rng(32, 0);
  for (int d = 1; d <= 10; ++d) {
    const HomogeneousPoly pd = reference_poly(d);
    const double r1 = 1.0 / std::sqrt(6.0 * d);
    for (int trial = 0; trial < 100; ++trial) {
      const double kappa = 0.05 + 0.95 * rng.next_unit();
      const Complex z1 = std::polar(r1 * rng.next_unit(), 2 * kPi * rng.next_unit());
      const Complex z2 = std::polar(kappa * r1, 2 * kPi * rng.next_unit());
      const double floor_val = kappa * kappa * poly_space_dim(d) * std::exp(-1.0 / 3.0) / 6.0;
      CHECK(fs_point_norm_sq(pd, z1, z2) >= floor_val * (1 - 1e-9));
    }
  }
}

TEST_CASE("composition with unitaries preserves the FS norm") {
  RngStream rng(33, 0);
  for (int trial = 0; trial < 20; ++trial) {
    RngStream stream = rng.derive(trial);
    const int d = 1 + static_cast<int>(stream.next_u64() % 6);
    const HomogeneousPoly p = sample_poly(d, stream);
    const Eigen::Matrix3cd u = random_unitary(stream);
    const HomogeneousPoly q = compose_with_matrix(p, u);
    CHECK(fs_norm_sq(q) == doctest::Approx(fs_norm_sq(p)).epsilon(1e-10));

    // pointwise: ||(P o U)(z)||_FS = ||P(U z)||_FS
    const Complex z1 = stream.next_complex_gaussian(), z2 = stream.next_complex_gaussian();
    const Eigen::Vector3cd w = u * Eigen::Vector3cd(1.0, z1, z2);
    CHECK(fs_point_norm_sq(q, z1, z2) ==
          doctest::Approx(fs_point_norm_sq(p, w[1] / w[0], w[2] / w[0])).epsilon(1e-8));
  }
  // identity and coordinate rotation sanity
  RngStream stream(34, 0);
  const HomogeneousPoly p = sample_poly(3, stream);
  const HomogeneousPoly same = compose_with_matrix(p, Eigen::Matrix3cd::Identity());
  CHECK((same.coeffs - p.coeffs).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("overlap of reference polynomials under isometries") {
  RngStream rng(35, 0);
  const int d = 3;
  const HomogeneousPoly pd = reference_poly(d);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Matrix3cd u = random_unitary(rng);
    const HomogeneousPoly moved = compose_with_matrix(pd, u.adjoint().eval());
    const Complex exact = fs_inner_product(pd, moved);

    // distance from the origin to the image of the origin
    const Eigen::Vector3cd img = u.col(0);
    const double cosd = std::min(1.0, std::abs(img[0]));
    const double dist = std::acos(cosd);
    const double cap = d * poly_space_dim(d) * std::pow((1 + std::cos(dist)) / 2, d - 1);
    CHECK(std::abs(exact) <= cap * (1 + 1e-9));

    // Monte Carlo FS integration agrees with the coefficient-space pairing
    RngStream mc(36, trial);
    Complex acc = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      const auto [z1, z2] = fs_uniform_point(mc);
      const double den = 1.0 + std::norm(z1) + std::norm(z2);
      const Complex a = pd.eval_affine(z1, z2);
      const Complex b = moved.eval_affine(z1, z2);
      acc += a * std::conj(b) / std::pow(den, d);
    }
    acc /= static_cast<double>(n);
    CHECK(std::abs(acc - exact) < 0.15 * std::sqrt(static_cast<double>(d * poly_space_dim(d))));
  }
}

TEST_CASE("ball-average norm") {
  RngStream rng(37, 0);
  const int d = 3;
  // Q = 0
  CHECK(ball_average_norm_sq(HomogeneousPoly::zero(d), Point2{}, d, 1000, rng) == 0.0);
  CHECK_THROWS_AS(ball_average_norm_sq(HomogeneousPoly::zero(d), Point2{}, d, 10, rng),
                  std::invalid_argument);

  // E over random Q equals N_d
  double sum = 0.0;
  const int n_q = 60;
  for (int i = 0; i < n_q; ++i) {
    RngStream stream = rng.derive(i);
    const HomogeneousPoly q = sample_poly(d, stream);
    sum += ball_average_norm_sq(q, Point2{}, d, 2000, stream);
  }
  const double mean = sum / n_q;
  // ball averages of one draw have variance below that of ||Q||_FS^2 (= N_d)
  CHECK(std::abs(mean - poly_space_dim(d)) <= 3.0 * std::sqrt(static_cast<double>(poly_space_dim(d)) / n_q) + 0.5);

  // reference polynomial: sin^4(rho_d) ||P_d||^2_ball lands in the proven window
  for (int dd : {2, 3, 6}) {
    RngStream stream = rng.derive(100 + dd);
    const double ball = ball_average_norm_sq(reference_poly(dd), Point2{}, dd, 60000, stream);
    const double s4 = std::pow(std::sin(chart_ball_radius(dd)), 4.0);
    const double lower = (1.0 - 13.0 * std::exp(-4.0)) / std::pow(1.0 + 4.0 / dd, 3.0);
    CHECK(s4 * ball >= lower * 0.97);
    CHECK(s4 * ball <= 1.0 * 1.03);
  }
}

TEST_CASE("ball-average decay away from the axis") {
  RngStream rng(38, 0);
  const int d = 4;
  const HomogeneousPoly pd = reference_poly(d);
  const double rho = chart_ball_radius(d);
  for (double spread : {2.0, 3.0, 5.0}) {
    const double r = std::tan(std::min(1.4, spread * rho));
    const Point2 center{Complex(r / std::sqrt(2.0), 0), Complex(0, r / std::sqrt(2.0))};
    const double dist = fs_distance_from_origin(center);
    if (dist <= rho) continue;
    RngStream stream = rng.derive(static_cast<uint64_t>(spread * 10));
    const double ball = ball_average_norm_sq(pd, center, d, 20000, stream);
    const double cap = d * poly_space_dim(d) * std::pow(std::cos(dist - rho), 2 * (d - 1));
    CHECK(ball <= cap * 1.1);
  }
}

TEST_CASE("criterion constants") {
  CHECK(c1(1000000) == doctest::Approx(864.0 * std::exp(4.0 / 3.0)).epsilon(2e-5));
  CHECK(c1(1) > c1(2));
  CHECK(c1(2) > c1(1000));

  CHECK(gamma_log_complement(1.0) ==
        doctest::Approx(-55296.0 + std::log1p(-std::exp(-0.5))).epsilon(1e-12));
  CHECK(gamma_log_complement(0.5) < gamma_log_complement(1.0));
  CHECK_THROWS_AS(gamma_log_complement(0.0), std::invalid_argument);

  for (long long n : {1LL, 1000LL, 1LL << 50}) {
    const ChartProbabilityBound b = exponential_chart_bound(0.5, n);
    CHECK(b.vacuous);
    CHECK(b.lower_bound <= 0.0);
  }
}

TEST_CASE("criterion: trivial verdicts and soundness versus the direct check") {
  RngStream rng(39, 0);
  const int d = 3;
  const double kappa = 0.5;

  HomogeneousPoly zero_q = HomogeneousPoly::zero(d);
  CHECK(criterion_holds(1.0, zero_q, kappa, d, 1000, rng));
  RngStream stream_a(40, 0);
  const HomogeneousPoly some_q = sample_poly(d, stream_a);
  CHECK(!criterion_holds(0.0, some_q, kappa, d, 1000, stream_a));

  int tested = 0, criterion_true = 0;
  for (int trial = 0; trial < 50; ++trial) {
    RngStream stream = rng.derive(trial);
    HomogeneousPoly q = sample_poly(d, stream);
    const HomogeneousPoly pd = reference_poly(d);
    q.coeffs -= fs_inner_product(q, pd) * pd.coeffs;

    RngStream ball_stream = stream.derive(1);
    const double rhs = c1(d) / (kappa * kappa * poly_space_dim(d)) *
                       ball_average_norm_sq(q, Point2{}, d, 2000, ball_stream);
    const double a_mag = std::sqrt(rhs) * (0.2 + 1.8 * stream.next_unit());
    const Complex a = std::polar(a_mag, 2 * kPi * stream.next_unit());

    RngStream crit_stream = stream.derive(2);
    const bool crit = criterion_holds(a, q, kappa, d, 2000, crit_stream);
    if (!crit) continue;
    ++criterion_true;
    HomogeneousPoly combined = q;
    combined.coeffs += a * pd.coeffs;
    const ChartCheck check = direct_chart_check(combined, kappa, d, 64);
    if (check == ChartCheck::Indeterminate) continue;
    ++tested;
    CHECK(check == ChartCheck::Pass);
  }
  CHECK(criterion_true > 5);  // the sampler was not degenerate
  CHECK(tested > 0);
}

TEST_CASE("direct chart check on explicit curves") {
  for (int d : {2, 5}) {
    const HomogeneousPoly pd = reference_poly(d);
    for (double kappa : {0.3, 0.7, 1.0}) CHECK(direct_chart_check(pd, kappa, d, 64) == ChartCheck::Pass);

    HomogeneousPoly vertical = HomogeneousPoly::zero(d);
    vertical.set_coeff({d - 1, 1, 0}, 1.0);  // zero locus z1 = 0, no graph
    CHECK(direct_chart_check(vertical, 0.5, d, 64) == ChartCheck::Fail);
  }
  CHECK_THROWS_AS(direct_chart_check(reference_poly(2), 0.5, 2, 16), std::invalid_argument);
}

TEST_CASE("marked chart construction") {
  const MarkedChart at_origin = MarkedChart::make(4, 0.5, Eigen::Matrix3cd::Identity());
  CHECK(at_origin.chart_flag == 0);
  CHECK(std::abs(at_origin.center_affine[0]) < 1e-14);

  const MarkedChart moved = MarkedChart::make(4, 0.5, cycle_matrix());
  CHECK(moved.chart_flag == 1);

  CHECK_THROWS_AS(MarkedChart::make(4, 1.5, Eigen::Matrix3cd::Identity()), std::invalid_argument);
  CHECK_THROWS_AS(MarkedChart::make(4, 0.5, 2.0 * Eigen::Matrix3cd::Identity()),
                  std::invalid_argument);

  RngStream rng(41, 0);
  for (int i = 0; i < 10; ++i) {
    const Point2 z{rng.next_complex_gaussian(), rng.next_complex_gaussian()};
    const Eigen::Matrix3cd u = unitary_from_affine_point(z);
    CHECK((u.adjoint() * u - Eigen::Matrix3cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::Vector3cd img = u.col(0);
    CHECK(std::abs(img[1] / img[0] - z[0]) < 1e-10);
    CHECK(std::abs(img[2] / img[0] - z[1]) < 1e-10);
  }
}

TEST_CASE("chart experiment: spacing gate, monotone union, vacuity") {
  const RngStream rng(42, 0);
  // At d = 4 the required spacing exceeds the diameter of CP^2.
  {
    std::vector<MarkedChart> charts{MarkedChart::make(4, 0.5, Eigen::Matrix3cd::Identity()),
                                    MarkedChart::make(4, 0.5, cycle_matrix())};
    CHECK_THROWS_AS(chart_probability_experiment(4, 0.5, charts, 10, rng, 64), std::domain_error);
  }
  // Coordinate centers are pi/2 apart and admissible at d = 30.
  const int d = 30;
  std::vector<MarkedChart> charts{MarkedChart::make(d, 0.5, Eigen::Matrix3cd::Identity()),
                                  MarkedChart::make(d, 0.5, cycle_matrix()),
                                  MarkedChart::make(d, 0.5, (cycle_matrix() * cycle_matrix()).eval())};
  double prev = -1.0;
  for (std::size_t n_charts = 1; n_charts <= 3; ++n_charts) {
    const std::vector<MarkedChart> subset(charts.begin(), charts.begin() + n_charts);
    const ChartExperimentReport rep = chart_probability_experiment(d, 0.5, subset, 24, rng, 64);
    CHECK(rep.probability.mean >= 0.0);
    CHECK(rep.probability.mean <= 1.0);
    CHECK(rep.probability.mean >= prev - 1e-12);  // same draws, larger union
    CHECK(rep.bound.vacuous);
    prev = rep.probability.mean;
  }
}

TEST_CASE("chart count for the packing argument") {
  // at the smallest admissible separation the count is 2^2
  for (int d : {100, 10000}) {
    const double dmin = 3.0 * std::sqrt(5.0 * std::log(static_cast<double>(d)) / d);
    if (dmin < 1.0) CHECK(packed_chart_count(dmin, d) == 4);
  }
  CHECK(packed_chart_count(0.5, 10000) == 16);
  CHECK(packed_chart_count(0.7, 10000) >= packed_chart_count(0.5, 10000));
  CHECK_THROWS_AS(packed_chart_count(0.01, 10000), std::domain_error);
  CHECK_THROWS_AS(packed_chart_count(1.0, 10000), std::domain_error);
}
