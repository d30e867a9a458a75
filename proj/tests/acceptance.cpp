// Acceptance suite: every release-gating check in one binary, one line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "amoeba/amoeba_engine.hpp"
#include "amoeba/bergman.hpp"
#include "amoeba/bounds.hpp"
#include "amoeba/charts.hpp"
#include "amoeba/kostlan.hpp"
#include "amoeba/report.hpp"
#include "amoeba/runner.hpp"
#include "amoeba/version.hpp"

using namespace amoeba;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %-34s %s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

template <typename F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Eigen::MatrixXcd random_pd(int n, RngStream& rng, double ridge = 0.05) {
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.next_complex_gaussian();
  return a * a.adjoint() + ridge * Eigen::MatrixXcd::Identity(n, n);
}

// 1. Multiarea identity at d = 2 and d = 3.
void criterion_multiarea() {
  SliceSweepConfig cfg;
  bool pass = true;
  std::string detail;
  double seconds = 0.0;
  for (int d : {2, 3}) {
    const RngStream rng(20240 + d, 0);
    AmoebaMeasureEstimate e;
    seconds += timed([&] { e = estimate_multiarea(d, 100000, default_window(d), cfg, rng); });
    const double target = kPi * kPi * d;
    const double total = e.value + e.tail_bound;
    const bool ok = std::abs(total - target) <= 3.0 * e.stderr_;
    pass = pass && ok;
    detail += "d=" + std::to_string(d) + ": " + fmt(total) + " vs " + fmt(target) +
              " (3se=" + fmt(3 * e.stderr_) + ")  ";
  }
  detail += "[" + fmt(seconds) + "s]";
  report(1, "multiarea = pi^2 d", pass, detail);
}

// 2. Crofton density at two tori.
void criterion_crofton() {
  SliceSweepConfig cfg;
  bool pass = true;
  std::string detail;
  int salt = 0;
  for (const TorusRadii r : {TorusRadii{1.0, 1.0}, TorusRadii{0.5, 2.0}}) {
    const CroftonReport rep = crofton_check(2, r, 100000, cfg, RngStream(3300 + salt++, 0));
    pass = pass && rep.holds_3sigma;
    detail += "(" + fmt(r.x) + "," + fmt(r.y) + "): " + fmt(rep.empirical_mean) + " vs " +
              fmt(rep.predicted) + "  ";
  }
  report(2, "crofton intersection density", pass, detail);
}

// 3. Radius tables for d = 2..6.
void criterion_radius_tables() {
  const double lo0[] = {0.714, 0.322, 0.212, 0.158, 0.1269};
  const double hi0[] = {0.715, 0.323, 0.213, 0.159, 0.1270};
  const double lo1[] = {6.374, 19.046, 36.395, 58.633, 85.7913};
  const double hi1[] = {6.401, 19.050, 36.396, 58.634, 85.7915};
  bool pass = true;
  std::string detail;
  const double seconds = timed([&] {
    for (int d = 2; d <= 6; ++d) {
      const RhoPair rp = solve_rho(d);
      const RhoBrackets br = iterate_brackets(d, 12);
      const double u0 = rp.rho0 * rp.rho0, u1 = rp.rho1 * rp.rho1;
      const bool ok = u0 >= lo0[d - 2] && u0 <= hi0[d - 2] && u1 >= lo1[d - 2] &&
                      u1 <= hi1[d - 2] && br.rho0_sq_lo >= lo0[d - 2] &&
                      br.rho0_sq_hi <= hi0[d - 2] && br.rho1_sq_lo >= lo1[d - 2] &&
                      br.rho1_sq_hi <= hi1[d - 2];
      pass = pass && ok;
    }
  });
  detail = "all printed intervals contain the solved radii [" + fmt(seconds) + "s]";
  report(3, "radius tables d=2..6", pass, detail);
}

// 4. Degree-five closed form and the sampled area below it.
void criterion_degree5() {
  const double bound = expupper_bound(5);
  bool pass = std::abs(bound - 24.298) <= 5e-4;
  SliceSweepConfig cfg;
  AmoebaMeasureEstimate e;
  const double seconds =
      timed([&] { e = estimate_area(5, 100000, default_window(5), cfg, RngStream(55, 0)); });
  const double capped = e.value + 3.0 * e.stderr_ + e.tail_bound;
  pass = pass && capped <= 24.298;
  report(4, "degree-5 area bound 24.298", pass,
         "closed form " + fmt(bound) + ", sampled+3se+tail " + fmt(capped) + " [" + fmt(seconds) +
             "s]");
}

// 5. Degree-six formula and the bound selection rule.
void criterion_degree6() {
  const double b6 = upperboundall_value(6);
  bool pass = b6 <= 28.3827 && std::abs(b6 - 28.3827) <= 1e-3;
  for (int d = 1; d <= 5; ++d) pass = pass && global_bound(d) == multiarea_half(d);
  for (int d : {100, 100000}) pass = pass && global_bound(d) == upperboundall_value(d) &&
                                     global_bound(d) < multiarea_half(d);
  report(5, "degree-6 bound 28.3827 + selection", pass, "value " + fmt(b6));
}

// 6. Asymptotic law of the truncated density integral.
void criterion_asymptotic() {
  bool pass = true;
  std::string detail;
  const double seconds = timed([&] {
    for (double dd : {1e3, 1e4, 1e5, 1e6}) {
      const double v = truncated_density_integral(static_cast<int>(dd));
      const double ld = std::log(dd);
      const double resid = v - (1.5 * ld * ld + 3.0 * (1.0 + std::log(kPi)) * ld);
      pass = pass && std::abs(resid) <= 25.0;
      detail += "d=1e" + std::to_string(static_cast<int>(std::log10(dd))) + ": " + fmt(resid) + "  ";
    }
  });
  detail += "[" + fmt(seconds) + "s]";
  report(6, "asymptotic residual <= 25", pass, detail);
}

// 7. Pointwise density domination.
void criterion_density_domination() {
  SliceSweepConfig cfg;
  RngStream rng(777, 0);
  int violations = 0, checked = 0;
  const double seconds = timed([&] {
    for (int i = 0; i < 50; ++i) {
      const LogPoint t{6.0 * rng.next_unit() - 3.0, 6.0 * rng.next_unit() - 3.0};
      for (int d : {2, 3, 5}) {
        const AmoebaMeasureEstimate e = estimate_p(t, d, 1000, cfg, rng.derive(i * 8 + d));
        const double cap = std::min(1.0, d * area_density(t) / (4.0 * kPi));
        ++checked;
        if (e.value > cap + 3.0 * e.stderr_) ++violations;
      }
    }
  });
  report(7, "p(t) <= min(1, d a(t) / 4 pi)", violations == 0,
         std::to_string(checked) + " checks, " + std::to_string(violations) + " violations [" +
             fmt(seconds) + "s]");
}

// 8. Evaluation covariance equals the reproducing kernel.
void criterion_covariance() {
  const std::vector<Point2> pts{{Complex(0.0), Complex(0.0)},
                                {Complex(0.4), Complex(0.0)},
                                {Complex(0.1), Complex(0.3, 0.2)}};
  RngStream rng(888, 0);
  Eigen::MatrixXcd emp;
  const double seconds = timed([&] { emp = empirical_evaluation_covariance(pts, 3, 100000, rng); });
  bool pass = true;
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Complex k = bergman_kernel(pts[i], pts[j], 3);
      const double rel = std::abs(emp(i, j) - k) / std::abs(k);
      worst = std::max(worst, rel);
      pass = pass && rel <= 0.05;
    }
  report(8, "evaluation covariance = kernel", pass,
         "worst relative deviation " + fmt(worst) + " [" + fmt(seconds) + "s]");
}

// 9. Tail/bound suite: 100 randomized instances per inequality.
void criterion_bound_suite() {
  RngStream rng(999, 0);
  int violations = 0;
  const double seconds = timed([&] {
    // deterministic matrix inequalities
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + static_cast<int>(rng.next_u64() % 5);
      const CovarianceMatrix c(random_pd(n, rng));
      if (c.inf_norm() > c.op_norm() * (1 + 1e-12)) ++violations;
      if (c.op_norm() > n * c.inf_norm() * (1 + 1e-12)) ++violations;
      if (c.determinant() < std::pow(c.inverse_op_norm(), -n) * (1 - 1e-9)) ++violations;
      Eigen::MatrixXcd m = c.matrix() / c.matrix()(0, 0).real();
      const CovarianceMatrix cu(m);
      if (std::min(cu.op_norm(), cu.inverse_op_norm()) < 1.0 - 1e-10) ++violations;
      Eigen::MatrixXcd near_id = Eigen::MatrixXcd::Identity(n, n) + 0.2 * c.matrix() / c.op_norm();
      const CovarianceMatrix cn(near_id);
      if (cn.inverse_op_norm() > inverse_bounds(cn).inv_norm_bound * (1 + 1e-12)) ++violations;
    }
    // moment generating function of ||Z||^2
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 1 + static_cast<int>(rng.next_u64() % 3);
      const CovarianceMatrix b(random_pd(n, rng));
      const double lambda = (0.05 + 0.3 * rng.next_unit()) / b.op_norm();
      const Eigen::MatrixXcd chol = Eigen::LLT<Eigen::MatrixXcd>(b.matrix()).matrixL();
      const int ns = 20000;
      double sum = 0.0, sum_sq = 0.0;
      for (int i = 0; i < ns; ++i) {
        const double v = std::exp(lambda * sample_gaussian_vector(chol, rng).squaredNorm());
        sum += v;
        sum_sq += v * v;
      }
      const double mean = sum / ns;
      const double se = std::sqrt(std::max(sum_sq / ns - mean * mean, 0.0) / ns);
      if (std::abs(mean - mgf_sq_norm(b, lambda)) > 3.0 * se) ++violations;
    }
    // large-ball tail bound
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 1 + static_cast<int>(rng.next_u64() % 4);
      const double r = std::sqrt(static_cast<double>(n)) * (1.2 + 0.8 * rng.next_unit());
      const int ns = 20000;
      int hits = 0;
      for (int i = 0; i < ns; ++i) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += std::norm(rng.next_complex_gaussian());
        if (s >= r * r) ++hits;
      }
      const double p = static_cast<double>(hits) / ns;
      const double bound = tail_bound_large_ball(n, r);
      if (p > bound + 3.0 * std::sqrt(std::max(p, 1e-9) * (1 - p) / ns)) ++violations;
    }
    // bernstein-style bound
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 1 + static_cast<int>(rng.next_u64() % 3);
      const CovarianceMatrix b(random_pd(n, rng));
      const double y = b.op_norm() * (1.5 + 1.5 * rng.next_unit());
      const Eigen::MatrixXcd chol = Eigen::LLT<Eigen::MatrixXcd>(b.matrix()).matrixL();
      const int ns = 20000;
      int hits = 0;
      for (int i = 0; i < ns; ++i)
        if (sample_gaussian_vector(chol, rng).squaredNorm() >= n * y) ++hits;
      const double p = static_cast<double>(hits) / ns;
      if (p > bernstein_tail_bound(b, y) + 3.0 * std::sqrt(std::max(p, 1e-9) / ns)) ++violations;
    }
    // coordinate-pattern bound
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + static_cast<int>(rng.next_u64() % 2);
      Eigen::MatrixXcd raw = random_pd(n, rng, 0.3);
      Eigen::MatrixXcd corr(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          corr(i, j) = raw(i, j) / std::sqrt(raw(i, i).real() * raw(j, j).real());
      std::vector<int> inside;
      for (int i = 0; i < n; ++i)
        if (rng.next_unit() < 0.5) inside.push_back(i);
      const auto rep = bergmanbound_check(CovarianceMatrix(corr), 0.5 + 1.5 * rng.next_unit(),
                                          inside, 10000, rng);
      if (!rep.holds_with_slack) ++violations;
    }
    // conditional-expectation bounds
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 1 + static_cast<int>(rng.next_u64() % 3);
      const CovarianceMatrix b(random_pd(n, rng));
      const double q = (1.8 + 1.5 * rng.next_unit()) * b.matrix().real().trace();
      const auto rep = check_conditional_bounds(b, q, 20000, rng);
      if (!rep.inconclusive && (!rep.integral_bound_holds || !rep.variance_bound_holds))
        ++violations;
    }
  });
  report(9, "tail/bound suite (600 instances)", violations == 0,
         std::to_string(violations) + " violations [" + fmt(seconds) + "s]");
}

// 10. Chart criterion soundness and bound vacuity.
void criterion_chart_soundness() {
  const int d = 3;
  const double kappa = 0.5;
  RngStream rng(1010, 0);
  int criterion_true = 0, indeterminate = 0, violations = 0;
  const double seconds = timed([&] {
    const HomogeneousPoly pd = reference_poly(d);
    for (int trial = 0; trial < 200; ++trial) {
      RngStream stream = rng.derive(trial);
      HomogeneousPoly q = sample_poly(d, stream);
      q.coeffs -= fs_inner_product(q, pd) * pd.coeffs;
      RngStream ball_stream = stream.derive(1);
      const double rhs = c1(d) / (kappa * kappa * poly_space_dim(d)) *
                         ball_average_norm_sq(q, Point2{}, d, 2000, ball_stream);
      const Complex a = std::polar(std::sqrt(rhs) * (0.2 + 1.8 * stream.next_unit()),
                                   2 * kPi * stream.next_unit());
      RngStream crit_stream = stream.derive(2);
      if (!criterion_holds(a, q, kappa, d, 2000, crit_stream)) continue;
      ++criterion_true;
      HomogeneousPoly combined = q;
      combined.coeffs += a * pd.coeffs;
      const ChartCheck check = direct_chart_check(combined, kappa, d, 64);
      if (check == ChartCheck::Indeterminate)
        ++indeterminate;
      else if (check != ChartCheck::Pass)
        ++violations;
    }
  });
  const ChartProbabilityBound bound = exponential_chart_bound(kappa, 64);
  const bool pass = violations == 0 && criterion_true > 20 && bound.vacuous;
  report(10, "chart criterion soundness", pass,
         std::to_string(criterion_true) + " positives, " + std::to_string(violations) +
             " unsound, " + std::to_string(indeterminate) + " indeterminate, bound vacuous=" +
             (bound.vacuous ? "yes" : "no") + " [" + fmt(seconds) + "s]");
}

// 11. Membership against the dense-grid oracle.
void criterion_oracle_agreement() {
  SliceSweepConfig cfg;
  RngStream rng(1111, 0);
  int agree = 0, total = 0, flagged = 0;
  const double seconds = timed([&] {
    for (int trial = 0; trial < 500; ++trial) {
      RngStream stream = rng.derive(trial);
      const int d = 2 + static_cast<int>(stream.next_u64() % 4);
      const HomogeneousPoly p = sample_poly(d, stream);
      const LogPoint t{5.0 * stream.next_unit() - 2.5, 5.0 * stream.next_unit() - 2.5};
      const MembershipVerdict v = torus_intersection_count(p, t, cfg);
      if (v.flagged_tangency) {
        ++flagged;
        continue;
      }
      ++total;
      if (v.member == membership_oracle_dense(p, t, 384)) ++agree;
    }
  });
  const double rate = total > 0 ? static_cast<double>(agree) / total : 0.0;
  report(11, "oracle agreement >= 99%", rate >= 0.99,
         fmt(100.0 * rate) + "% of " + std::to_string(total) + " (" + std::to_string(flagged) +
             " tangency-flagged) [" + fmt(seconds) + "s]");
}

// 12. Reports independent of the worker count.
void criterion_determinism() {
  ExperimentConfig c;
  c.command = "multiarea";
  c.degree = 2;
  c.samples = 4000;
  c.seed = 1212;
  c.threads = 1;
  ExperimentConfig c4 = c;
  c4.threads = 4;
  const RunOutcome a = run_experiment(c);
  const RunOutcome b = run_experiment(c4);
  auto strip = [](const Report& r) {
    nlohmann::json j = nlohmann::json::parse(report_to_json(r));
    j.erase("timestamp");
    j["config"].erase("threads");
    return j;
  };
  const bool pass = a.exit_code == kExitOk && b.exit_code == kExitOk && strip(a.report) == strip(b.report);
  report(12, "thread-count determinism", pass, pass ? "reports identical" : "reports differ");
}

}  // namespace

int main() {
  std::printf("amoeba-lab acceptance suite, version %s\n", kVersion);
  criterion_multiarea();
  criterion_crofton();
  criterion_radius_tables();
  criterion_degree5();
  criterion_degree6();
  criterion_asymptotic();
  criterion_density_domination();
  criterion_covariance();
  criterion_bound_suite();
  criterion_chart_soundness();
  criterion_oracle_agreement();
  criterion_determinism();
  if (g_failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", g_failures);
  return g_failures;
}
