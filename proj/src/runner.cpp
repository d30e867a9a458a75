#include "amoeba/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "amoeba/amoeba_engine.hpp"
#include "amoeba/bounds.hpp"
#include "amoeba/charts.hpp"
#include "amoeba/parallel.hpp"
#include "amoeba/selfcheck.hpp"
#include "amoeba/version.hpp"

namespace amoeba {

namespace {

constexpr double kPi = std::numbers::pi;

int resolve_config_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("AMOEBA_LAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return resolve_threads(0);
}

std::string flagged(std::int64_t n) {
  return n > 0 ? "tangency_excluded=" + std::to_string(n) : "";
}

void validate_config(const ExperimentConfig& c) {
  if (c.degree < 1) throw std::invalid_argument("degree must be >= 1");
  if (c.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (c.window_T < 0.0) throw std::invalid_argument("window must be positive");
  if (!(c.kappa > 0.0) || c.kappa > 1.0) throw std::invalid_argument("kappa must be in (0, 1]");
  if (!(c.torus_x > 0.0) || !(c.torus_y > 0.0)) throw std::invalid_argument("torus radii must be positive");
  if (c.format != "json" && c.format != "csv") throw std::invalid_argument("format must be json or csv");
  if (c.grid != 0 && c.grid < 16) throw std::invalid_argument("grid must be >= 16");
}

void emit_p_grid(const ExperimentConfig& c, double window, const SliceSweepConfig& sweep,
                 int threads) {
  const int n = std::max(c.grid, 16);
  std::ofstream out(c.emit_grid_path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open " + c.emit_grid_path);
  out.precision(10);
  out << "t1,t2,p_hat,stderr,n\n";
  RngStream root(c.seed, 0x919D);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const LogPoint t{-window + 2.0 * window * i / (n - 1), -window + 2.0 * window * j / (n - 1)};
      const AmoebaMeasureEstimate e =
          estimate_p(t, c.degree, c.samples, sweep, root.derive(i * 131071ull + j), threads);
      out << t.t1 << ',' << t.t2 << ',' << e.value << ',' << e.stderr_ << ',' << e.n_samples << '\n';
    }
  }
  if (!out.good()) throw std::ios_base::failure("write failed for " + c.emit_grid_path);
}

Report build_report(const ExperimentConfig& c, int threads) {
  Report r;
  r.command = c.command;
  r.version = kVersion;
  r.config = {c.command, c.degree,  c.samples, c.window_T, c.theta_base, c.grid, c.kappa,
              c.torus_x, c.torus_y, c.seed,    threads,    c.out_path,   c.format};

  SliceSweepConfig sweep;
  sweep.n_theta_base = c.theta_base;
  const RngStream rng(c.seed, 0);
  const double window = c.window_T > 0.0 ? c.window_T : default_window(c.degree);
  r.config.window_T = window;

  if (c.command == "multiarea" || c.command == "area") {
    const bool multi = c.command == "multiarea";
    const AmoebaMeasureEstimate e =
        multi ? estimate_multiarea(c.degree, c.samples, window, sweep, rng, threads)
              : estimate_area(c.degree, c.samples, window, sweep, rng, threads);
    const double total = e.value + e.tail_bound;
    r.estimate = total;
    r.stderr_ = e.stderr_;
    r.metrics.push_back({multi ? "multiarea_window" : "area_window", e.value, e.stderr_,
                         e.n_samples, e.tail_bound, flagged(e.n_flagged)});
    r.metrics.push_back({multi ? "multiarea_total" : "area_total", total, e.stderr_, e.n_samples,
                         e.tail_bound, ""});
    if (multi) {
      r.target = kPi * kPi * c.degree;
      r.z_score = e.stderr_ > 0 ? (total - *r.target) / e.stderr_ : 0.0;
      r.metrics.push_back({"target", *r.target, 0.0, 0, 0.0, ""});
    } else {
      const double bound = global_bound(c.degree);
      r.target = bound;
      r.metrics.push_back({"global_bound", bound, 0.0, 0, 0.0,
                           total + 3.0 * e.stderr_ <= bound ? "" : "exceeds_bound"});
    }
  } else if (c.command == "p-point") {
    const LogPoint t = log_of({c.torus_x, c.torus_y});
    const AmoebaMeasureEstimate e = estimate_p(t, c.degree, c.samples, sweep, rng, threads);
    const double dominating = std::min(1.0, c.degree * area_density(t) / (4.0 * kPi));
    r.estimate = e.value;
    r.stderr_ = e.stderr_;
    r.target = dominating;
    r.metrics.push_back({"p_hat", e.value, e.stderr_, e.n_samples, 0.0, flagged(e.n_flagged)});
    r.metrics.push_back({"p_wilson_lo", e.ci_lo, 0.0, e.n_samples, 0.0, ""});
    r.metrics.push_back({"p_wilson_hi", e.ci_hi, 0.0, e.n_samples, 0.0, ""});
    r.metrics.push_back({"density_bound", dominating, 0.0, 0, 0.0,
                         e.value <= dominating + 3.0 * e.stderr_ ? "" : "exceeds_bound"});
    if (!c.emit_grid_path.empty()) emit_p_grid(c, window, sweep, threads);
  } else if (c.command == "crofton") {
    const CroftonReport rep =
        crofton_check(c.degree, {c.torus_x, c.torus_y}, c.samples, sweep, rng, threads);
    r.estimate = rep.empirical_mean;
    r.stderr_ = rep.stderr_;
    r.target = rep.predicted;
    r.z_score = rep.z_score;
    r.metrics.push_back({"mean_intersections", rep.empirical_mean, rep.stderr_, rep.n_samples, 0.0,
                         flagged(rep.n_flagged)});
    r.metrics.push_back({"predicted_density", rep.predicted, 0.0, 0, 0.0,
                         rep.holds_3sigma ? "" : "outside_3_sigma"});
  } else if (c.command == "bounds") {
    if (c.degree >= 2) {
      const BoundReport b = make_bound_report(c.degree);
      r.estimate = b.expupper_value;
      r.metrics.push_back({"rho0_sq_lo", b.rho0_sq_lo, 0, 0, 0, ""});
      r.metrics.push_back({"rho0_sq_hi", b.rho0_sq_hi, 0, 0, 0, ""});
      r.metrics.push_back({"rho1_sq_lo", b.rho1_sq_lo, 0, 0, 0, ""});
      r.metrics.push_back({"rho1_sq_hi", b.rho1_sq_hi, 0, 0, 0, ""});
      r.metrics.push_back({"density_integral", b.integral_value, 0, 0, 0, ""});
      r.metrics.push_back({"expupper", b.expupper_value, 0, 0, 0, ""});
      r.metrics.push_back({"expupper_sharp", expupper_bound_sharp(c.degree), 0, 0, 0, ""});
      r.metrics.push_back({"formula_all_degrees", b.mainbound_value, 0, 0, 0, ""});
      r.metrics.push_back({"formula_d_ge_6", b.upperboundall_value, 0, 0, 0,
                           c.degree >= 6 ? "" : "valid_for_d>=6"});
      r.metrics.push_back({"multiarea_half", b.multiarea_half, 0, 0, 0, ""});
      const auto [res0, res1] = lnrho_asymptotics(c.degree);
      r.metrics.push_back({"lnrho0_residual", res0, 0, 0, 0, ""});
      r.metrics.push_back({"lnrho1_residual", res1, 0, 0, 0, ""});
    }
    r.metrics.push_back({"global_bound", global_bound(c.degree), 0, 0, 0, ""});
  } else if (c.command == "charts") {
    // Coordinate-point centers satisfy the spacing requirement (pairwise pi/2)
    // whenever the required spacing fits in CP^2 at all; otherwise one chart.
    std::vector<MarkedChart> charts;
    const double required = std::sqrt(20.0 * std::log(static_cast<double>(std::max(c.degree, 2))) /
                                      c.degree);
    Eigen::Matrix3cd perm = Eigen::Matrix3cd::Identity();
    charts.push_back(MarkedChart::make(c.degree, c.kappa, perm));
    if (required <= kPi / 2) {
      Eigen::Matrix3cd cycle = Eigen::Matrix3cd::Zero();
      cycle(1, 0) = cycle(2, 1) = cycle(0, 2) = 1.0;
      charts.push_back(MarkedChart::make(c.degree, c.kappa, cycle));
      charts.push_back(MarkedChart::make(c.degree, c.kappa, cycle * cycle));
    }
    const ChartExperimentReport rep = chart_probability_experiment(
        c.degree, c.kappa, charts, c.samples, rng, std::max(c.grid, 64), threads);
    r.estimate = rep.probability.mean;
    r.stderr_ = rep.probability.stderr_;
    r.metrics.push_back({"chart_probability", rep.probability.mean, rep.probability.stderr_,
                         rep.n_samples - rep.n_indeterminate, 0.0,
                         rep.n_indeterminate > 0
                             ? "indeterminate_excluded=" + std::to_string(rep.n_indeterminate)
                             : ""});
    r.metrics.push_back({"wilson_lo", rep.probability.ci_lo, 0, 0, 0, ""});
    r.metrics.push_back({"wilson_hi", rep.probability.ci_hi, 0, 0, 0, ""});
    r.metrics.push_back({"exponential_lower_bound", rep.bound.lower_bound, 0, 0, 0,
                         rep.bound.vacuous ? "vacuous_bound" : ""});
    r.metrics.push_back({"ln_one_minus_gamma", rep.bound.ln_one_minus_gamma, 0, 0, 0, ""});
    r.metrics.push_back({"n_charts", static_cast<double>(charts.size()), 0, 0, 0, ""});
  } else if (c.command == "validate") {
    const auto checks = run_selfcheck(c.seed);
    std::int64_t failures = 0;
    for (const CheckResult& chk : checks) {
      if (!chk.pass) ++failures;
      r.metrics.push_back({chk.name, chk.pass ? 1.0 : 0.0, 0, 0, 0, chk.pass ? "" : "FAIL"});
    }
    r.estimate = static_cast<double>(failures);
  } else {
    throw std::invalid_argument("unknown command: " + c.command);
  }
  return r;
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& cfg) {
  RunOutcome out;
  const auto start = std::chrono::steady_clock::now();
  int threads = 0;
  try {
    validate_config(cfg);
    threads = resolve_config_threads(cfg.threads);
    out.report = build_report(cfg, threads);
  } catch (const std::invalid_argument& e) {
    out.exit_code = kExitUsage;
    out.error = e.what();
    return out;
  } catch (const std::domain_error& e) {
    out.exit_code = kExitHypothesisViolated;
    out.error = e.what();
    return out;
  } catch (const std::ios_base::failure& e) {
    out.exit_code = kExitIoError;
    out.error = e.what();
    return out;
  }
  out.report.timestamp_iso = current_timestamp_iso();
  out.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (cfg.command == "validate" && out.report.estimate.value_or(0.0) > 0.0)
    out.exit_code = kExitHypothesisViolated;
  if (!cfg.out_path.empty()) {
    try {
      write_report(out.report, cfg.out_path, cfg.format);
    } catch (const std::ios_base::failure& e) {
      out.exit_code = kExitIoError;
      out.error = e.what();
    }
  }
  return out;
}

}  // namespace amoeba
