#include "amoeba/amoeba_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "amoeba/kostlan.hpp"
#include "amoeba/parallel.hpp"
#include "amoeba/roots.hpp"

namespace amoeba {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

void SliceSweepConfig::validate() const {
  if (n_theta_base < 16 || (n_theta_base & (n_theta_base - 1)) != 0)
    throw std::invalid_argument("SliceSweepConfig: n_theta_base must be a power of two >= 16");
  if (max_refinement_depth < 0 || max_refinement_depth > 24)
    throw std::invalid_argument("SliceSweepConfig: refinement depth out of range");
  if (!(circle_tolerance > 0.0) || circle_tolerance > 1e-3)
    throw std::invalid_argument("SliceSweepConfig: circle_tolerance must be in (0, 1e-3]");
}

SliceModuli slice_root_moduli(const HomogeneousPoly& p, double t1, double theta1) {
  const Complex z1 = std::exp(t1) * std::polar(1.0, theta1);
  const Eigen::VectorXcd b = p.slice_in_z2(z1);
  if (b.cwiseAbs().maxCoeff() < 1e-300)
    throw degenerate_input("slice_root_moduli: slice polynomial is identically zero");
  const RootSet rs = poly_roots(b);
  SliceModuli out;
  out.degree_drop = rs.degree_drop + (p.degree - static_cast<int>(b.size()) + 1);
  out.moduli.reserve(rs.roots.size());
  for (const auto& z : rs.roots) out.moduli.push_back(std::abs(z));
  return out;
}

namespace {

struct SliceEval {
  int n_below = 0;         // roots with modulus strictly below the level
  double min_rel = 1e99;   // min over roots of | |root|/L - 1 |
  double dip_margin = 1e99;  // min over roots of |m - L| / |dz/dtheta|
};

struct SweepContext {
  const HomogeneousPoly* poly;
  double t1;
  double level;  // e^{t2}
  double tol;
  int max_depth;
  int crossings = 0;      // per base interval while sweeping
  int net = 0;
  bool band_hit = false;   // some evaluation saw a root inside the guard band
  bool band_pair = false;  // two adjacent evaluations both inside the band
};

// Roots move along theta with dz/dtheta = -q_theta / q_z; the margin estimates
// how far the sweep can advance before a root could reach the level, which is
// what decides whether an interval may hide a dip across it.
SliceEval eval_slice(SweepContext& ctx, double theta) {
  const Complex z1 = std::exp(ctx.t1) * std::polar(1.0, theta);
  const Eigen::VectorXcd b = ctx.poly->slice_in_z2(z1);
  if (b.cwiseAbs().maxCoeff() < 1e-300)
    throw degenerate_input("torus sweep: slice polynomial is identically zero");

  // theta-derivative of the slice coefficients: b_k' = i sum_i1 i1 c_{(i1,k)} z1^{i1}
  const int d = ctx.poly->degree;
  Eigen::VectorXcd db = Eigen::VectorXcd::Zero(d + 1);
  {
    std::vector<Complex> z1pow(d + 1);
    z1pow[0] = 1.0;
    for (int k = 1; k <= d; ++k) z1pow[k] = z1pow[k - 1] * z1;
    for (int i1 = 1; i1 <= d; ++i1)
      for (int i2 = 0; i2 + i1 <= d; ++i2)
        db[i2] += Complex(0.0, static_cast<double>(i1)) *
                  ctx.poly->coeffs[coeff_index(d, i1, i2)] * z1pow[i1];
  }

  const RootSet rs = poly_roots(b);
  SliceEval e;
  for (const Complex& z : rs.roots) {
    const double m = std::abs(z);
    const double rel = m / ctx.level;
    if (rel < 1.0) ++e.n_below;
    e.min_rel = std::min(e.min_rel, std::abs(rel - 1.0));

    Complex qz = 0.0, qt = 0.0;  // dq/dz and dq/dtheta at the root
    for (int k = static_cast<int>(b.size()) - 1; k >= 1; --k) qz = qz * z + double(k) * b[k];
    for (int k = static_cast<int>(db.size()) - 1; k >= 0; --k) qt = qt * z + db[k];
    const double speed = std::abs(qz) > 1e-280 ? std::abs(qt / qz) : 1e99;
    e.dip_margin = std::min(e.dip_margin, std::abs(m - ctx.level) / std::max(speed, 1e-12));
  }
  if (e.min_rel < ctx.tol) ctx.band_hit = true;
  return e;
}

void refine(SweepContext& ctx, double a, const SliceEval& ea, double b, const SliceEval& eb,
            int depth) {
  const bool n_change = ea.n_below != eb.n_below;
  const bool dip_possible = std::min(ea.dip_margin, eb.dip_margin) < (b - a);
  if ((!n_change && !dip_possible) || depth >= ctx.max_depth) {
    ctx.crossings += std::abs(eb.n_below - ea.n_below);
    ctx.net += eb.n_below - ea.n_below;
    if (ea.min_rel < ctx.tol && eb.min_rel < ctx.tol) ctx.band_pair = true;
    return;
  }
  const double mid = 0.5 * (a + b);
  const SliceEval em = eval_slice(ctx, mid);
  refine(ctx, a, ea, mid, em, depth + 1);
  refine(ctx, mid, em, b, eb, depth + 1);
}

}  // namespace

namespace {

MembershipVerdict run_sweep(const HomogeneousPoly& p, const LogPoint& t,
                            const SliceSweepConfig& cfg, bool membership_only) {
  cfg.validate();
  SweepContext ctx;
  ctx.poly = &p;
  ctx.t1 = t.t1;
  ctx.level = std::exp(t.t2);
  ctx.tol = cfg.circle_tolerance;
  ctx.max_depth = cfg.max_refinement_depth;

  const int n = cfg.n_theta_base;
  std::vector<SliceEval> grid(n);
  {
    SweepContext probe = ctx;  // band hits during the base pass belong to their interval below
    for (int j = 0; j < n; ++j) grid[j] = eval_slice(probe, kTwoPi * j / n);
  }

  MembershipVerdict v;
  if (membership_only) {
    // Base-grid sign changes already lower-bound the crossing count.
    int base_crossings = 0;
    bool near_level = false;
    for (int j = 0; j < n; ++j) {
      base_crossings += std::abs(grid[(j + 1) % n].n_below - grid[j].n_below);
      near_level = near_level || grid[j].min_rel < ctx.tol;
    }
    if (base_crossings >= 2 && !near_level) {
      v.crossing_count = base_crossings;
      v.member = true;
      return v;
    }
  }

  // A tangency leaves a guard-band root in an interval that never changes the
  // inside count; a transversal crossing puts its own band hits next to a
  // counted jump, which must not raise the flag.
  int total_net = 0;
  for (int j = 0; j < n; ++j) {
    const int k = (j + 1) % n;
    ctx.crossings = 0;
    ctx.net = 0;
    ctx.band_hit = grid[j].min_rel < ctx.tol || grid[k].min_rel < ctx.tol;
    ctx.band_pair = false;
    refine(ctx, kTwoPi * j / n, grid[j], kTwoPi * (j + 1) / n, grid[k], 0);
    if ((ctx.band_hit && ctx.crossings == 0) || ctx.band_pair) v.flagged_tangency = true;
    v.crossing_count += ctx.crossings;
    total_net += ctx.net;
    if (membership_only && (v.crossing_count >= 2 || v.flagged_tangency)) {
      // short-circuit; the count is only a lower bound on this path
      v.member = v.crossing_count >= 2 || v.flagged_tangency;
      return v;
    }
  }
  // The sweep closes up, so inside-count increments telescope to zero and the
  // total variation is even.
  if (total_net != 0 || v.crossing_count % 2 != 0)
    throw std::logic_error("torus_intersection_count: sweep did not close");
  v.member = v.crossing_count >= 2 || v.flagged_tangency;
  return v;
}

}  // namespace

MembershipVerdict torus_intersection_count(const HomogeneousPoly& p, const LogPoint& t,
                                           const SliceSweepConfig& cfg) {
  return run_sweep(p, t, cfg, /*membership_only=*/false);
}

bool membership_oracle_dense(const HomogeneousPoly& p, const LogPoint& t, int grid_n) {
  if (grid_n < 256) throw std::invalid_argument("membership_oracle_dense: grid_n must be >= 256");
  const int d = p.degree;
  const double m = std::max({0.0, 2.0 * t.t1, 2.0 * t.t2});
  const double ln_den =
      0.5 * d *
      (m + std::log(std::exp(-m) + std::exp(2.0 * t.t1 - m) + std::exp(2.0 * t.t2 - m)));

  // Scaled coefficients: on the torus, ||P||_FS = |sum c~_i e^{i(i1 th1 + i2 th2)}|.
  HomogeneousPoly scaled = HomogeneousPoly::zero(d);
  double g1 = 0.0, g2 = 0.0;  // angular gradient bound pieces
  for (int idx = 0; idx < p.coeffs.size(); ++idx) {
    const MultiIndex mi = index_to_multi(d, idx);
    const Complex c = p.coeffs[idx] * std::exp(mi.i1 * t.t1 + mi.i2 * t.t2 - ln_den);
    scaled.coeffs[idx] = c;
    g1 += std::abs(c) * mi.i1;
    g2 += std::abs(c) * mi.i2;
  }
  const double lipschitz = std::sqrt(g1 * g1 + g2 * g2);

  std::vector<Complex> scratch(d + 1);
  auto value_at = [&](double th1, double th2) {
    std::fill(scratch.begin(), scratch.end(), Complex(0.0));
    const Complex e1 = std::polar(1.0, th1);
    Complex acc1 = 1.0;
    for (int i1 = 0; i1 <= d; ++i1) {
      for (int i2 = 0; i2 + i1 <= d; ++i2)
        scratch[i2] += scaled.coeffs[coeff_index(d, i1, i2)] * acc1;
      acc1 *= e1;
    }
    const Complex w = std::polar(1.0, th2);
    Complex s = scratch[d];
    for (int k = d - 1; k >= 0; --k) s = s * w + scratch[k];
    return std::abs(s);
  };

  // Multi-level zoom. A zero always has a grid neighbour within h/sqrt(2), so
  // points above lipschitz * h / sqrt(2) can be discarded and a zero can never
  // escape the kept 5x5 neighbourhoods at the next level. Declaration happens
  // at the finest level's threshold.
  constexpr int kZoomLevels = 6;
  const long finest_n = static_cast<long>(grid_n) << kZoomLevels;
  const double finest_threshold = lipschitz * (kTwoPi / finest_n) / std::sqrt(2.0);

  std::vector<std::uint64_t> candidates;
  {
    const double threshold = lipschitz * (kTwoPi / grid_n) / std::sqrt(2.0);
    std::vector<Complex> b(d + 1);
    for (int j1 = 0; j1 < grid_n; ++j1) {
      std::fill(b.begin(), b.end(), Complex(0.0));
      const Complex e1 = std::polar(1.0, kTwoPi * j1 / grid_n);
      Complex acc1 = 1.0;
      for (int i1 = 0; i1 <= d; ++i1) {
        for (int i2 = 0; i2 + i1 <= d; ++i2)
          b[i2] += scaled.coeffs[coeff_index(d, i1, i2)] * acc1;
        acc1 *= e1;
      }
      const Complex e2 = std::polar(1.0, kTwoPi / grid_n);
      Complex w = 1.0;
      for (int j2 = 0; j2 < grid_n; ++j2) {
        Complex s = b[d];
        for (int k = d - 1; k >= 0; --k) s = s * w + b[k];
        const double val = std::abs(s);
        if (val <= finest_threshold) return true;
        if (val <= threshold)
          candidates.push_back((static_cast<std::uint64_t>(j1) << 32) | static_cast<std::uint32_t>(j2));
        w *= e2;
      }
    }
  }

  for (int level = 1; level <= kZoomLevels; ++level) {
    if (candidates.empty()) return false;
    const long n = static_cast<long>(grid_n) << level;
    const double threshold = lipschitz * (kTwoPi / n) / std::sqrt(2.0);
    std::vector<std::uint64_t> next;
    next.reserve(candidates.size() * 4);
    for (const std::uint64_t key : candidates) {
      const long i = static_cast<long>(key >> 32) * 2;
      const long j = static_cast<long>(static_cast<std::uint32_t>(key)) * 2;
      for (long di = -2; di <= 2; ++di) {
        for (long dj = -2; dj <= 2; ++dj) {
          const long ii = ((i + di) % n + n) % n;
          const long jj = ((j + dj) % n + n) % n;
          const double val = value_at(kTwoPi * ii / n, kTwoPi * jj / n);
          if (val <= finest_threshold) return true;
          if (val <= threshold)
            next.push_back((static_cast<std::uint64_t>(ii) << 32) | static_cast<std::uint32_t>(jj));
        }
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    candidates = std::move(next);
  }
  return false;
}

namespace {

struct BatchAccum {
  std::int64_t count = 0, count_sq = 0, member = 0, effective = 0, flagged = 0;
};

constexpr std::int64_t kBlock = 256;

// One (P, t) draw; t fixed when window_T <= 0.
BatchAccum accumulate_block(int d, std::int64_t lo, std::int64_t hi, double window_T,
                            const LogPoint& fixed_t, const SliceSweepConfig& cfg,
                            const RngStream& base, bool membership_only) {
  BatchAccum acc;
  for (std::int64_t i = lo; i < hi; ++i) {
    RngStream stream = base.derive(static_cast<std::uint64_t>(i));
    LogPoint t = fixed_t;
    if (window_T > 0.0) {
      t.t1 = window_T * (2.0 * stream.next_unit() - 1.0);
      t.t2 = window_T * (2.0 * stream.next_unit() - 1.0);
    }
    const HomogeneousPoly p = sample_poly(d, stream);
    MembershipVerdict v;
    try {
      v = run_sweep(p, t, cfg, membership_only);
    } catch (const degenerate_input&) {
      ++acc.flagged;
      continue;
    }
    if (v.flagged_tangency) {
      ++acc.flagged;
      continue;
    }
    ++acc.effective;
    acc.count += v.crossing_count;
    acc.count_sq += static_cast<std::int64_t>(v.crossing_count) * v.crossing_count;
    acc.member += v.member ? 1 : 0;
  }
  return acc;
}

BatchAccum run_batch(int d, std::int64_t n_samples, double window_T, const LogPoint& fixed_t,
                     const SliceSweepConfig& cfg, const RngStream& rng, int threads,
                     bool membership_only = false) {
  cfg.validate();
  const std::int64_t n_blocks = (n_samples + kBlock - 1) / kBlock;
  std::vector<BatchAccum> partial(static_cast<std::size_t>(n_blocks));
  parallel_for_blocks(n_blocks, threads, [&](std::int64_t blk) {
    const std::int64_t lo = blk * kBlock;
    const std::int64_t hi = std::min(n_samples, lo + kBlock);
    partial[static_cast<std::size_t>(blk)] =
        accumulate_block(d, lo, hi, window_T, fixed_t, cfg, rng, membership_only);
  });
  BatchAccum total;
  for (const auto& a : partial) {
    total.count += a.count;
    total.count_sq += a.count_sq;
    total.member += a.member;
    total.effective += a.effective;
    total.flagged += a.flagged;
  }
  return total;
}

}  // namespace

WindowBatch run_window_batch(int d, std::int64_t n_samples, double window_T,
                             const SliceSweepConfig& cfg, const RngStream& rng, int threads) {
  if (!(window_T > 0.0)) throw std::invalid_argument("run_window_batch: window_T must be positive");
  const BatchAccum a = run_batch(d, n_samples, window_T, LogPoint{}, cfg, rng, threads);
  return {a.count, a.count_sq, a.member, a.effective, a.flagged};
}

AmoebaMeasureEstimate estimate_p(const LogPoint& t, int d, std::int64_t n_samples,
                                 const SliceSweepConfig& cfg, const RngStream& rng, int threads) {
  if (n_samples < 100) throw std::invalid_argument("estimate_p: n_samples must be >= 100");
  const BatchAccum a = run_batch(d, n_samples, 0.0, t, cfg, rng, threads, /*membership_only=*/true);
  const EstimatorResult w = wilson_estimate(a.member, a.effective);
  AmoebaMeasureEstimate e;
  e.kind = MeasureKind::PointwiseP;
  e.value = w.mean;
  e.stderr_ = w.stderr_;
  e.n_samples = a.effective;
  e.n_flagged = a.flagged;
  e.ci_lo = w.ci_lo;
  e.ci_hi = w.ci_hi;
  e.tail_bound = 0.0;
  return e;
}

namespace {

AmoebaMeasureEstimate window_estimate(MeasureKind kind, int d, std::int64_t n_samples,
                                      double window_T, const SliceSweepConfig& cfg,
                                      const RngStream& rng, int threads) {
  const WindowBatch b = run_window_batch(d, n_samples, window_T, cfg, rng, threads);
  const double box_area = 4.0 * window_T * window_T;
  const double n = static_cast<double>(std::max<std::int64_t>(b.n_effective, 1));
  const double outside_mass = std::max(0.0, area_density_total_integral() -
                                                area_density_box_integral(window_T));

  AmoebaMeasureEstimate e;
  e.kind = kind;
  e.n_samples = b.n_effective;
  e.n_flagged = b.n_flagged;
  if (kind == MeasureKind::Multiarea) {
    const double mean = static_cast<double>(b.sum_count) / n;
    const double var = static_cast<double>(b.sum_count_sq) / n - mean * mean;
    e.value = mean * box_area;
    e.stderr_ = box_area * std::sqrt(std::max(var, 0.0) / n);
    e.tail_bound = d / (2.0 * kPi) * outside_mass;
  } else {
    const EstimatorResult w = wilson_estimate(b.sum_member, b.n_effective);
    e.value = w.mean * box_area;
    e.stderr_ = box_area * w.stderr_;
    e.ci_lo = box_area * w.ci_lo;
    e.ci_hi = box_area * w.ci_hi;
    // One-sided: min(1, d a / 4 pi) <= d a / (4 pi) outside the window.
    e.tail_bound = d / (4.0 * kPi) * outside_mass;
  }
  return e;
}

}  // namespace

AmoebaMeasureEstimate estimate_multiarea(int d, std::int64_t n_samples, double window_T,
                                         const SliceSweepConfig& cfg, const RngStream& rng,
                                         int threads) {
  if (!(window_T > 0.0)) throw std::invalid_argument("estimate_multiarea: window_T must be positive");
  return window_estimate(MeasureKind::Multiarea, d, n_samples, window_T, cfg, rng, threads);
}

AmoebaMeasureEstimate estimate_area(int d, std::int64_t n_samples, double window_T,
                                    const SliceSweepConfig& cfg, const RngStream& rng,
                                    int threads) {
  if (!(window_T > 0.0)) throw std::invalid_argument("estimate_area: window_T must be positive");
  return window_estimate(MeasureKind::Area, d, n_samples, window_T, cfg, rng, threads);
}

CroftonReport crofton_check(int d, const TorusRadii& r, std::int64_t n_samples,
                            const SliceSweepConfig& cfg, const RngStream& rng, int threads) {
  const BatchAccum a = run_batch(d, n_samples, 0.0, log_of(r), cfg, rng, threads);
  CroftonReport rep;
  rep.n_samples = a.effective;
  rep.n_flagged = a.flagged;
  const double n = static_cast<double>(std::max<std::int64_t>(a.effective, 1));
  rep.empirical_mean = static_cast<double>(a.count) / n;
  const double var = static_cast<double>(a.count_sq) / n - rep.empirical_mean * rep.empirical_mean;
  rep.stderr_ = std::sqrt(std::max(var, 0.0) / n);
  rep.predicted = d / (2.0 * kPi) * torus_area(r);
  rep.z_score = rep.stderr_ > 0 ? (rep.empirical_mean - rep.predicted) / rep.stderr_ : 0.0;
  rep.holds_3sigma = std::abs(rep.empirical_mean - rep.predicted) <= 3.0 * rep.stderr_;
  return rep;
}

SymmetryReport toric_symmetry_check(int d, const LogPoint& t, std::int64_t n_samples,
                                    const SliceSweepConfig& cfg, const RngStream& rng,
                                    int threads) {
  SymmetryReport rep;
  rep.at_t = estimate_p(t, d, n_samples, cfg, rng.derive(0x5157), threads);
  rep.at_image = estimate_p(toric_shear(t), d, n_samples, cfg, rng.derive(0x5158), threads);
  rep.diff = std::abs(rep.at_t.value - rep.at_image.value);
  rep.combined_stderr = std::sqrt(rep.at_t.stderr_ * rep.at_t.stderr_ +
                                  rep.at_image.stderr_ * rep.at_image.stderr_);
  rep.holds_3sigma = rep.diff <= 3.0 * rep.combined_stderr;
  return rep;
}

}  // namespace amoeba
