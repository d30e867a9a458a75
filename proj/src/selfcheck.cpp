#include "amoeba/selfcheck.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <sstream>

#include "amoeba/amoeba_engine.hpp"
#include "amoeba/bergman.hpp"
#include "amoeba/bounds.hpp"
#include "amoeba/charts.hpp"
#include "amoeba/fs_geometry.hpp"
#include "amoeba/kostlan.hpp"
#include "amoeba/rng.hpp"

namespace amoeba {

namespace {

constexpr double kPi = std::numbers::pi;

struct Suite {
  std::vector<CheckResult> results;
  void check(const std::string& name, bool pass, const std::string& detail = "") {
    results.push_back({name, pass, detail});
  }
};

Eigen::MatrixXcd random_hermitian_pd(int n, RngStream& rng) {
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.next_complex_gaussian();
  return a * a.adjoint() + 0.05 * Eigen::MatrixXcd::Identity(n, n);
}

}  // namespace

std::vector<CheckResult> run_selfcheck(std::uint64_t seed) {
  Suite s;
  RngStream root(seed, 0xA11CE);

  // Level-set radii reproduce the printed nested intervals.
  {
    const double lo0[] = {0.714, 0.322, 0.212, 0.158, 0.1269};
    const double hi0[] = {0.715, 0.323, 0.213, 0.159, 0.1270};
    const double lo1[] = {6.374, 19.046, 36.395, 58.633, 85.7913};
    const double hi1[] = {6.401, 19.050, 36.396, 58.634, 85.7915};
    bool ok = true;
    std::ostringstream detail;
    for (int d = 2; d <= 6; ++d) {
      const RhoPair rp = solve_rho(d);
      const double u0 = rp.rho0 * rp.rho0, u1 = rp.rho1 * rp.rho1;
      const bool inside = u0 >= lo0[d - 2] && u0 <= hi0[d - 2] && u1 >= lo1[d - 2] && u1 <= hi1[d - 2];
      const bool residual_ok = level_residual(d, rp.rho0) < 1e-12 && level_residual(d, rp.rho1) < 1e-12;
      if (!inside || !residual_ok) ok = false;
      detail << "d=" << d << " rho0^2=" << u0 << " rho1^2=" << u1 << "; ";
    }
    s.check("radius tables d=2..6", ok, detail.str());
  }

  // Bracket iteration nests and contains the solved radii.
  {
    bool ok = true;
    for (int d = 2; d <= 8; ++d) {
      RhoBrackets prev = iterate_brackets(d, 1);
      const RhoPair rp = solve_rho(d);
      for (int steps = 2; steps <= 12; ++steps) {
        const RhoBrackets cur = iterate_brackets(d, steps);
        ok = ok && cur.rho0_sq_lo >= prev.rho0_sq_lo - 1e-15 && cur.rho0_sq_hi <= prev.rho0_sq_hi + 1e-15;
        ok = ok && cur.rho1_sq_lo >= prev.rho1_sq_lo - 1e-12;
        prev = cur;
      }
      const double u0 = rp.rho0 * rp.rho0, u1 = rp.rho1 * rp.rho1;
      ok = ok && prev.rho0_sq_lo <= u0 * (1 + 1e-12) && u0 <= prev.rho0_sq_hi * (1 + 1e-12);
      ok = ok && prev.rho1_sq_lo <= u1 * (1 + 1e-12) && u1 <= prev.rho1_sq_hi * (1 + 1e-12);
      const ClosedFormBrackets cf = closed_form_brackets(d);
      ok = ok && cf.rho0_sq_lo <= rp.rho0 * rp.rho0 && rp.rho0 * rp.rho0 <= cf.rho0_sq_hi;
      ok = ok && rp.rho1 <= cf.rho1_hi;
    }
    s.check("bracket nesting and containment", ok);
  }

  // Degree-wise closed-form bounds.
  {
    const double e5 = expupper_bound(5);
    const double b6 = upperboundall_value(6);
    bool ok = std::abs(e5 - 24.298) < 1e-3;
    ok = ok && b6 <= 28.3827 && std::abs(b6 - 28.3827) < 1e-3;
    for (int d = 1; d <= 5; ++d) ok = ok && global_bound(d) == multiarea_half(d);
    ok = ok && global_bound(10) < multiarea_half(10);
    std::ostringstream detail;
    detail << "expupper(5)=" << e5 << " b5(6)=" << b6;
    s.check("closed-form degree bounds", ok, detail.str());
  }

  // Density integral dominated by each closed-form bound.
  {
    bool ok = true;
    for (int d : {2, 3, 5, 8, 13, 21, 34, 50}) {
      const double v = truncated_density_integral(d);
      ok = ok && v <= expupper_bound(d) + 1e-6 && v <= multiarea_half(d) + 1e-6;
    }
    s.check("density integral below closed-form bounds", ok);
  }

  // theta at the level radii is pi/4 and minimal at sqrt(2).
  {
    bool ok = true;
    for (int d : {2, 5, 17}) {
      const RhoPair rp = solve_rho(d);
      ok = ok && std::abs(theta_rho(d, rp.rho0) - kPi / 4) < 1e-6;
      ok = ok && std::abs(theta_rho(d, rp.rho1) - kPi / 4) < 1e-6;
      const double mid = theta_rho(d, std::sqrt(2.0));
      ok = ok && mid <= theta_rho(d, 0.8 * std::sqrt(2.0)) && mid <= theta_rho(d, 1.3 * std::sqrt(2.0));
    }
    s.check("sliver angle at the level radii", ok);
  }

  // Torus packings: counts and pairwise separation.
  {
    bool ok = true;
    RngStream rng = root.derive(1);
    for (int trial = 0; trial < 100; ++trial) {
      const TorusRadii r{0.2 + 3.0 * rng.next_unit(), 0.2 + 3.0 * rng.next_unit()};
      const double delta = 2.0 * std::min(r.x, r.y) * (0.1 + 0.9 * rng.next_unit());
      const auto pts = pack_torus_points(r, delta);
      const auto expected = static_cast<std::size_t>(std::floor(4 * r.x / delta)) *
                            static_cast<std::size_t>(std::floor(4 * r.y / delta));
      ok = ok && pts.size() == expected;
      for (std::size_t i = 0; i < pts.size() && ok; ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
          const double dist = std::sqrt(std::norm(pts[i][0] - pts[j][0]) + std::norm(pts[i][1] - pts[j][1]));
          if (dist < delta * (1.0 - 1e-12)) {
            ok = false;
            break;
          }
        }
    }
    s.check("torus point packing", ok);
  }

  // Hermitian norm inequalities on randomized instances.
  {
    bool ok = true;
    RngStream rng = root.derive(2);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + static_cast<int>(rng.next_u64() % 5);
      const CovarianceMatrix c(random_hermitian_pd(n, rng));
      ok = ok && c.inf_norm() <= c.op_norm() * (1 + 1e-12);
      ok = ok && c.op_norm() <= n * c.inf_norm() * (1 + 1e-12);
      ok = ok && c.determinant() >= std::pow(c.inverse_op_norm(), -n) * (1 - 1e-9);
    }
    s.check("hermitian norm inequalities", ok);
  }

  // Toric shear has order three; p is defined through it.
  {
    bool ok = true;
    RngStream rng = root.derive(3);
    for (int trial = 0; trial < 1000; ++trial) {
      // power-of-two scaling keeps t1 - t2 exact, so the cube is the identity
      // bit-for-bit
      const LogPoint t{16.0 * rng.next_unit() - 8.0, 16.0 * rng.next_unit() - 8.0};
      const LogPoint im = toric_shear(toric_shear(toric_shear(t)));
      ok = ok && im.t1 == t.t1 && im.t2 == t.t2;
    }
    s.check("toric shear has order three", ok);
  }

  // Crossing parity on a random batch.
  {
    bool ok = true;
    RngStream rng = root.derive(4);
    SliceSweepConfig cfg;
    for (int trial = 0; trial < 50; ++trial) {
      RngStream stream = rng.derive(trial);
      const HomogeneousPoly p = sample_poly(3, stream);
      const LogPoint t{3.0 * stream.next_unit() - 1.5, 3.0 * stream.next_unit() - 1.5};
      const MembershipVerdict v = torus_intersection_count(p, t, cfg);
      ok = ok && v.crossing_count % 2 == 0;
      ok = ok && v.member == (v.crossing_count >= 2 || v.flagged_tangency);
    }
    s.check("even crossing counts", ok);
  }

  // Bergman kernel: Hermitian symmetry and the diagonal value.
  {
    bool ok = true;
    RngStream rng = root.derive(5);
    for (int trial = 0; trial < 50; ++trial) {
      const Point2 u{Complex(rng.next_unit(), rng.next_unit()), Complex(rng.next_unit(), rng.next_unit())};
      const Point2 v{Complex(rng.next_unit(), rng.next_unit()), Complex(rng.next_unit(), rng.next_unit())};
      const int d = 2 + static_cast<int>(rng.next_u64() % 6);
      const Complex kuv = bergman_kernel(u, v, d);
      const Complex kvu = bergman_kernel(v, u, d);
      ok = ok && std::abs(kuv - std::conj(kvu)) <= 1e-10 * std::abs(kuv);
      ok = ok && std::abs(bergman_kernel(u, u, d) - Complex(poly_space_dim(d))) < 1e-8;
      ok = ok && std::abs(kuv) <= poly_space_dim(d) * std::pow(std::cos(fs_distance(u, v)), d) * (1 + 1e-9);
    }
    s.check("bergman kernel symmetry and diagonal", ok);
  }

  // Reference polynomials have unit norm.
  {
    bool ok = true;
    for (int d = 1; d <= 10; ++d) ok = ok && std::abs(fs_norm_sq(reference_poly(d)) - 1.0) < 1e-12;
    s.check("reference polynomial normalization", ok);
  }

  // The exponential chart bound is vacuous at double precision.
  {
    bool ok = true;
    for (double kappa : {0.25, 0.5, 1.0})
      for (long long n : {1LL, 100LL, 1LL << 40}) {
        const ChartProbabilityBound b = exponential_chart_bound(kappa, n);
        ok = ok && b.vacuous && b.ln_one_minus_gamma <= -55296.0;
      }
    s.check("exponential bound vacuity flag", ok);
  }

  // Replay determinism of the counter RNG.
  {
    RngStream a(seed, 42), b(seed, 42);
    bool ok = true;
    for (int i = 0; i < 1000; ++i) ok = ok && a.next_u64() == b.next_u64();
    RngStream c = a.derive(7), d2 = b.derive(7);
    for (int i = 0; i < 100; ++i) ok = ok && c.next_complex_gaussian() == d2.next_complex_gaussian();
    s.check("rng replay determinism", ok);
  }

  return s.results;
}

}  // namespace amoeba
