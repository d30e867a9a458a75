#include "amoeba/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "amoeba/quadrature.hpp"

namespace amoeba {

namespace {

// ln cancellations in the closed-form bound lose digits at large d, so all
// internals run in extended precision.
using Real = long double;
constexpr Real kPi = std::numbers::pi_v<Real>;

Real level(Real u) { return u / std::pow(Real(1) + u, Real(1.5)); }  // u = rho^2
Real level_deriv(Real u) { return (Real(1) - u / 2) / std::pow(Real(1) + u, Real(2.5)); }

// Stable 1 - (1+x)^{-1/2}.
Real one_minus_inv_sqrt1p(Real x) {
  const Real s = std::sqrt(Real(1) + x);
  return x / (s * (s + Real(1)));
}

void require_degree(int d) {
  if (d < 2) throw std::domain_error("level equation needs 2/(pi d) < 2/(3 sqrt 3), i.e. d >= 2");
}

// Bracketed Newton with bisection fallback on the monotone branch containing
// the initial bracket [lo, hi] with g(lo), g(hi) of opposite signs.
Real solve_level(int d, Real lo, Real hi, Real guess) {
  const Real target = Real(2) / (kPi * d);
  auto g = [&](Real u) { return level(u) - target; };
  Real glo = g(lo), ghi = g(hi);
  if (glo == 0) return lo;
  if (ghi == 0) return hi;
  if ((glo > 0) == (ghi > 0)) throw std::logic_error("solve_level: bracket does not straddle");

  Real u = std::clamp(guess, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const Real gu = g(u);
    if (std::abs(gu) < Real(1e-19) * target) break;
    if ((gu > 0) == (ghi > 0))
      hi = u;
    else
      lo = u;
    const Real du = level_deriv(u);
    Real next = du != 0 ? u - gu / du : u;
    if (!(next > lo) || !(next < hi)) next = (lo + hi) / 2;
    if (next == u) break;
    u = next;
  }
  return u;
}

}  // namespace

RhoPair solve_rho(int d) {
  require_degree(d);
  // rho0^2 ~ 2/(pi d), rho1^2 ~ (pi d / 2)^2.
  const Real c = Real(2) / (kPi * d);
  const Real u0 = solve_level(d, Real(1e-12), Real(2), c);
  Real hi = (kPi * d / 2) * (kPi * d / 2) * 2;
  const Real u1 = solve_level(d, Real(2), hi, (kPi * d / 2) * (kPi * d / 2));
  return {static_cast<double>(std::sqrt(u0)), static_cast<double>(std::sqrt(u1))};
}

double level_residual(int d, double rho) {
  require_degree(d);
  const Real u = Real(rho) * Real(rho);
  return static_cast<double>(std::abs(level(u) - Real(2) / (kPi * d)));
}

RhoBrackets iterate_brackets(int d, int steps) {
  require_degree(d);
  if (steps < 1) throw std::invalid_argument("iterate_brackets: steps must be >= 1");
  const Real pd = kPi * d;
  const Real big_d = pd * pd - 12;
  const Real m = (pd / 2) * (pd / 2) - 3;
  const Real rho1_hi = (m + std::sqrt(m * m - 12)) / 2;

  Real beta = 0, gamma = 2, alpha = 2;
  for (int k = 0; k < steps; ++k) {
    const Real nb = 2 * (3 + std::sqrt(9 + (1 + beta * beta * beta) * big_d)) / big_d;
    const Real ng = 2 * (3 + std::sqrt(9 + (1 + gamma * gamma * gamma) * big_d)) / big_d;
    const Real na = (m + std::sqrt(m * m - 12 - 4 / alpha)) / 2;
    beta = nb;
    gamma = ng;
    alpha = na;
  }
  return {static_cast<double>(beta), static_cast<double>(gamma), static_cast<double>(alpha),
          static_cast<double>(rho1_hi)};
}

ClosedFormBrackets closed_form_brackets(int d) {
  require_degree(d);
  const Real pd3 = kPi * d - 3;
  const Real pd = kPi * d;
  return {static_cast<double>(2 / pd3),
          static_cast<double>(4 / (pd3 + std::sqrt(pd3 * pd3 - 6))),
          static_cast<double>(pd / 2 * (1 - 6 / (pd * pd - 6)))};
}

double theta_rho(int d, double rho) {
  require_degree(d);
  const Real u = Real(rho) * Real(rho);
  const Real s = 2 * std::pow(1 + u, Real(1.5)) / (d * kPi * u);
  if (s > 1 + Real(1e-12)) throw std::domain_error("theta_rho: rho outside [rho0, rho1]");
  return static_cast<double>(std::asin(std::min(s, Real(1))) / 2);
}

namespace {

// Region decomposition mirrors the min(1, .) kink: exact tail + one smooth
// integrand for the sliver and the plateau, in the variable u = ln rho.
Real truncated_density_integral_impl(int d) {
  const RhoPair rp = solve_rho(d);
  const Real u0 = Real(rp.rho0) * Real(rp.rho0);
  const Real u1 = Real(rp.rho1) * Real(rp.rho1);

  const Real tail = kPi * kPi * d / 2 *
                    (one_minus_inv_sqrt1p(u0) + 1 / std::sqrt(1 + u1));

  auto integrand = [&](Real lnr) {
    const Real u = std::exp(2 * lnr);
    const Real s = std::min(Real(1), 2 * std::pow(1 + u, Real(1.5)) / (d * kPi * u));
    const Real c2 = std::sqrt(std::max(Real(0), 1 - s * s));
    // sliver: 2 asin(s)/s; plateau: 2 ln((1 + sqrt(1-s^2))/s)
    return 2 * std::asin(s) / s + 2 * std::log((1 + c2) / s);
  };
  const Real a = std::log(Real(rp.rho0));
  const Real b = std::log(Real(rp.rho1));
  const Real mid = std::log(std::sqrt(Real(2)));
  const Real middle = adaptive_gk15<Real>(integrand, a, mid, Real(1e-9), Real(1e-12)) +
                      adaptive_gk15<Real>(integrand, mid, b, Real(1e-9), Real(1e-12));
  return tail + middle;
}

}  // namespace

double truncated_density_integral(int d) {
  require_degree(d);
  return static_cast<double>(truncated_density_integral_impl(d));
}

namespace {

Real expupper_at(int d, Real u0, Real u1) {
  const Real ln0 = std::log(u0) / 2;
  const Real ln1 = std::log(u1) / 2;
  const Real ld = std::log(Real(d));
  return 2 * ld * (ln1 - ln0) - ln1 * ln1 - 2 * ln0 * ln0 +
         (2 * std::log(kPi) + kPi) * (ln1 - ln0) + 3 * std::log1p(u0) * ln0 +
         kPi * kPi * d / 2 * (one_minus_inv_sqrt1p(u0) + 1 / std::sqrt(1 + u1));
}

Real round_outward(Real v, Real scale, bool down) {
  return (down ? std::floor(v * scale) : std::ceil(v * scale)) / scale;
}

}  // namespace

double expupper_bound(int d) {
  require_degree(d);
  RhoBrackets br = iterate_brackets(d, 40);
  if (d <= 6) {
    const Real scale = d <= 5 ? Real(1000) : Real(10000);
    br.rho0_sq_lo = static_cast<double>(round_outward(Real(br.rho0_sq_lo), scale, true));
    br.rho0_sq_hi = static_cast<double>(round_outward(Real(br.rho0_sq_hi), scale, false));
    br.rho1_sq_lo = static_cast<double>(round_outward(Real(br.rho1_sq_lo), scale, true));
    br.rho1_sq_hi = static_cast<double>(round_outward(Real(br.rho1_sq_hi), scale, false));
  }
  // Maximize each term separately over the bracket box; every term is
  // monotone in (u0, u1) except the mixed log product, which is extremal at
  // the u0 ends.
  const Real lo0 = br.rho0_sq_lo, hi0 = br.rho0_sq_hi;
  const Real lo1 = br.rho1_sq_lo, hi1 = br.rho1_sq_hi;
  const Real ld = std::log(Real(d));
  const Real coeff = 2 * ld + 2 * std::log(kPi) + kPi;
  Real total = coeff * (std::log(hi1) - std::log(lo0)) / 2;  // ln(r1/r0) maximal
  total += -std::log(lo1) * std::log(lo1) / 4;               // -ln^2 r1 least negative
  total += -2 * std::log(hi0) * std::log(hi0) / 4;           // -2 ln^2 r0 least negative
  total += std::max(3 * std::log1p(lo0) * std::log(lo0) / 2,
                    3 * std::log1p(hi0) * std::log(hi0) / 2);
  total += kPi * kPi * d / 2 * (one_minus_inv_sqrt1p(hi0) + 1 / std::sqrt(1 + lo1));
  return static_cast<double>(total);
}

double expupper_bound_sharp(int d) {
  require_degree(d);
  const RhoPair rp = solve_rho(d);
  return static_cast<double>(
      expupper_at(d, Real(rp.rho0) * Real(rp.rho0), Real(rp.rho1) * Real(rp.rho1)));
}

double mainbound_value(int d) {
  if (d < 1) throw std::domain_error("mainbound_value: d >= 1");
  const Real ld = std::log(Real(d));
  return static_cast<double>(Real(1.5) * ld * ld + 9 * ld + 9);
}

double upperboundall_value(int d) {
  if (d < 1) throw std::domain_error("upperboundall_value: d >= 1");
  const Real ld = std::log(Real(d));
  return static_cast<double>(Real(1.5) * ld * ld + Real(8.3752L) * ld + Real(8.5607L));
}

double multiarea_half(int d) {
  if (d < 1) throw std::domain_error("multiarea_half: d >= 1");
  return static_cast<double>(kPi * kPi * d / 2);
}

double global_bound(int d) {
  double best = std::min(multiarea_half(d), mainbound_value(d));
  if (d >= 6) best = std::min(best, upperboundall_value(d));
  return best;
}

std::pair<double, double> lnrho_asymptotics(int d) {
  const RhoPair rp = solve_rho(d);
  const Real half_ln_pi2 = std::log(kPi / 2) / 2;
  const Real r0 = std::log(Real(rp.rho0)) + std::log(Real(d)) / 2 + half_ln_pi2;
  const Real r1 = std::log(Real(rp.rho1)) - std::log(Real(d)) - 2 * half_ln_pi2;
  return {static_cast<double>(r0), static_cast<double>(r1)};
}

BoundReport make_bound_report(int d) {
  require_degree(d);
  BoundReport r;
  r.d = d;
  const RhoBrackets br = iterate_brackets(d, 40);
  const RhoPair rp = solve_rho(d);
  r.rho0_sq_lo = std::min(br.rho0_sq_lo, rp.rho0 * rp.rho0);
  r.rho0_sq_hi = std::max(br.rho0_sq_hi, rp.rho0 * rp.rho0);
  r.rho1_sq_lo = std::min(br.rho1_sq_lo, rp.rho1 * rp.rho1);
  r.rho1_sq_hi = std::max(br.rho1_sq_hi, rp.rho1 * rp.rho1);
  r.integral_value = truncated_density_integral(d);
  r.expupper_value = expupper_bound(d);
  r.upperboundall_value = upperboundall_value(d);
  r.mainbound_value = mainbound_value(d);
  r.multiarea_half = multiarea_half(d);
  return r;
}

}  // namespace amoeba
