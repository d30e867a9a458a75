#pragma once

#include <utility>

namespace amoeba {

// Radii where the rescaled torus-area level rho^2 (1+rho^2)^{-3/2} = 2/(pi d)
// is crossed; exactly two positive solutions 0 < rho0 < sqrt(2) < rho1 once
// 2/(pi d) < 2/(3 sqrt 3), i.e. d >= 2.
struct RhoPair {
  double rho0;
  double rho1;
};
RhoPair solve_rho(int d);

double level_residual(int d, double rho);  // |rho^2 (1+rho^2)^{-3/2} - 2/(pi d)|

struct RhoBrackets {
  double rho0_sq_lo, rho0_sq_hi;
  double rho1_sq_lo, rho1_sq_hi;
};
// Nested-interval iteration from (beta, gamma, alpha) = (0, 2, 2); the
// rho1 upper end is the one-shot quadratic root and does not move.
RhoBrackets iterate_brackets(int d, int steps);

// Closed-form built-in brackets: 2/(pi d - 3) <= rho0^2 <= 4/((pi d - 3) +
// sqrt((pi d - 3)^2 - 6)) and rho1 <= (pi d/2)(1 - 6/((pi d)^2 - 6)).
struct ClosedFormBrackets {
  double rho0_sq_lo;
  double rho0_sq_hi;
  double rho1_hi;
};
ClosedFormBrackets closed_form_brackets(int d);

// Half-angle solving sin(2 theta) = 2 (1+rho^2)^{3/2} / (d pi rho^2), branch
// in (0, pi/4]; defined for rho between the two level radii.
double theta_rho(int d, double rho);

// integral over R^2 of min(1, d a(t) / (4 pi)), split over the exact tail
// region, the sliver below theta_rho, and the plateau.
double truncated_density_integral(int d);

// Closed-form upper bound for the same integral, evaluated term-by-term at
// the worst ends of the radius brackets (outward-rounded to the published
// table precision for d <= 6). Reproduces the quoted 24.298 (d=5) and
// 26.813 (d=6); slightly above the sharp value by construction.
double expupper_bound(int d);

// Same expression at the solved radii themselves.
double expupper_bound_sharp(int d);

double mainbound_value(int d);       // 3/2 ln(d)^2 + 9 ln(d) + 9
double upperboundall_value(int d);   // 3/2 ln(d)^2 + 8.3752 ln(d) + 8.5607 (valid d >= 6)
double multiarea_half(int d);        // pi^2 d / 2

// min of the applicable closed-form bounds on the expected amoeba area.
double global_bound(int d);

// Residuals (ln rho0 + ln(d)/2 + ln(pi/2)/2, ln rho1 - ln d - ln(pi/2)),
// both O(1/d).
std::pair<double, double> lnrho_asymptotics(int d);

struct BoundReport {
  int d = 0;
  double rho0_sq_lo = 0, rho0_sq_hi = 0;
  double rho1_sq_lo = 0, rho1_sq_hi = 0;
  double integral_value = 0;
  double expupper_value = 0;
  double upperboundall_value = 0;
  double mainbound_value = 0;
  double multiarea_half = 0;
};
BoundReport make_bound_report(int d);

}  // namespace amoeba
