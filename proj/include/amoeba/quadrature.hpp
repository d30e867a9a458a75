#pragma once

#include <cmath>
#include <cstddef>

namespace amoeba {

// Adaptive Gauss-Kronrod 7-15 on [a, b]. Splits the worst interval until the
// summed Kronrod-Gauss discrepancy meets the tolerance; recursion is depth-
// bounded so a kinked integrand degrades accuracy instead of hanging.
template <typename Real, typename F>
Real adaptive_gk15(F&& f, Real a, Real b, Real rel_tol, Real abs_tol = Real(0), int max_depth = 48) {
  static const Real xgk[8] = {
      Real(0.991455371120812639206854697526329L), Real(0.949107912342758524526189684047851L),
      Real(0.864864423359769072789712788640926L), Real(0.741531185599394439863864773280788L),
      Real(0.586087235467691130294144838258730L), Real(0.405845151377397166906606412076961L),
      Real(0.207784955007898467600689403773245L), Real(0.0L)};
  static const Real wgk[8] = {
      Real(0.022935322010529224963732008058970L), Real(0.063092092629978553290700663189204L),
      Real(0.104790010322250183839876322541518L), Real(0.140653259715525918745189590510238L),
      Real(0.169004726639267902826583426598550L), Real(0.190350578064785409913256402421014L),
      Real(0.204432940075298892414161999234649L), Real(0.209482141084727828012999174891714L)};
  static const Real wg[4] = {
      Real(0.129484966168869693270611432679082L), Real(0.279705391489276667901467771423780L),
      Real(0.381830050505118944950369775488975L), Real(0.417959183673469387755102040816327L)};

  struct Panel {
    Real kronrod;
    Real err;
  };
  auto eval_panel = [&](Real lo, Real hi) -> Panel {
    const Real c = (lo + hi) / 2, h = (hi - lo) / 2;
    Real resk = wgk[7] * f(c);
    Real resg = wg[3] * f(c);
    for (int j = 0; j < 7; ++j) {
      const Real fa = f(c - h * xgk[j]);
      const Real fb = f(c + h * xgk[j]);
      resk += wgk[j] * (fa + fb);
      if (j % 2 == 1) resg += wg[j / 2] * (fa + fb);
    }
    return {resk * h, std::abs((resk - resg) * h)};
  };

  // Simple recursive bisection; tolerance split evenly between halves.
  auto integrate = [&](auto&& self, Real lo, Real hi, Real tol, int depth) -> Real {
    const Panel p = eval_panel(lo, hi);
    if (depth >= max_depth || p.err <= tol || p.err <= abs_tol / 2) return p.kronrod;
    const Real mid = (lo + hi) / 2;
    return self(self, lo, mid, tol / 2, depth + 1) + self(self, mid, hi, tol / 2, depth + 1);
  };

  const Panel whole = eval_panel(a, b);
  const Real tol = std::max(abs_tol, rel_tol * std::abs(whole.kronrod));
  if (whole.err <= tol) return whole.kronrod;
  return integrate(integrate, a, b, tol, 0);
}

}  // namespace amoeba
