#include "amoeba/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace amoeba {

namespace {

using Cx = std::complex<double>;

// Horner value and derivative.
std::pair<Cx, Cx> eval_with_deriv(const Eigen::VectorXcd& a, Cx z) {
  Cx p = a[a.size() - 1], dp = 0.0;
  for (int k = static_cast<int>(a.size()) - 2; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z + a[k];
  }
  return {p, dp};
}

void polish(const Eigen::VectorXcd& a, std::vector<Cx>& roots) {
  for (Cx& z : roots) {
    for (int it = 0; it < 3; ++it) {
      const auto [p, dp] = eval_with_deriv(a, z);
      if (std::abs(dp) < 1e-300) break;
      const Cx step = p / dp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      if (std::abs(step) > 0.5 * (1.0 + std::abs(z))) break;  // likely a multiple root
      z -= step;
      if (std::abs(step) < 1e-14 * (1.0 + std::abs(z))) break;
    }
  }
}

}  // namespace

std::vector<Cx> companion_roots(const Eigen::VectorXcd& a) {
  const int n = static_cast<int>(a.size()) - 1;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -a[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(c, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw std::runtime_error("companion_roots: eigensolver failed");
  std::vector<Cx> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()[i];
  return roots;
}

std::vector<Cx> aberth_roots(const Eigen::VectorXcd& a) {
  const int n = static_cast<int>(a.size()) - 1;
  // Cauchy bound on root moduli, starting circle slightly inside it.
  double bound = 0.0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(a[k]));
  const double radius = 1.0 + bound;

  std::vector<Cx> z(n);
  for (int k = 0; k < n; ++k) {
    const double ang = 2.0 * std::numbers::pi * k / n + 0.7;  // offset breaks symmetry
    z[k] = 0.8 * radius * std::polar(1.0, ang);
  }

  for (int iter = 0; iter < 200; ++iter) {
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      const auto [p, dp] = eval_with_deriv(a, z[k]);
      if (p == Cx(0.0)) continue;
      Cx ratio;
      if (std::abs(dp) > 1e-300) {
        ratio = p / dp;
      } else {
        ratio = std::pow(p, 1.0 / n);  // escape a stationary point
      }
      Cx sum = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        const Cx diff = z[k] - z[j];
        if (std::abs(diff) < 1e-280) continue;
        sum += 1.0 / diff;
      }
      const Cx denom = 1.0 - ratio * sum;
      const Cx step = std::abs(denom) > 1e-280 ? ratio / denom : ratio;
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[k])));
    }
    if (worst < 1e-14) break;
  }
  return z;
}

RootSet poly_roots(const Eigen::VectorXcd& ascending, double rel_trim) {
  const int size = static_cast<int>(ascending.size());
  if (size == 0) throw std::invalid_argument("poly_roots: empty coefficient vector");
  double max_mag = 0.0;
  for (int k = 0; k < size; ++k) max_mag = std::max(max_mag, std::abs(ascending[k]));
  if (max_mag == 0.0) throw std::invalid_argument("poly_roots: zero polynomial");

  int deg = size - 1;
  while (deg > 0 && std::abs(ascending[deg]) <= rel_trim * max_mag) --deg;
  RootSet out;
  out.degree_drop = size - 1 - deg;
  if (deg == 0) return out;

  Eigen::VectorXcd monic = ascending.head(deg + 1) / ascending[deg];
  if (deg == 1) {
    out.roots = {-monic[0]};
    return out;
  }
  if (deg == 2) {
    // Stable quadratic: q = -(b + sign * sqrt(b^2 - 4c))/2 picks the larger root.
    const Cx b = monic[1], c = monic[0];
    const Cx s = std::sqrt(b * b - 4.0 * c);
    const Cx q = std::real(std::conj(b) * s) >= 0.0 ? -0.5 * (b + s) : -0.5 * (b - s);
    if (std::abs(q) > 0.0)
      out.roots = {q, c / q};
    else
      out.roots = {Cx(0.0), Cx(0.0)};
    return out;
  }
  out.roots = deg <= 8 ? companion_roots(monic) : aberth_roots(monic);
  polish(monic, out.roots);
  return out;
}

}  // namespace amoeba
