#include "amoeba/kostlan.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace amoeba {

double ln_monomial_fs_norm_sq(const MultiIndex& mi, int d) {
  if (mi.degree() != d || mi.i0 < 0 || mi.i1 < 0 || mi.i2 < 0)
    throw std::invalid_argument("monomial_fs_norm_sq: multi-index degree mismatch");
  return std::lgamma(mi.i0 + 1.0) + std::lgamma(mi.i1 + 1.0) + std::lgamma(mi.i2 + 1.0) +
         std::lgamma(3.0) - std::lgamma(d + 3.0);
}

double monomial_fs_norm_sq(const MultiIndex& mi, int d) {
  return std::exp(ln_monomial_fs_norm_sq(mi, d));
}

double monomial_fs_norm_sq_general(std::span<const int> mi) {
  if (mi.size() < 2) throw std::invalid_argument("monomial_fs_norm_sq_general: need n >= 1");
  const int n = static_cast<int>(mi.size()) - 1;
  int d = 0;
  double ln = std::lgamma(n + 1.0);
  for (int e : mi) {
    if (e < 0) throw std::invalid_argument("monomial_fs_norm_sq_general: negative exponent");
    d += e;
    ln += std::lgamma(e + 1.0);
  }
  ln -= std::lgamma(d + n + 1.0);
  return std::exp(ln);
}

HomogeneousPoly sample_poly(int d, RngStream& rng) {
  if (d < 1) throw std::invalid_argument("sample_poly: degree must be >= 1");
  HomogeneousPoly p = HomogeneousPoly::zero(d);
  const int n = poly_space_dim(d);
  for (int idx = 0; idx < n; ++idx) {
    const MultiIndex mi = index_to_multi(d, idx);
    const double scale = std::exp(-0.5 * ln_monomial_fs_norm_sq(mi, d));
    p.coeffs[idx] = scale * rng.next_complex_gaussian();
  }
  return p;
}

double fs_point_norm_sq(const HomogeneousPoly& p, Complex z1, Complex z2) {
  const int d = p.degree;
  const double a1 = std::abs(z1), a2 = std::abs(z2);
  const double ln_den = std::log1p(a1 * a1 + a2 * a2);  // ln(1+||z||^2)
  const double l1 = a1 > 0 ? std::log(a1) : 0.0;
  const double l2 = a2 > 0 ? std::log(a2) : 0.0;
  const double ph1 = std::arg(z1), ph2 = std::arg(z2);

  // Each scaled monomial has log-magnitude <= 0, so the sum cannot overflow.
  Complex sum = 0.0;
  for (int idx = 0; idx < p.coeffs.size(); ++idx) {
    const Complex c = p.coeffs[idx];
    if (c == Complex(0.0)) continue;
    const MultiIndex mi = index_to_multi(d, idx);
    if ((mi.i1 > 0 && a1 == 0.0) || (mi.i2 > 0 && a2 == 0.0)) continue;
    const double ln_mag = mi.i1 * l1 + mi.i2 * l2 - 0.5 * d * ln_den;
    const double phase = mi.i1 * ph1 + mi.i2 * ph2;
    sum += c * std::polar(std::exp(ln_mag), phase);
  }
  return std::norm(sum);
}

std::pair<Complex, Complex> fs_uniform_point(RngStream& rng) {
  // [g0 : g1 : g2] with iid complex Gaussians is Fubini-Study uniform on CP^2.
  Complex g0 = rng.next_complex_gaussian();
  const Complex g1 = rng.next_complex_gaussian();
  const Complex g2 = rng.next_complex_gaussian();
  while (std::abs(g0) < 1e-300) g0 = rng.next_complex_gaussian();
  return {g1 / g0, g2 / g0};
}

}  // namespace amoeba
