#include "amoeba/fs_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "amoeba/quadrature.hpp"

namespace amoeba {

namespace {
constexpr double kPi = std::numbers::pi;

double norm_sq(const Point2& z) { return std::norm(z[0]) + std::norm(z[1]); }
}  // namespace

double fs_distance_from_origin(const Point2& z) { return std::atan(std::sqrt(norm_sq(z))); }

double fs_distance(const Point2& u, const Point2& v) {
  // cos d_FS = |<(1,u), (1,v)>| / (||(1,u)|| ||(1,v)||)
  const Complex ip = 1.0 + u[0] * std::conj(v[0]) + u[1] * std::conj(v[1]);
  const double c = std::abs(ip) / std::sqrt((1.0 + norm_sq(u)) * (1.0 + norm_sq(v)));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double fs_ball_volume(int n, double delta) {
  if (n < 1) throw std::invalid_argument("fs_ball_volume: dimension must be >= 1");
  if (delta < 0.0 || delta >= kPi / 2) throw std::invalid_argument("fs_ball_volume: radius outside [0, pi/2)");
  double vol = std::pow(kPi, n);
  for (int k = 2; k <= n; ++k) vol /= k;
  return vol * std::pow(std::sin(delta), 2 * n);
}

double torus_area(const TorusRadii& r) {
  if (!(r.x > 0.0) || !(r.y > 0.0)) throw std::invalid_argument("torus_area: radii must be positive");
  const double s = 1.0 + r.x * r.x + r.y * r.y;
  return 4.0 * kPi * kPi * r.x * r.y / (s * std::sqrt(s));
}

double area_density(const LogPoint& t) { return torus_area(torus_of(t)); }

double fs_volume_density(const Point2& z) {
  const double s = 1.0 + norm_sq(z);
  return 1.0 / (s * s * s);
}

double fs_tangent_norm_sq(const Point2& z, const Point2& h) {
  const double s = 1.0 + norm_sq(z);
  const Complex hz = h[0] * std::conj(z[0]) + h[1] * std::conj(z[1]);
  return norm_sq(h) / s - std::norm(hz) / (s * s);
}

std::vector<Point2> pack_torus_points(const TorusRadii& r, double delta) {
  if (!(delta > 0.0) || delta > 2.0 * std::min(r.x, r.y))
    throw std::invalid_argument("pack_torus_points: need 0 < delta <= 2 min(x, y)");
  const int n1 = static_cast<int>(std::floor(4.0 * r.x / delta));
  const int n2 = static_cast<int>(std::floor(4.0 * r.y / delta));
  // Equiangular points on each circle: with m <= 4x/delta the chord
  // 2x sin(pi/m) >= delta because sin(t) >= 2t/pi on [0, pi/2].
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(n1) * n2);
  for (int i = 0; i < n1; ++i) {
    const double a1 = 2.0 * kPi * i / n1;
    for (int j = 0; j < n2; ++j) {
      const double a2 = 2.0 * kPi * j / n2;
      pts.push_back({r.x * std::polar(1.0, a1), r.y * std::polar(1.0, a2)});
    }
  }
  return pts;
}

double area_density_box_integral(double T) {
  if (!(T > 0.0)) throw std::invalid_argument("area_density_box_integral: T must be positive");
  // In torus radii, integral over [e^-T, e^T]^2 of 4 pi^2 dx dy / (1+x^2+y^2)^{3/2};
  // the inner y-integral is y / ((1+x^2) sqrt(1+x^2+y^2)) evaluated at the ends.
  const double lo = std::exp(-T), hi = std::exp(T);
  auto inner = [&](double x) {
    const double c = 1.0 + x * x;
    auto prim = [&](double y) { return y / (c * std::sqrt(c + y * y)); };
    return prim(hi) - prim(lo);
  };
  const double integral = adaptive_gk15<double>(inner, lo, hi, 1e-11, 1e-14);
  return 4.0 * kPi * kPi * integral;
}

double area_density_total_integral() { return 2.0 * kPi * kPi * kPi; }

}  // namespace amoeba
