#pragma once

#include <array>
#include <complex>
#include <vector>

namespace amoeba {

using Complex = std::complex<double>;
using Point2 = std::array<Complex, 2>;

struct TorusRadii {
  double x = 1.0;
  double y = 1.0;
};

struct LogPoint {
  double t1 = 0.0;
  double t2 = 0.0;
};

inline TorusRadii torus_of(const LogPoint& t) { return {std::exp(t.t1), std::exp(t.t2)}; }
inline LogPoint log_of(const TorusRadii& r) { return {std::log(r.x), std::log(r.y)}; }

// d_FS(0, z) = arctan ||z||
double fs_distance_from_origin(const Point2& z);

// Fubini-Study distance between two affine-chart points of CP^2.
double fs_distance(const Point2& u, const Point2& v);

// Vol(B_FS(0, delta)) = pi^n/n! sin^{2n}(delta) on CP^n; delta in [0, pi/2).
double fs_ball_volume(int n, double delta);

// Area of the Lagrangian torus |z1| = x, |z2| = y: 4 pi^2 x y / (1+x^2+y^2)^{3/2}.
double torus_area(const TorusRadii& r);

// a(t) = torus_area(e^{t1}, e^{t2})
double area_density(const LogPoint& t);

// FS volume density against Lebesgue on the affine chart of CP^2: (1+||z||^2)^{-3}.
double fs_volume_density(const Point2& z);

// ||h||^2_FS at z: ||h||^2/(1+||z||^2) - |<h,z>|^2/(1+||z||^2)^2.
double fs_tangent_norm_sq(const Point2& z, const Point2& h);

// floor(4x/delta) * floor(4y/delta) points on the torus with pairwise
// Euclidean distance >= delta, as a product of equiangular circle grids.
// Requires 0 < delta <= 2 min(x, y).
std::vector<Point2> pack_torus_points(const TorusRadii& r, double delta);

// integral of a(t) over the square [-T, T]^2 (quadrature; exact inner integral).
double area_density_box_integral(double T);

// integral of a(t) over all of R^2 = 2 pi^3.
double area_density_total_integral();

}  // namespace amoeba
