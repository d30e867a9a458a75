#pragma once

#include <complex>
#include <span>

#include "amoeba/homogeneous_poly.hpp"
#include "amoeba/rng.hpp"

namespace amoeba {

// ||Z^i0 X^i1 Y^i2||^2_FS = i0! i1! i2! 2! / (d+2)!   (n = 2)
double monomial_fs_norm_sq(const MultiIndex& mi, int d);
double ln_monomial_fs_norm_sq(const MultiIndex& mi, int d);

// Same quantity on CP^n for a multi-index (i_0, ..., i_n): the reciprocal of
// the multinomial (d+n)! / (i_0! ... i_n! n!).
double monomial_fs_norm_sq_general(std::span<const int> mi);

// Gaussian draw for the Fubini-Study L2 Hermitian product: independent
// standard complex Gaussians in the orthonormal monomial basis, so
// E(||P||^2_FS) = dim of the space.
HomogeneousPoly sample_poly(int d, RngStream& rng);

// ||P(z)||^2_FS = |P(1, z1, z2)|^2 / (1 + |z1|^2 + |z2|^2)^d, accumulated with
// per-monomial log scaling so no intermediate quantity overflows.
double fs_point_norm_sq(const HomogeneousPoly& p, Complex z1, Complex z2);

// Point of CP^2 drawn from the normalized Fubini-Study volume, in affine
// coordinates of the chart Z != 0 (the complement has measure zero).
std::pair<Complex, Complex> fs_uniform_point(RngStream& rng);

}  // namespace amoeba
