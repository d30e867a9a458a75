#pragma once

#include <Eigen/Dense>
#include <complex>

#include "amoeba/multi_index.hpp"

namespace amoeba {

using Complex = std::complex<double>;

// Homogeneous polynomial of degree d in (Z, X, Y), dense coefficients in the
// monomial basis Z^i0 X^i1 Y^i2 ordered lexicographically by (i1, i2).
// Immutable-by-convention value type; cheap to copy for the degrees used here.
struct HomogeneousPoly {
  int degree = 0;
  Eigen::VectorXcd coeffs;

  static HomogeneousPoly zero(int d) {
    HomogeneousPoly p;
    p.degree = d;
    p.coeffs = Eigen::VectorXcd::Zero(poly_space_dim(d));
    return p;
  }

  Complex coeff(const MultiIndex& mi) const {
    check_index(mi);
    return coeffs[coeff_index(degree, mi.i1, mi.i2)];
  }

  void set_coeff(const MultiIndex& mi, Complex value) {
    check_index(mi);
    coeffs[coeff_index(degree, mi.i1, mi.i2)] = value;
  }

  // P(1, z1, z2), plain accumulation; callers needing large-degree stability
  // go through fs_point_norm_sq or the scaled torus evaluators instead.
  Complex eval_affine(Complex z1, Complex z2) const;

  // Coefficients (ascending in z2) of the univariate slice q(z2) = P(1, z1, z2).
  Eigen::VectorXcd slice_in_z2(Complex z1) const;

 private:
  void check_index(const MultiIndex& mi) const {
    if (mi.degree() != degree || mi.i0 < 0 || mi.i1 < 0 || mi.i2 < 0)
      throw std::invalid_argument("HomogeneousPoly: multi-index does not match degree");
  }
};

// P(U * (Z,X,Y)^T) expanded back onto the monomial basis. U unitary keeps the
// Fubini-Study norm of the coefficient vector invariant.
HomogeneousPoly compose_with_matrix(const HomogeneousPoly& p, const Eigen::Matrix3cd& u);

// Exact Fubini-Study L2 pairing in coefficient space.
Complex fs_inner_product(const HomogeneousPoly& p, const HomogeneousPoly& q);
double fs_norm_sq(const HomogeneousPoly& p);

}  // namespace amoeba
