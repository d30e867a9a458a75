#include "amoeba/homogeneous_poly.hpp"

#include <vector>

#include "amoeba/kostlan.hpp"

namespace amoeba {

Complex HomogeneousPoly::eval_affine(Complex z1, Complex z2) const {
  const Eigen::VectorXcd b = slice_in_z2(z1);
  Complex acc = 0.0;
  for (int k = static_cast<int>(b.size()) - 1; k >= 0; --k) acc = acc * z2 + b[k];
  return acc;
}

Eigen::VectorXcd HomogeneousPoly::slice_in_z2(Complex z1) const {
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(degree + 1);
  // b[i2] = sum_{i1} c_{(i1,i2)} z1^{i1}
  std::vector<Complex> z1pow(degree + 1);
  z1pow[0] = 1.0;
  for (int k = 1; k <= degree; ++k) z1pow[k] = z1pow[k - 1] * z1;
  for (int i1 = 0; i1 <= degree; ++i1)
    for (int i2 = 0; i2 + i1 <= degree; ++i2)
      b[i2] += coeffs[coeff_index(degree, i1, i2)] * z1pow[i1];
  return b;
}

namespace {

struct LinearForm {
  Complex z, x, y;
};

// Multiply a homogeneous polynomial of degree k by a linear form.
Eigen::VectorXcd mul_linear(const Eigen::VectorXcd& a, int k, const LinearForm& l) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(poly_space_dim(k + 1));
  for (int i1 = 0; i1 <= k; ++i1) {
    for (int i2 = 0; i2 + i1 <= k; ++i2) {
      const Complex c = a[coeff_index(k, i1, i2)];
      if (c == Complex(0.0)) continue;
      out[coeff_index(k + 1, i1, i2)] += c * l.z;
      out[coeff_index(k + 1, i1 + 1, i2)] += c * l.x;
      out[coeff_index(k + 1, i1, i2 + 1)] += c * l.y;
    }
  }
  return out;
}

}  // namespace

HomogeneousPoly compose_with_matrix(const HomogeneousPoly& p, const Eigen::Matrix3cd& u) {
  const int d = p.degree;
  const LinearForm lz{u(0, 0), u(0, 1), u(0, 2)};
  const LinearForm lx{u(1, 0), u(1, 1), u(1, 2)};
  const LinearForm ly{u(2, 0), u(2, 1), u(2, 2)};

  std::vector<Eigen::VectorXcd> zpow(d + 1);
  zpow[0] = Eigen::VectorXcd::Ones(1);
  for (int a = 1; a <= d; ++a) zpow[a] = mul_linear(zpow[a - 1], a - 1, lz);

  // Nested homogeneous Horner, O(d^2 N_d):
  //   P(U.) = sum_{i2} LY^{i2} S_{i2},  S_{i2} = sum_{i1} c_{(i1,i2)} LZ^{d-i2-i1} LX^{i1}.
  auto slice_poly = [&](int i2) {
    const int m = d - i2;
    Eigen::VectorXcd h(1);
    h[0] = p.coeffs[coeff_index(d, m, i2)];
    for (int k = m - 1; k >= 0; --k) {
      h = mul_linear(h, m - 1 - k, lx);
      h += p.coeffs[coeff_index(d, k, i2)] * zpow[m - k];
    }
    return h;
  };

  Eigen::VectorXcd g = slice_poly(d);
  for (int i2 = d - 1; i2 >= 0; --i2) {
    g = mul_linear(g, d - i2 - 1, ly);
    g += slice_poly(i2);
  }

  HomogeneousPoly out;
  out.degree = d;
  out.coeffs = std::move(g);
  return out;
}

Complex fs_inner_product(const HomogeneousPoly& p, const HomogeneousPoly& q) {
  if (p.degree != q.degree) throw std::invalid_argument("fs_inner_product: degree mismatch");
  Complex acc = 0.0;
  for (int idx = 0; idx < p.coeffs.size(); ++idx) {
    const MultiIndex mi = index_to_multi(p.degree, idx);
    acc += p.coeffs[idx] * std::conj(q.coeffs[idx]) * monomial_fs_norm_sq(mi, p.degree);
  }
  return acc;
}

double fs_norm_sq(const HomogeneousPoly& p) { return fs_inner_product(p, p).real(); }

}  // namespace amoeba
