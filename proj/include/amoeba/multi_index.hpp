#pragma once

#include <stdexcept>

namespace amoeba {

// Exponents of Z^i0 X^i1 Y^i2; i0 + i1 + i2 equals the owning degree.
struct MultiIndex {
  int i0 = 0;
  int i1 = 0;
  int i2 = 0;

  int degree() const { return i0 + i1 + i2; }
  bool operator==(const MultiIndex&) const = default;
};

// dim H^0(CP^2, O(d)) = (d+1)(d+2)/2
inline int poly_space_dim(int d) {
  if (d < 0) throw std::invalid_argument("poly_space_dim: negative degree");
  return (d + 1) * (d + 2) / 2;
}

// Dense storage is ordered lexicographically by (i1, i2); i0 = d - i1 - i2.
inline int coeff_index(int d, int i1, int i2) {
  if (i1 < 0 || i2 < 0 || i1 + i2 > d) throw std::invalid_argument("coeff_index: out of range");
  return i1 * (d + 1) - i1 * (i1 - 1) / 2 + i2;
}

inline MultiIndex index_to_multi(int d, int idx) {
  for (int i1 = 0; i1 <= d; ++i1) {
    const int block = d - i1 + 1;
    if (idx < block) return {d - i1 - idx, i1, idx};
    idx -= block;
  }
  throw std::invalid_argument("index_to_multi: index out of range");
}

}  // namespace amoeba
