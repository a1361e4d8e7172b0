#pragma once

// Exact value of a j-th order residue symbol: e^{2*pi*i*k/j} or the
// distinguished Zero.  Multiplication adds k mod j; Zero absorbs.

#include <complex>
#include <stdexcept>

#include "int128.hpp"

namespace lfm {

struct RootOfUnity {
  int order = 1;
  int k = 0;
  bool zero = false;

  static RootOfUnity make(int j, i128 k) {
    if (j < 1) throw std::invalid_argument("root order must be positive");
    return RootOfUnity{j, static_cast<int>(floor_mod(k, j)), false};
  }
  static RootOfUnity one_of(int j) { return make(j, 0); }
  static RootOfUnity zero_of(int j) { return RootOfUnity{j, 0, true}; }

  bool is_zero() const { return zero; }
  bool is_one() const { return !zero && k == 0; }

  RootOfUnity pow(i128 e) const {
    if (zero) {
      if (e == 0) return one_of(order);
      if (e < 0) throw std::invalid_argument("negative power of zero");
      return *this;
    }
    return make(order, floor_mod(static_cast<i128>(k) * e, order));
  }

  RootOfUnity conjugate() const {
    if (zero) return *this;
    return make(order, order - k);
  }

  friend RootOfUnity operator*(const RootOfUnity& x, const RootOfUnity& y) {
    if (x.order != y.order)
      throw std::invalid_argument("root-of-unity order mismatch");
    if (x.zero || y.zero) return zero_of(x.order);
    return make(x.order, static_cast<i128>(x.k) + y.k);
  }

  // Value equality: e^{2 pi i k1/j1} == e^{2 pi i k2/j2}, across orders.
  friend bool operator==(const RootOfUnity& x, const RootOfUnity& y) {
    if (x.zero || y.zero) return x.zero == y.zero;
    return floor_mod(static_cast<i128>(x.k) * y.order -
                         static_cast<i128>(y.k) * x.order,
                     static_cast<i128>(x.order) * y.order) == 0;
  }
  friend bool operator!=(const RootOfUnity& x, const RootOfUnity& y) {
    return !(x == y);
  }

  std::complex<double> to_complex() const {
    if (zero) return {0.0, 0.0};
    if (k == 0) return {1.0, 0.0};
    const double t = 2.0 * 3.14159265358979323846 * k / order;
    return {std::cos(t), std::sin(t)};
  }
};

}  // namespace lfm
