#pragma once

// Compensated (Kahan) accumulation for long floating-point sums.

#include <cmath>
#include <complex>

namespace lfm {

template <class T>
struct Kahan {
  T sum{};
  T comp{};

  void add(const T& x) {
    T y = x - comp;
    T t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const T& total() const { return sum; }
};

using KahanReal = Kahan<double>;
using KahanComplex = Kahan<std::complex<double>>;

}  // namespace lfm
