#pragma once

// Hurwitz zeta by Euler-Maclaurin with a rigorous remainder:
//
//   zeta(s, x) = sum_{k<N} (k+x)^{-s} + (N+x)^{1-s}/(s-1) + (N+x)^{-s}/2
//              + sum_{r=1}^{m} B_{2r}/(2r)! (s)_{2r-1} (N+x)^{-s-2r+1} + R_m
//
//   |R_m| <= |(s)_{2m+1}| * 4 / (2 pi)^{2m+1} * (N+x)^{-sigma-2m} / (sigma+2m)
//
// (|periodic B_{2m+1}| <= (2m+1)! * 2 zeta(2m+1) / (2pi)^{2m+1} and
//  2 zeta(2m+1) < 4).  N grows until the bound clears the requested
// tolerance; every returned value carries its bound.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "kahan.hpp"

namespace lfm {

struct HurwitzValue {
  std::complex<double> value;
  double error_bound;
};

namespace detail {

inline constexpr int kEmTerms = 12;  // corrections up to B_24
inline constexpr double kBern2r[kEmTerms + 1] = {
    0.0,
    1.0 / 6,
    -1.0 / 30,
    1.0 / 42,
    -1.0 / 30,
    5.0 / 66,
    -691.0 / 2730,
    7.0 / 6,
    -3617.0 / 510,
    43867.0 / 798,
    -174611.0 / 330,
    854513.0 / 138,
    -236364091.0 / 2730};

template <class Scalar>
struct HurwitzResult {
  Scalar value;
  double error_bound;
};

// Scalar is double (real s) or complex<double>.
template <class Scalar>
HurwitzResult<Scalar> hurwitz_core(Scalar s, double sigma, double abs_s,
                                   double x, double tol) {
  if (!(x > 0)) throw std::invalid_argument("hurwitz_zeta: x must be positive");

  const int m = kEmTerms;
  // |(s)_{2m+1}| and the remainder prefactor depend only on |s| and sigma.
  auto remainder_bound = [&](double Npx) {
    double poch = 1.0;
    for (int i = 0; i <= 2 * m; ++i) poch *= abs_s + i;  // |s| + i >= |s + i|
    double two_pi_pow = std::pow(2.0 * 3.14159265358979323846, 2 * m + 1);
    double expo = sigma + 2 * m;
    if (expo <= 0) return HUGE_VAL;
    return poch * 4.0 / two_pi_pow * std::pow(Npx, -expo) / expo;
  };

  int N = 12;
  if (sigma < 1.0) N = std::max(N, 16);
  N = std::max(N, static_cast<int>(std::ceil(abs_s / 3.0)));
  while (remainder_bound(N + x) > tol && N < (1 << 22)) N *= 2;

  Kahan<Scalar> head;
  double abs_mass = 0.0;
  for (int k = 0; k < N; ++k) {
    Scalar t = std::pow(Scalar(k + x), -s);
    head.add(t);
    abs_mass += std::abs(t);
  }
  const double Npx = N + x;
  Scalar npx_ms = std::pow(Scalar(Npx), -s);          // (N+x)^{-s}
  Scalar tail = npx_ms * Scalar(Npx) / (s - Scalar(1.0));  // (N+x)^{1-s}/(s-1)
  Scalar corr = npx_ms * Scalar(0.5);

  // Bernoulli corrections: B_{2r}/(2r)! * (s)(s+1)...(s+2r-2) * (N+x)^{-s-2r+1}
  Scalar poch = Scalar(1.0);           // running (s)_{2r-1}
  Scalar power = npx_ms / Scalar(Npx);  // (N+x)^{-s-1}
  double fact = 1.0;
  Scalar bern_sum = Scalar(0.0);
  for (int r = 1; r <= m; ++r) {
    if (r == 1) {
      poch = s;
      fact = 2.0;
    } else {
      poch = poch * (s + Scalar(2 * r - 3)) * (s + Scalar(2 * r - 2));
      fact *= (2.0 * r) * (2.0 * r - 1.0);
    }
    bern_sum += Scalar(kBern2r[r] / fact) * poch * power;
    power = power / Scalar(Npx * Npx);
  }

  Scalar value = head.total() + tail + corr + bern_sum;
  double bound = remainder_bound(Npx) +
                 1e-15 * (abs_mass + std::abs(tail) + std::abs(corr) +
                          std::abs(bern_sum));
  return {value, bound};
}

}  // namespace detail

inline HurwitzValue hurwitz_zeta(std::complex<double> s, double x,
                                 double tol = 1e-13) {
  if (s == std::complex<double>(1.0, 0.0))
    throw std::invalid_argument("hurwitz_zeta: pole at s = 1");
  auto r = detail::hurwitz_core<std::complex<double>>(s, s.real(), std::abs(s),
                                                      x, tol);
  return {r.value, r.error_bound};
}

struct HurwitzValueReal {
  double value;
  double error_bound;
};

inline HurwitzValueReal hurwitz_zeta_real(double s, double x,
                                          double tol = 1e-13) {
  if (s == 1.0) throw std::invalid_argument("hurwitz_zeta: pole at s = 1");
  auto r = detail::hurwitz_core<double>(s, s, std::abs(s), x, tol);
  return {r.value, r.error_bound};
}

inline HurwitzValueReal riemann_zeta_real(double s, double tol = 1e-13) {
  return hurwitz_zeta_real(s, 1.0, tol);
}

}  // namespace lfm
