#pragma once

// Smooth compactly supported weights and their Mellin transforms.
//
// The presets are scaled bumps exp(-1/(1-((x-1)/c)^2)) supported on
// (1-c, 1+c); "default" uses c = 1/2, "narrow" c = 1/4, "wide" c = 3/4.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace lfm {

struct SmoothWeight {
  std::string name;
  double support_lo = 0.5;
  double support_hi = 1.5;
  std::function<double(double)> eval;

  double operator()(double x) const { return eval(x); }
};

inline SmoothWeight bump_weight(const std::string& name, double c) {
  if (!(c > 0.0 && c < 1.0))
    throw std::invalid_argument("bump half-width must lie in (0, 1)");
  SmoothWeight w;
  w.name = name;
  w.support_lo = 1.0 - c;
  w.support_hi = 1.0 + c;
  w.eval = [c](double x) {
    double t = (x - 1.0) / c;
    if (!(t > -1.0 && t < 1.0)) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
  };
  return w;
}

inline SmoothWeight weight_preset(const std::string& name) {
  if (name == "default") return bump_weight("default", 0.5);
  if (name == "narrow") return bump_weight("narrow", 0.25);
  if (name == "wide") return bump_weight("wide", 0.75);
  throw std::invalid_argument("unknown weight preset: " + name);
}

namespace detail {

template <class F>
std::complex<double> adaptive_simpson(const F& f, double a, double b,
                                      std::complex<double> fa,
                                      std::complex<double> fm,
                                      std::complex<double> fb,
                                      std::complex<double> whole, double tol,
                                      int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const std::complex<double> flm = f(lm), frm = f(rm);
  const std::complex<double> left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const std::complex<double> right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const std::complex<double> delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

template <class F>
std::complex<double> integrate(const F& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const std::complex<double> fa = f(a), fm = f(m), fb = f(b);
  const std::complex<double> whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace detail

// Mellin transform: integral over the support of Phi(t) t^{s-1} dt, to
// absolute error ~tol.
inline std::complex<double> mellin_hat(const SmoothWeight& phi,
                                       std::complex<double> s,
                                       double tol = 1e-10) {
  auto f = [&phi, s](double t) -> std::complex<double> {
    double v = phi(t);
    if (v == 0.0) return {0.0, 0.0};
    return v * std::pow(std::complex<double>(t), s - std::complex<double>{1.0, 0.0});
  };
  return detail::integrate(f, phi.support_lo, phi.support_hi, tol);
}

// Phi^(0) = integral of Phi(t)/t dt > 0.
inline double mellin_hat0(const SmoothWeight& phi) {
  return mellin_hat(phi, {0.0, 0.0}).real();
}

}  // namespace lfm
