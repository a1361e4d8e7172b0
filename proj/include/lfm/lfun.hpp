#pragma once

// Dirichlet L-functions via the Hurwitz-zeta backbone:
//
//   L(s, chi) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q)
//
// with the digamma formula at s = 1 for non-principal characters, the
// functional-equation residual, and batch evaluation that shares the
// Hurwitz values among all characters of one conductor.

#include <complex>
#include <vector>

#include "characters.hpp"
#include "gamma.hpp"
#include "gauss_sums.hpp"
#include "hurwitz.hpp"
#include "kahan.hpp"

namespace lfm {

struct LValue {
  std::complex<double> s;
  std::complex<double> value;
  double abs_error_bound;
};

namespace detail {

inline std::array<std::complex<double>, 64> root_lut(int order) {
  std::array<std::complex<double>, 64> lut{};
  for (int k = 0; k < order; ++k)
    lut[static_cast<std::size_t>(k)] = RootOfUnity::make(order, k).to_complex();
  return lut;
}

// chi value tables as complex numbers; zero entries for non-units.
inline std::vector<std::complex<double>> complex_table(
    const std::vector<RootOfUnity>& table) {
  std::vector<std::complex<double>> out(table.size());
  int order = table.empty() ? 1 : table.front().order;
  auto lut = root_lut(order);
  for (std::size_t i = 0; i < table.size(); ++i)
    out[i] = table[i].is_zero() ? std::complex<double>{0.0, 0.0}
                                : lut[static_cast<std::size_t>(table[i].k)];
  return out;
}

// L(1, chi) = -(1/q) sum chi(a) psi(a/q), non-principal chi only.
inline LValue l_at_one(const std::vector<std::complex<double>>& chi, long long q) {
  KahanComplex acc;
  double mass = 0.0;
  for (long long a = 1; a < q; ++a) {
    const auto& c = chi[static_cast<std::size_t>(a)];
    if (c == std::complex<double>{0.0, 0.0}) continue;
    double psi = digamma_real(static_cast<double>(a) / static_cast<double>(q));
    acc.add(-c * psi);
    mass += std::abs(psi);
  }
  std::complex<double> v = acc.total() / static_cast<double>(q);
  return {std::complex<double>{1.0, 0.0}, v,
          1e-13 * (1.0 + mass / static_cast<double>(q))};
}

template <class Hz>
inline LValue assemble_l(std::complex<double> s, long long q,
                         const std::vector<std::complex<double>>& chi,
                         const std::vector<Hz>& hz, double hz_bound_sum) {
  KahanComplex acc;
  for (long long a = 1; a <= q; ++a) {
    const auto& c = chi[static_cast<std::size_t>(a % q)];
    if (c == std::complex<double>{0.0, 0.0}) continue;
    acc.add(c * hz[static_cast<std::size_t>(a)]);
  }
  std::complex<double> qs = std::pow(std::complex<double>(static_cast<double>(q)), -s);
  std::complex<double> value = qs * acc.total();
  double bound = std::abs(qs) * hz_bound_sum * 1.0000000001 +
                 1e-15 * std::abs(value);
  return {s, value, bound};
}

}  // namespace detail

// Batch evaluation: all characters must share one conductor q; the q Hurwitz
// values are computed once.  Entries come back in the order given.
inline std::vector<LValue> dirichlet_L_batch(
    std::complex<double> s, long long q,
    const std::vector<std::vector<std::complex<double>>>& tables,
    double tol = 1e-13) {
  if (q < 1) throw std::invalid_argument("dirichlet_L_batch: bad conductor");
  std::vector<LValue> out;
  if (s == std::complex<double>{1.0, 0.0}) {
    out.reserve(tables.size());
    for (const auto& t : tables) out.push_back(detail::l_at_one(t, q));
    return out;
  }
  const bool real_s = s.imag() == 0.0;
  double bound_sum = 0.0;
  if (real_s) {
    std::vector<double> hz(static_cast<std::size_t>(q) + 1, 0.0);
    for (long long a = 1; a <= q; ++a) {
      auto h = hurwitz_zeta_real(s.real(),
                                 static_cast<double>(a) / static_cast<double>(q),
                                 tol);
      hz[static_cast<std::size_t>(a)] = h.value;
      bound_sum += h.error_bound;
    }
    for (const auto& t : tables) out.push_back(detail::assemble_l(s, q, t, hz, bound_sum));
    return out;
  }
  std::vector<std::complex<double>> hz(static_cast<std::size_t>(q) + 1);
  for (long long a = 1; a <= q; ++a) {
    auto h = hurwitz_zeta(s, static_cast<double>(a) / static_cast<double>(q), tol);
    hz[static_cast<std::size_t>(a)] = h.value;
    bound_sum += h.error_bound;
  }
  for (const auto& t : tables) out.push_back(detail::assemble_l(s, q, t, hz, bound_sum));
  return out;
}

inline LValue dirichlet_L(std::complex<double> s, const PrimitiveCharacter& chi,
                          double tol = 1e-13) {
  auto table = detail::complex_table(chi.value_table());
  return dirichlet_L_batch(s, chi.conductor, {table}, tol).front();
}

// Rational-character overload; the principal character mod 1 gives zeta(s).
inline LValue dirichlet_L(std::complex<double> s, const RationalCharacter& chi) {
  if (chi.modulus == 1 || chi.is_principal()) {
    if (s == std::complex<double>{1.0, 0.0})
      throw std::invalid_argument("dirichlet_L: pole at s = 1 for principal chi");
    if (chi.modulus == 1) {
      auto h = hurwitz_zeta(s, 1.0);
      return {s, h.value, h.error_bound};
    }
  }
  if (s == std::complex<double>{1.0, 0.0} && chi.is_principal())
    throw std::invalid_argument("dirichlet_L: pole at s = 1 for principal chi");
  auto table = detail::complex_table(chi.values);
  return dirichlet_L_batch(s, chi.modulus, {table}).front();
}

// L(1/2 + alpha, chi) for real alpha in [0, 1/2).
inline LValue central_value(const PrimitiveCharacter& chi, double alpha) {
  if (!(alpha >= 0.0 && alpha < 0.5))
    throw std::invalid_argument("central_value: alpha must lie in [0, 1/2)");
  return dirichlet_L({0.5 + alpha, 0.0}, chi);
}

// | L(s,chi) - tau(chi)/(i^a sqrt q) (q/pi)^{1/2-s}
//     Gamma((1-s+a)/2)/Gamma((s+a)/2) L(1-s, conj chi) |
inline double fe_residual(std::complex<double> s, const PrimitiveCharacter& chi) {
  if (!(s.real() > 0.0 && s.real() < 1.0))
    throw std::invalid_argument("fe_residual: need 0 < Re(s) < 1");
  static constexpr double kPi = 3.14159265358979323846;
  const long long q = chi.conductor;
  const int a = chi.parity();
  const std::complex<double> i_pow_a = a == 0 ? std::complex<double>{1.0, 0.0}
                                              : std::complex<double>{0.0, 1.0};
  std::complex<double> eps =
      tau(1, chi) / (i_pow_a * std::sqrt(static_cast<double>(q)));
  std::complex<double> pref =
      eps * std::pow(std::complex<double>(static_cast<double>(q) / kPi),
                     std::complex<double>{0.5, 0.0} - s) *
      gamma_ratio((std::complex<double>{1.0, 0.0} - s + static_cast<double>(a)) / 2.0,
                  (s + static_cast<double>(a)) / 2.0);
  LValue lhs = dirichlet_L(s, chi);
  LValue rhs = dirichlet_L(std::complex<double>{1.0, 0.0} - s, chi.conjugate());
  return std::abs(lhs.value - pref * rhs.value);
}

}  // namespace lfm
