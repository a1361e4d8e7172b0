#pragma once

// The main-term constant and its ingredients:
//
//   r_K        residue of zeta_K at 1, via L(1, chi_D) and the class
//              number formula as independent routes
//   zeta_K(2)  = zeta(2) L(2, chi_D)
//   P(1,psi0)  = prod_{(p,j)=1} (1 - p^{-2} prod_{pi|p} (1 + N(pi)^{-1})^{-1})
//   Z_j(w)     = sum_m m^{-jw} prod_{pi|jm} (1 + N(pi)^{-1})^{-1}
//                  prod_{p | m/(m,j)} (1 - p^{-2} prod_{pi|p} (...)^{-1})^{-1}
//   C_j        = r_K / zeta_K(2) * P(1, psi0) * Z_j(1/2 + alpha)
//
// P and Z are evaluated through zeta-normalized Euler products whose
// correction factors decay like p^{-3} resp. p^{-u-1}, with elementary tail
// bounds; the literal truncations stay available as cross-checks.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lfun.hpp"

namespace lfm {

struct Bounded {
  double value = 0.0;
  double error_bound = 0.0;
};

namespace detail {

// Primes up to at least `limit`; iterate with an explicit `p > limit` break
// since the grow-only cache may extend past the request.
inline const std::vector<int>& primes_to(int limit) {
  thread_local std::vector<int> primes;
  thread_local int cached_limit = 0;
  if (limit <= cached_limit) return primes;
  primes.clear();
  std::vector<bool> comp(static_cast<std::size_t>(limit) + 1, false);
  for (int p = 2; p <= limit; ++p) {
    if (comp[static_cast<std::size_t>(p)]) continue;
    primes.push_back(p);
    for (long long m = static_cast<long long>(p) * p; m <= limit; m += p)
      comp[static_cast<std::size_t>(m)] = true;
  }
  cached_limit = limit;
  return primes;
}

// prod_{pi | p} (1 + N(pi)^{-1})^{-1} by splitting type.
inline double local_a(long long p, Ring ring) {
  const double pd = static_cast<double>(p);
  if (p == ramified_rational_prime(ring)) return 1.0 / (1.0 + 1.0 / pd);
  if (splits(p, ring)) {
    double f = 1.0 + 1.0 / pd;
    return 1.0 / (f * f);
  }
  return 1.0 / (1.0 + 1.0 / (pd * pd));
}

}  // namespace detail

inline Ring ring_for_constant(int j) { return ring_for_order(j); }

// Residue of zeta_K at s = 1 computed as L(1, chi_{D_K}).
inline Bounded residue_zeta_K(Ring ring) {
  auto chi = RationalCharacter::quadratic(discriminant(ring));
  LValue v = dirichlet_L({1.0, 0.0}, chi);
  return {v.value.real(), v.abs_error_bound};
}

// Class number formula route: 2 pi h / (w_K sqrt(|D_K|)) with h = 1.
inline double residue_zeta_K_class_number(Ring ring) {
  static constexpr double kPi = 3.14159265358979323846;
  return 2.0 * kPi /
         (unit_count(ring) * std::sqrt(static_cast<double>(-discriminant(ring))));
}

inline Bounded zeta_K_at_2(Ring ring) {
  auto z = riemann_zeta_real(2.0);
  auto chi = RationalCharacter::quadratic(discriminant(ring));
  LValue l = dirichlet_L({2.0, 0.0}, chi);
  double value = z.value * l.value.real();
  double bound = std::abs(z.value) * l.abs_error_bound +
                 std::abs(l.value.real()) * z.error_bound + 1e-15 * value;
  return {value, bound};
}

// Literal partial product of P(1, psi0) up to p_max (monotone decreasing),
// kept as the cross-check route.
inline double euler_P_partial(int j, long long p_max) {
  const Ring ring = ring_for_constant(j);
  double acc = 1.0;
  for (int p : detail::primes_to(static_cast<int>(p_max))) {
    if (p > p_max) break;
    if (j % p == 0) continue;
    const double pd = static_cast<double>(p);
    acc *= 1.0 - detail::local_a(p, ring) / (pd * pd);
  }
  return acc;
}

// P(1, psi0) with the zeta(2) factor pulled out:
//   P = zeta(2)^{-1} prod_{p|j} (1-p^{-2})^{-1}
//       * prod_{(p,j)=1} (1 - p^{-2} a_p) / (1 - p^{-2})
// The ratio factors are 1 + O(p^{-3}); the tail over p > p_max is bounded
// by sum_{n>p_max} 3 n^{-3} <= 1.5 p_max^{-2}.
inline Bounded euler_P(int j, long long p_max = 1000000) {
  const Ring ring = ring_for_constant(j);
  auto z2 = riemann_zeta_real(2.0);
  double acc = 1.0 / z2.value;
  for (int p : {2, 3}) {
    if (j % p != 0) continue;
    const double pd = p;
    acc /= 1.0 - 1.0 / (pd * pd);
  }
  const auto& primes = detail::primes_to(static_cast<int>(p_max));
  long long used = 0;
  for (int p : primes) {
    if (p > p_max) break;
    if (j % p == 0) continue;
    const double pd = static_cast<double>(p);
    const double p2 = pd * pd;
    acc *= (1.0 - detail::local_a(p, ring) / p2) / (1.0 - 1.0 / p2);
    ++used;
  }
  const double tail = 1.5 / (static_cast<double>(p_max) * static_cast<double>(p_max));
  const double float_slop = 2e-16 * static_cast<double>(used);
  double bound = std::abs(acc) *
                 (std::expm1(tail) + float_slop + z2.error_bound / z2.value);
  return {acc, bound};
}

// Z_j(w) by the multiplicative rearrangement.  Writing u = j*w and
// a_p, b_p = (1 - p^{-2} a_p)^{-1}:
//
//   Z_j(w) = A_j * prod_{p|j} S_p(u) * zeta(u) prod_{p|j}(1 - p^{-u})
//            * prod_{p not | j, split} (1 - p^{-u} (1 - a_p b_p))
//
// with A_j = prod_{pi|j}(1 + N(pi)^{-1})^{-1} and
// S_p(u) = sum_{k<=e} p^{-ku} + b_p sum_{k>e} p^{-ku}, e = v_p(j).
// Inert p contribute exactly (1 - p^{-u})^{-1}, so only split primes need
// correction factors; 1 - a_p b_p <= 3/p gives the tail bound
// sum_{n > p_max} 3 n^{-u-1} <= 3 p_max^{-u} / u.
inline Bounded z_value(int j, double w, long long p_max = 1000000) {
  const double u = static_cast<double>(j) * w;
  if (!(u > 1.0)) throw std::invalid_argument("z_value: need j*w > 1");
  const Ring ring = ring_for_constant(j);

  double acc = 1.0;
  for (int p : {2, 3}) {
    if (j % static_cast<long long>(p) != 0) continue;
    int e = 0;
    int jj = j;
    while (jj % p == 0) {
      jj /= p;
      ++e;
    }
    const double pd = p;
    const double a = detail::local_a(p, ring);
    const double b = 1.0 / (1.0 - a / (pd * pd));
    const double pmu = std::pow(pd, -u);
    double head = 0.0, pk = 1.0;
    for (int k = 0; k <= e; ++k) {
      head += pk;
      pk *= pmu;
    }
    double tail_sum = b * pk / (1.0 - pmu);
    acc *= a * (head + tail_sum) * (1.0 - pmu);
  }
  auto zu = riemann_zeta_real(u);
  acc *= zu.value;
  const auto& primes = detail::primes_to(static_cast<int>(p_max));
  long long used = 0;
  for (int p : primes) {
    if (p > p_max) break;
    if (j % p == 0 || !splits(p, ring)) continue;
    const double pd = static_cast<double>(p);
    const double a = detail::local_a(p, ring);
    const double b = 1.0 / (1.0 - a / (pd * pd));
    acc *= 1.0 - std::pow(pd, -u) * (1.0 - a * b);
    ++used;
  }
  const double tail = 3.0 * std::pow(static_cast<double>(p_max), -u) / u;
  const double float_slop = 2e-16 * static_cast<double>(used);
  double bound = std::abs(acc) * (std::expm1(tail) + float_slop +
                                  zu.error_bound / std::abs(zu.value));
  return {acc, bound};
}

// Literal truncation sum_{m<=M}, factoring each m once through a smallest-
// prime-factor sieve; tail bound zeta(2) M^{1-jw} / (jw-1).
inline Bounded z_value_direct(int j, double w, long long M) {
  const double u = static_cast<double>(j) * w;
  if (!(u > 1.0)) throw std::invalid_argument("z_value_direct: need j*w > 1");
  const Ring ring = ring_for_constant(j);
  std::vector<int> spf(static_cast<std::size_t>(M) + 1, 0);
  for (long long i = 2; i <= M; ++i)
    if (spf[static_cast<std::size_t>(i)] == 0)
      for (long long m = i; m <= M; m += i)
        if (spf[static_cast<std::size_t>(m)] == 0)
          spf[static_cast<std::size_t>(m)] = static_cast<int>(i);

  double a_j = 1.0;
  for (int p : {2, 3})
    if (j % p == 0) a_j *= detail::local_a(p, ring);

  KahanReal acc;
  for (long long m = 1; m <= M; ++m) {
    double f = a_j;
    long long r = m;
    while (r > 1) {
      int p = spf[static_cast<std::size_t>(r)];
      int v = 0;
      while (r % p == 0) {
        r /= p;
        ++v;
      }
      const double pd = static_cast<double>(p);
      const double a = detail::local_a(p, ring);
      int vj = 0;
      int jj = j;
      while (jj % p == 0) {
        jj /= p;
        ++vj;
      }
      if (vj == 0) f *= a;  // p | jm newly through m
      if (v > vj) f *= 1.0 / (1.0 - a / (pd * pd));
    }
    acc.add(f * std::pow(static_cast<double>(m), -u));
  }
  const double z2 = 1.6449340668482264;
  const double tail = z2 * std::pow(static_cast<double>(M), 1.0 - u) / (u - 1.0);
  return {acc.total(), tail + 1e-14};
}

struct ConstantBundle {
  Ring ring;
  int j;
  double alpha;
  double r_K;
  double zeta_K_2;
  double P_value;
  double Z_value;
  double C_j;
  double error_bound;
};

inline ConstantBundle main_constant(int j, double alpha) {
  if (j != 3 && j != 4 && j != 6)
    throw std::invalid_argument("main_constant: j must be 3, 4 or 6");
  if (!(alpha >= 0.0 && alpha < 0.5))
    throw std::invalid_argument("main_constant: alpha must lie in [0, 1/2)");
  const Ring ring = ring_for_constant(j);
  Bounded r = residue_zeta_K(ring);
  Bounded z2 = zeta_K_at_2(ring);
  Bounded P = euler_P(j);
  Bounded Z = z_value(j, 0.5 + alpha);
  const double C = r.value / z2.value * P.value * Z.value;
  // worst-case interval propagation
  const double hi = (r.value + r.error_bound) / (z2.value - z2.error_bound) *
                    (P.value + P.error_bound) * (Z.value + Z.error_bound);
  const double lo = (r.value - r.error_bound) / (z2.value + z2.error_bound) *
                    (P.value - P.error_bound) * (Z.value - Z.error_bound);
  const double bound = std::max(hi - C, C - lo) + 1e-15 * C;
  return {ring, j, alpha, r.value, z2.value, P.value, Z.value, C, bound};
}

}  // namespace lfm
