#pragma once

// Numerical verification of the double-Dirichlet-series rearrangements in
// their region of absolute convergence (Re >= 2, where elementary tail
// bounds are available):
//
//  A_j(s,w) = sum over the character family of L(w, chi)/q^s   (direct)
//           = sum_m m^{-w} sum_{d primary in Z} mu(d) chi_j^(m)(d) d^{-2s}
//               sum_{n primary, dn square-free} chi_j^(m)(n) N(n)^{-s}
//                                                              (inverted)
//
// plus the square-free Euler product for the inner n-sum and the p-by-p
// collapse of the d-sum into local factors.  Every truncated value carries
// a rigorous tail bound; identity checks compare residuals against the
// combined bounds.

#include <complex>
#include <map>
#include <numeric>
#include <vector>

#include "gauss_sums.hpp"
#include "lfun.hpp"
#include "parallel.hpp"

namespace lfm {

struct TruncatedSeriesValue {
  std::complex<double> value;
  long long truncation;
  double tail_bound;
};

struct ResidualWithBound {
  double residual;
  double bound;
  bool within() const { return residual <= bound; }
};

namespace detail {

// Square-free primary moduli of norm <= Y (with the unit) and the primes
// appearing in them, prepared for repeated symbol evaluation.
struct ModulusCatalog {
  int j;
  Ring ring;
  std::vector<QInt> primes;            // distinct normalized primes, norm <= Y
  std::vector<long long> prime_norm;
  std::vector<long long> prime_under;  // rational prime below
  struct Item {
    QInt n;
    long long norm;
    long long rad;                  // product of distinct rational primes below n
    std::vector<int> prime_ids;
  };
  std::vector<Item> items;  // includes n = 1 with empty prime list
};

inline ModulusCatalog build_catalog(int j, long long Y) {
  ModulusCatalog cat;
  cat.j = j;
  cat.ring = ring_for_order(j);
  std::map<std::pair<long long, long long>, int> prime_id;
  auto id_of = [&](const QInt& pr) {
    auto key = std::make_pair(static_cast<long long>(pr.a),
                              static_cast<long long>(pr.b));
    auto it = prime_id.find(key);
    if (it != prime_id.end()) return it->second;
    int id = static_cast<int>(cat.primes.size());
    prime_id.emplace(key, id);
    cat.primes.push_back(pr);
    long long N = static_cast<long long>(norm(pr));
    cat.prime_norm.push_back(N);
    long long under = N;
    for (long long p = 2; p * p <= N; ++p)
      if (N % p == 0) {
        under = p;
        break;
      }
    cat.prime_under.push_back(under);
    return id;
  };
  cat.items.push_back({one(cat.ring), 1, 1, {}});
  for (const QInt& n : admissible_moduli(j, Y, /*squarefree_only=*/true)) {
    ModulusCatalog::Item item;
    item.n = n;
    item.norm = static_cast<long long>(norm(n));
    item.rad = 1;
    for (const auto& pp : factor(n).factors) {
      int id = id_of(pp.prime);
      item.prime_ids.push_back(id);
      if (item.rad % cat.prime_under[static_cast<std::size_t>(id)] != 0)
        item.rad *= cat.prime_under[static_cast<std::size_t>(id)];
    }
    cat.items.push_back(std::move(item));
  }
  return cat;
}

// dlog of (m / prime_i)_j for every catalog prime; -1 marks zero.
inline std::vector<int> catalog_symbols(const ModulusCatalog& cat, i128 m) {
  std::vector<int> out(cat.primes.size());
  const QInt mq = from_int(m, cat.ring);
  for (std::size_t i = 0; i < cat.primes.size(); ++i)
    out[i] = prime_symbol(mq, cat.primes[i], cat.j);
  return out;
}

// Signed square-free rational d in primary form, |d| <= D:
//   j = 3:       d == 1 mod 3 (any parity)
//   j = 4, 6:    d odd, d == 1 mod 4 (j = 6 also coprime to 3)
struct RationalD {
  long long d;      // signed
  long long abs_d;
  int mu;           // Moebius of |d|
  std::vector<long long> primes;
};

inline std::vector<RationalD> primary_rational_d(int j, long long D) {
  std::vector<RationalD> out;
  for (long long a = 1; a <= D; ++a) {
    long long m = a;
    RationalD rd;
    rd.abs_d = a;
    rd.mu = 1;
    bool squarefree = true;
    for (long long p = 2; p * p <= m && squarefree; ++p) {
      if (m % p != 0) continue;
      m /= p;
      if (m % p == 0) squarefree = false;
      rd.primes.push_back(p);
      rd.mu = -rd.mu;
    }
    if (!squarefree) continue;
    if (m > 1) {
      rd.primes.push_back(m);
      rd.mu = -rd.mu;
    }
    if (j == 3) {
      if (a % 3 == 0) continue;
      rd.d = a % 3 == 1 ? a : -a;
    } else {
      if (a % 2 == 0) continue;
      if (j == 6 && a % 3 == 0) continue;
      rd.d = a % 4 == 1 ? a : -a;
    }
    out.push_back(std::move(rd));
  }
  return out;
}

// (m/p)_j for a rational prime p, through the factorization of p in O_K.
inline RootOfUnity rational_prime_symbol(i128 m, long long p, int j) {
  return residue_symbol(m, from_int(p, ring_for_order(j)), j);
}

inline double zeta_of(double sigma) { return riemann_zeta_real(sigma).value; }

}  // namespace detail

// --------------------------------------------------------------------------
// Direct side: sum over the enumerated family of L(w, chi)/q^s, conductors
// <= X.  Tail bound: #chars(q) <= d(q) <= 2 sqrt(q) and |L(w,chi)| <=
// zeta(Re w)^2 give  zeta(Re w)^2 * 2 X^{3/2-Re s}/(Re s - 3/2).
inline TruncatedSeriesValue A_direct(std::complex<double> s,
                                     std::complex<double> w, int j, long long X,
                                     const Par& par = {}) {
  if (!(s.real() >= 2.0 && w.real() >= 2.0))
    throw std::invalid_argument("A_direct: need Re(s), Re(w) >= 2");
  auto chars = enumerate_characters(j, X, par);

  // group by conductor for shared Hurwitz evaluation
  KahanComplex acc;
  double l_bounds = 0.0;
  std::size_t i = 0;
  while (i < chars.size()) {
    std::size_t k = i;
    while (k < chars.size() && chars[k].conductor == chars[i].conductor) ++k;
    std::vector<std::vector<std::complex<double>>> tables;
    for (std::size_t t = i; t < k; ++t)
      tables.push_back(detail::complex_table(chars[t].value_table()));
    auto ls = dirichlet_L_batch(w, chars[i].conductor, tables);
    const double qs =
        std::abs(std::pow(std::complex<double>(chars[i].conductor), -s));
    for (const auto& l : ls) {
      acc.add(l.value * std::pow(std::complex<double>(chars[i].conductor), -s));
      l_bounds += l.abs_error_bound * qs;
    }
    i = k;
  }
  const double sig_s = s.real(), sig_w = w.real();
  const double zw = detail::zeta_of(sig_w);
  double tail = zw * zw * 2.0 * std::pow(static_cast<double>(X), 1.5 - sig_s) /
                (sig_s - 1.5);
  return {acc.total(), X, tail + l_bounds};
}

// --------------------------------------------------------------------------
// Moebius-inverted side, truncated at m <= M, |d| <= Y, N(n) <= Y.  The
// (d, n) = (1, 1) unit term belongs to the trivial character, which the
// family excludes, so it is removed.
inline TruncatedSeriesValue A_mobius(std::complex<double> s,
                                     std::complex<double> w, int j, long long M,
                                     long long Y) {
  if (!(s.real() >= 2.0 && w.real() >= 2.0))
    throw std::invalid_argument("A_mobius: need Re(s), Re(w) >= 2");
  const long long D = Y;
  auto cat = detail::build_catalog(j, Y);
  auto ds = detail::primary_rational_d(j, D);

  // per-item N(n)^{-s}
  std::vector<std::complex<double>> npow(cat.items.size());
  for (std::size_t t = 0; t < cat.items.size(); ++t)
    npow[t] = std::pow(std::complex<double>(static_cast<double>(cat.items[t].norm)), -s);
  std::vector<std::complex<double>> dpow(ds.size());
  for (std::size_t t = 0; t < ds.size(); ++t)
    dpow[t] = std::pow(std::complex<double>(static_cast<double>(ds[t].abs_d)),
                       -2.0 * s);

  std::array<std::complex<double>, 6> zc;
  for (int t = 0; t < j; ++t)
    zc[static_cast<std::size_t>(t)] = RootOfUnity::make(j, t).to_complex();

  KahanComplex total;
  for (long long m = 1; m <= M; ++m) {
    auto psym = detail::catalog_symbols(cat, m);
    // chi^(m)(d) exponents per rational prime <= D
    std::map<long long, int> rsym;  // -1 marks zero
    auto rational_sym = [&](long long p) {
      auto it = rsym.find(p);
      if (it != rsym.end()) return it->second;
      RootOfUnity v = detail::rational_prime_symbol(m, p, j);
      int k = v.is_zero() ? -1 : v.k;
      rsym.emplace(p, k);
      return k;
    };

    // d-sums restricted to gcd(|d|, rad) = 1, cached per rad
    std::map<long long, std::complex<double>> wcache;
    auto dsum_coprime_to = [&](long long rad) {
      auto it = wcache.find(rad);
      if (it != wcache.end()) return it->second;
      KahanComplex acc;
      for (std::size_t t = 0; t < ds.size(); ++t) {
        if (std::gcd(ds[t].abs_d, rad) != 1) continue;
        i128 k = 0;
        bool zero = false;
        for (long long p : ds[t].primes) {
          int e = rational_sym(p);
          if (e < 0) {
            zero = true;
            break;
          }
          k += e;
        }
        if (zero) continue;
        std::complex<double> chi_d =
            zc[static_cast<std::size_t>(floor_mod(k, j))];
        acc.add(static_cast<double>(ds[t].mu) * chi_d * dpow[t]);
      }
      wcache.emplace(rad, acc.total());
      return acc.total();
    };

    KahanComplex inner;
    for (std::size_t t = 0; t < cat.items.size(); ++t) {
      const auto& item = cat.items[t];
      i128 k = 0;
      bool zero = false;
      for (int id : item.prime_ids) {
        int e = psym[static_cast<std::size_t>(id)];
        if (e < 0) {
          zero = true;
          break;
        }
        k += e;
      }
      if (zero) continue;
      std::complex<double> chi_n = zc[static_cast<std::size_t>(floor_mod(k, j))];
      inner.add(chi_n * npow[t] * dsum_coprime_to(item.rad));
    }
    total.add(std::pow(std::complex<double>(static_cast<double>(m)), -w) *
              inner.total());
  }

  // remove the (d, n) = (1, 1) unit term
  KahanComplex unit_term;
  for (long long m = 1; m <= M; ++m)
    unit_term.add(std::pow(std::complex<double>(static_cast<double>(m)), -w));
  std::complex<double> value = total.total() - unit_term.total();

  const double sig_s = s.real(), sig_w = w.real();
  const double z_w = detail::zeta_of(sig_w);
  const double z_s = detail::zeta_of(sig_s);
  const double z_2s = detail::zeta_of(2.0 * sig_s);
  const double m_tail = std::pow(static_cast<double>(M), 1.0 - sig_w) /
                        (sig_w - 1.0) * (z_2s * z_s * z_s + 1.0);
  const double d_tail = z_w * z_s * z_s *
                        std::pow(static_cast<double>(D), 1.0 - 2.0 * sig_s) /
                        (2.0 * sig_s - 1.0);
  const double n_tail = z_w * z_2s * 2.0 *
                        std::pow(static_cast<double>(Y), 1.5 - sig_s) /
                        (sig_s - 1.5);
  return {value, Y, m_tail + d_tail + n_tail};
}

// Agreement of the two routes; the residual must fall inside the combined
// tail bounds.
inline ResidualWithBound mobius_identity_check(std::complex<double> s,
                                               std::complex<double> w, int j,
                                               long long X, long long M,
                                               long long Y, const Par& par = {}) {
  auto a = A_direct(s, w, j, X, par);
  auto b = A_mobius(s, w, j, M, Y);
  return {std::abs(a.value - b.value), a.tail_bound + b.tail_bound};
}

// --------------------------------------------------------------------------
// Square-free Euler product for the inner n-sum:
//   sum_{n primary square-free, (n,d)=1} chi^(m)(n) N(n)^{-s}
//     = prod_{(pi, jd)=1} (1 + chi^(m)(pi) N(pi)^{-s})
inline ResidualWithBound euler_product_check(long long m, long long d,
                                             double s, int j, long long Y) {
  if (!(s >= 2.5)) throw std::invalid_argument("euler_product_check: need s >= 2.5");
  // m enters only as a symbol numerator, so it needs no coprimality guard.
  if (std::gcd<long long>(d, j) != 1)
    throw std::invalid_argument("euler_product_check: gcd(d, j) must be 1");
  {
    long long t = d < 0 ? -d : d;
    for (long long p = 2; p * p <= t; ++p)
      if (t % (p * p) == 0)
        throw std::invalid_argument("euler_product_check: d must be square-free");
  }
  auto cat = detail::build_catalog(j, Y);
  auto psym = detail::catalog_symbols(cat, m);
  std::array<std::complex<double>, 6> zc;
  for (int t = 0; t < j; ++t)
    zc[static_cast<std::size_t>(t)] = RootOfUnity::make(j, t).to_complex();
  const long long abs_d = d < 0 ? -d : d;

  KahanComplex nsum;
  for (const auto& item : cat.items) {
    if (std::gcd(item.rad, abs_d) != 1) continue;
    i128 k = 0;
    bool zero = false;
    for (int id : item.prime_ids) {
      int e = psym[static_cast<std::size_t>(id)];
      if (e < 0) {
        zero = true;
        break;
      }
      k += e;
    }
    if (zero) continue;
    nsum.add(zc[static_cast<std::size_t>(floor_mod(k, j))] *
             std::pow(static_cast<double>(item.norm), -s));
  }

  std::complex<double> prod{1.0, 0.0};
  for (std::size_t i = 0; i < cat.primes.size(); ++i) {
    if (abs_d % cat.prime_under[i] == 0) continue;  // pi | d
    int e = psym[i];
    if (e < 0) continue;  // chi^(m)(pi) = 0
    prod *= 1.0 + zc[static_cast<std::size_t>(e)] *
                      std::pow(static_cast<double>(cat.prime_norm[i]), -s);
  }

  const double z_s = detail::zeta_of(s);
  const double n_tail =
      z_s * 2.0 * std::pow(static_cast<double>(Y), 1.5 - s) / (s - 1.5);
  const double log_tail =
      2.0 * std::pow(static_cast<double>(Y), 1.0 - s) / (s - 1.0);
  const double p_tail = std::abs(prod) * std::expm1(log_tail);
  return {std::abs(nsum.total() - prod), n_tail + p_tail + 1e-12};
}

// --------------------------------------------------------------------------
// p-by-p collapse of the d-sum: with t(d) = mu(d) chi^(m)(d) d^{-2s}
// prod_{pi|d}(1 + chi^(m)(pi) N(pi)^{-s})^{-1}, the full sum equals the
// p-coprime sum times (1 - p^{-2s} prod_{pi|p}(1 + chi^(m)(pi) N^{-s})^{-1}).
inline ResidualWithBound sumd_collapse_check(long long m, long long p, double s,
                                             int j, long long D) {
  if (std::gcd<long long>(p, m) != 1 || std::gcd<long long>(p, j) != 1)
    throw std::invalid_argument("sumd_collapse_check: need gcd(p, mj) = 1");
  const Ring ring = ring_for_order(j);
  auto ds = detail::primary_rational_d(j, D);
  std::map<long long, std::pair<int, std::complex<double>>> pdata;
  auto prime_data = [&](long long pr) {
    auto it = pdata.find(pr);
    if (it != pdata.end()) return it->second;
    RootOfUnity v = detail::rational_prime_symbol(m, pr, j);
    std::complex<double> loc{1.0, 0.0};
    for (const auto& pp : factor(from_int(pr, ring)).factors) {
      int e = detail::prime_symbol(from_int(m, ring), pp.prime, j);
      std::complex<double> ev =
          e < 0 ? std::complex<double>{0.0, 0.0}
                : RootOfUnity::make(j, e).to_complex();
      loc *= 1.0 +
             ev * std::pow(static_cast<double>(norm(pp.prime)), -s);
    }
    auto res = std::make_pair(v.is_zero() ? -1 : v.k, loc);
    pdata.emplace(pr, res);
    return res;
  };

  auto dsum = [&](bool skip_p) {
    KahanComplex acc;
    for (const auto& rd : ds) {
      if (skip_p && rd.abs_d % p == 0) continue;
      std::complex<double> t{static_cast<double>(rd.mu), 0.0};
      bool zero = false;
      i128 k = 0;
      for (long long pr : rd.primes) {
        auto [e, loc] = prime_data(pr);
        if (e < 0) {
          zero = true;
          break;
        }
        k += e;
        t /= loc;
      }
      if (zero) continue;
      t *= RootOfUnity::make(j, k).to_complex() *
           std::pow(static_cast<double>(rd.abs_d), -2.0 * s);
      acc.add(t);
    }
    return acc.total();
  };

  std::complex<double> locp = prime_data(p).second;
  std::complex<double> local_factor =
      1.0 - std::pow(static_cast<double>(p), -2.0 * s) / locp;
  std::complex<double> all = dsum(false);
  std::complex<double> without = dsum(true);
  double residual = std::abs(all - without * local_factor);
  const double z_s = detail::zeta_of(s);
  const double tail = z_s * z_s *
                      std::pow(static_cast<double>(D), 1.0 - 2.0 * s) /
                      (2.0 * s - 1.0);
  return {residual, tail * (1.0 + std::abs(local_factor)) + 1e-12};
}

}  // namespace lfm
