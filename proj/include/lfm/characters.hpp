#pragma once

// The family of primitive order-j Dirichlet characters (j = 3, 4, 6): every
// member is m -> (m/n)_j for a primary (E-primary when j = 6), square-free
// n in O_K with no rational prime divisor, of conductor q = N(n).  The
// rational-side brute-force character group lives here too and acts as the
// independent counting oracle.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "residue_symbol.hpp"

namespace lfm {

namespace detail {

inline long long mod_pow_ll(long long b, long long e, long long m) {
  long long r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = static_cast<long long>((__int128)r * b % m);
    b = static_cast<long long>((__int128)b * b % m);
    e >>= 1;
  }
  return r;
}

inline long long mod_inverse_ll(long long a, long long m) {
  long long t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
  while (nr != 0) {
    long long q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw std::invalid_argument("not invertible");
  return ((t % m) + m) % m;
}

}  // namespace detail

// One split prime over the conductor, with the data needed to evaluate the
// symbol on rational integers through the residue-field isomorphism
// O_K/(pi) = F_p.
struct CharPrime {
  QInt prime;                        // normalized generator
  long long p = 0;                   // rational prime below
  long long zeta_image = 0;          // image of zeta_j in F_p
  std::array<long long, 6> zeta_pow{};  // zeta_image^k mod p for k < j
};

class PrimitiveCharacter {
 public:
  int order = 3;
  QInt modulus{0, 0, Ring::eisenstein};
  long long conductor = 0;
  std::vector<CharPrime> primes;

  PrimitiveCharacter() = default;

  // Builds chi_{j,n} from an admissible modulus; validates the Lemma-style
  // conditions (primary form, square-free, no rational prime divisor,
  // conductor coprime to j and > 1).
  static PrimitiveCharacter from_modulus(const QInt& n, int j) {
    validate_symbol_modulus(n, j);
    if (!passes_primary(n, primary_mode_for_order(j)))
      throw std::invalid_argument("character modulus must be primary");
    if (is_unit(n)) throw std::invalid_argument("character modulus must not be a unit");
    if (!is_squarefree(n))
      throw std::invalid_argument("character modulus must be square-free");
    if (has_rational_prime_divisor(n))
      throw std::invalid_argument("character modulus must avoid rational primes");

    PrimitiveCharacter chi;
    chi.order = j;
    chi.modulus = n;
    chi.conductor = static_cast<long long>(norm(n));
    const QInt zeta = zeta_root(j);
    for (const auto& pp : factor(n).factors) {
      CharPrime cp;
      cp.prime = pp.prime;
      cp.p = static_cast<long long>(norm(pp.prime));
      // theta == -a * b^{-1} mod p for the prime a + b*theta
      long long a = static_cast<long long>(floor_mod(pp.prime.a, cp.p));
      long long b = static_cast<long long>(floor_mod(pp.prime.b, cp.p));
      long long theta = static_cast<long long>(
          (__int128)(cp.p - a) * detail::mod_inverse_ll(b, cp.p) % cp.p);
      long long z = static_cast<long long>(
          floor_mod(zeta.a + zeta.b * theta, cp.p));
      cp.zeta_image = z;
      long long acc = 1;
      for (int k = 0; k < j; ++k) {
        cp.zeta_pow[static_cast<std::size_t>(k)] = acc;
        acc = static_cast<long long>((__int128)acc * z % cp.p);
      }
      chi.primes.push_back(cp);
    }
    return chi;
  }

  // chi(m) for a rational integer m; period = conductor, Zero iff
  // gcd(m, conductor) > 1.
  RootOfUnity evaluate(i128 m) const {
    i128 k = 0;
    for (const CharPrime& cp : primes) {
      long long r = static_cast<long long>(floor_mod(m, cp.p));
      if (r == 0) return RootOfUnity::zero_of(order);
      long long t = detail::mod_pow_ll(r, (cp.p - 1) / order, cp.p);
      int dlog = -1;
      for (int i = 0; i < order; ++i)
        if (cp.zeta_pow[static_cast<std::size_t>(i)] == t) {
          dlog = i;
          break;
        }
      if (dlog < 0) throw std::logic_error("symbol value is not a root of unity");
      k += dlog;
    }
    return RootOfUnity::make(order, k);
  }

  // Parity exponent: chi(-1) = (-1)^a.
  int parity() const {
    RootOfUnity v = evaluate(-1);
    if (v.is_one()) return 0;
    if (v == RootOfUnity::make(2, 1)) return 1;
    throw std::logic_error("chi(-1) must be +-1");
  }

  PrimitiveCharacter conjugate() const {
    QInt nbar =
        normalize_primary(conj(modulus), primary_mode_for_order(order)).value;
    return from_modulus(nbar, order);
  }

  // Value table chi(a) for a in [0, conductor).
  std::vector<RootOfUnity> value_table() const {
    const long long q = conductor;
    std::vector<std::vector<int>> ptab;
    ptab.reserve(primes.size());
    for (const CharPrime& cp : primes) {
      std::vector<int> t(static_cast<std::size_t>(cp.p), -1);
      for (long long a = 1; a < cp.p; ++a) {
        long long v = detail::mod_pow_ll(a, (cp.p - 1) / order, cp.p);
        for (int i = 0; i < order; ++i)
          if (cp.zeta_pow[static_cast<std::size_t>(i)] == v) {
            t[static_cast<std::size_t>(a)] = i;
            break;
          }
      }
      ptab.push_back(std::move(t));
    }
    std::vector<RootOfUnity> out(static_cast<std::size_t>(q),
                                 RootOfUnity::zero_of(order));
    for (long long a = 0; a < q; ++a) {
      i128 k = 0;
      bool zero = false;
      for (std::size_t i = 0; i < primes.size(); ++i) {
        int d = ptab[i][static_cast<std::size_t>(a % primes[i].p)];
        if (d < 0) {
          zero = true;
          break;
        }
        k += d;
      }
      if (!zero) out[static_cast<std::size_t>(a)] = RootOfUnity::make(order, k);
    }
    return out;
  }
};

// --------------------------------------------------------------------------
// Enumeration.  Iterates over rational conductors q <= X, keeps the
// square-free q built entirely from split primes coprime to j, and forms
// every choice of one prime above each.  Output is sorted by conductor,
// then by the (a, b) coordinates of the modulus, independent of threading.

namespace detail {

inline std::vector<int> smallest_prime_factor(long long n) {
  std::vector<int> spf(static_cast<std::size_t>(n) + 1, 0);
  for (long long i = 2; i <= n; ++i) {
    if (spf[static_cast<std::size_t>(i)] == 0) {
      for (long long m = i; m <= n; m += i)
        if (spf[static_cast<std::size_t>(m)] == 0)
          spf[static_cast<std::size_t>(m)] = static_cast<int>(i);
    }
  }
  return spf;
}

}  // namespace detail

inline std::vector<PrimitiveCharacter> enumerate_characters(int j, long long X,
                                                            const Par& par = {}) {
  if (X < 2) throw std::invalid_argument("enumerate: bound must be >= 2");
  const Ring ring = ring_for_order(j);
  const PrimaryMode mode = primary_mode_for_order(j);
  const auto spf = detail::smallest_prime_factor(X);

  auto chars_at = [&](long long q) {
    std::vector<PrimitiveCharacter> out;
    if (q < 2 || std::gcd(q, static_cast<long long>(j)) != 1) return out;
    long long m = q;
    std::vector<long long> ps;
    while (m > 1) {
      long long p = spf[static_cast<std::size_t>(m)];
      ps.push_back(p);
      m /= p;
      if (m % p == 0) return out;  // not square-free
      if (!splits(p, ring)) return out;
    }
    std::vector<std::pair<QInt, QInt>> pairs;
    pairs.reserve(ps.size());
    for (long long p : ps) {
      auto pr = split_primes_above(p, ring);
      pairs.emplace_back(normalize_primary(pr.first, mode).value,
                         normalize_primary(pr.second, mode).value);
    }
    for (std::uint32_t mask = 0; mask < (1u << ps.size()); ++mask) {
      QInt n = one(ring);
      for (std::size_t i = 0; i < ps.size(); ++i)
        n = n * ((mask >> i) & 1u ? pairs[i].second : pairs[i].first);
      out.push_back(PrimitiveCharacter::from_modulus(n, j));
    }
    std::sort(out.begin(), out.end(),
              [](const PrimitiveCharacter& x, const PrimitiveCharacter& y) {
                if (x.modulus.a != y.modulus.a) return x.modulus.a < y.modulus.a;
                return x.modulus.b < y.modulus.b;
              });
    return out;
  };

  auto blocks = parallel_map<std::vector<PrimitiveCharacter>>(
      static_cast<std::size_t>(X - 1), par,
      [&](std::size_t i) { return chars_at(static_cast<long long>(i) + 2); });
  std::vector<PrimitiveCharacter> out;
  for (auto& b : blocks)
    for (auto& c : b) out.push_back(std::move(c));
  return out;
}

// --------------------------------------------------------------------------
// Rational side: explicit character group of (Z/q)^* for the brute-force
// oracle, values stored as exact roots of unity.

class RationalCharacter {
 public:
  long long modulus = 1;
  int value_order = 1;                 // all values lie in mu_{value_order}
  std::vector<RootOfUnity> values;     // index a in [0, modulus)

  RationalCharacter() = default;
  RationalCharacter(long long q, int ord, std::vector<RootOfUnity> vals)
      : modulus(q), value_order(ord), values(std::move(vals)) {}

  static RationalCharacter principal(long long q) {
    std::vector<RootOfUnity> v(static_cast<std::size_t>(q), RootOfUnity::zero_of(1));
    for (long long a = 0; a < q; ++a)
      if (std::gcd(a, q) == 1) v[static_cast<std::size_t>(a)] = RootOfUnity::one_of(1);
    return {q, 1, std::move(v)};
  }

  // Real primitive character attached to discriminant -4 or -3.
  static RationalCharacter quadratic(int discriminant) {
    if (discriminant == -4) {
      std::vector<RootOfUnity> v{RootOfUnity::zero_of(2), RootOfUnity::one_of(2),
                                 RootOfUnity::zero_of(2), RootOfUnity::make(2, 1)};
      return {4, 2, std::move(v)};
    }
    if (discriminant == -3) {
      std::vector<RootOfUnity> v{RootOfUnity::zero_of(2), RootOfUnity::one_of(2),
                                 RootOfUnity::make(2, 1)};
      return {3, 2, std::move(v)};
    }
    throw std::invalid_argument("supported discriminants are -4 and -3");
  }

  RootOfUnity evaluate(i128 m) const {
    return values[static_cast<std::size_t>(floor_mod(m, modulus))];
  }

  bool is_principal() const {
    for (long long a = 0; a < modulus; ++a)
      if (!values[static_cast<std::size_t>(a)].is_zero() &&
          !values[static_cast<std::size_t>(a)].is_one())
        return false;
    return true;
  }

  RationalCharacter conjugate() const {
    auto v = values;
    for (auto& x : v) x = x.conjugate();
    return {modulus, value_order, std::move(v)};
  }

  RationalCharacter power(int e) const {
    auto v = values;
    for (auto& x : v) x = x.pow(e);
    return {modulus, value_order, std::move(v)};
  }

  // Smallest f | q such that chi is trivial on units == 1 mod f.
  long long conductor() const {
    for (long long f = 1; f <= modulus; ++f) {
      if (modulus % f != 0) continue;
      bool ok = true;
      for (long long a = 1; a < modulus && ok; ++a) {
        if (std::gcd(a, modulus) != 1) continue;
        if ((a - 1) % f == 0 && !values[static_cast<std::size_t>(a)].is_one())
          ok = false;
      }
      if (ok) return f;
    }
    throw std::logic_error("conductor not found");
  }

  bool is_primitive() const { return conductor() == modulus; }

  int char_order() const {
    for (int t = 1; t <= value_order; ++t) {
      bool ok = true;
      for (long long a = 0; a < modulus && ok; ++a) {
        const auto& v = values[static_cast<std::size_t>(a)];
        if (!v.is_zero() && !v.pow(t).is_one()) ok = false;
      }
      if (ok) return t;
    }
    throw std::logic_error("order not found");
  }
};

namespace detail {

struct CyclicComponent {
  long long generator;  // element of (Z/q)^*
  long long size;       // order of the generator
};

inline long long euler_phi_ll(long long n) {
  long long r = n;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

inline long long primitive_root(long long pe, long long p) {
  long long phi = euler_phi_ll(pe);
  std::vector<long long> qs;
  long long m = phi;
  for (long long f = 2; f * f <= m; ++f) {
    if (m % f) continue;
    qs.push_back(f);
    while (m % f == 0) m /= f;
  }
  if (m > 1) qs.push_back(m);
  for (long long g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (long long f : qs)
      if (mod_pow_ll(g, phi / f, pe) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root");
}

// Generators of (Z/q)^* via CRT.  Each component yields a generator lifted
// to Z/q (congruent to 1 in the other components).
inline std::vector<CyclicComponent> unit_group_components(long long q) {
  std::vector<CyclicComponent> comps;
  long long m = q;
  std::vector<std::pair<long long, long long>> pes;  // (p, p^e)
  for (long long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    long long pe = 1;
    while (m % p == 0) {
      m /= p;
      pe *= p;
    }
    pes.emplace_back(p, pe);
  }
  if (m > 1) pes.emplace_back(m, m);

  auto lift = [&](long long g, long long pe) {
    long long rest = q / pe;
    if (rest == 1) return g % q;
    // x == g mod pe, x == 1 mod rest: x = 1 + rest * (inv(rest) * (g-1) mod pe)
    long long inv = mod_inverse_ll(rest % pe, pe);
    long long t = static_cast<long long>((__int128)inv * ((g - 1 + pe) % pe) % pe);
    return static_cast<long long>((1 + (__int128)rest * t) % q);
  };

  for (auto [p, pe] : pes) {
    if (p == 2) {
      if (pe == 2) continue;  // trivial group
      if (pe == 4) {
        comps.push_back({lift(3, pe), 2});
        continue;
      }
      comps.push_back({lift(pe - 1, pe), 2});
      comps.push_back({lift(5, pe), pe / 4});
      continue;
    }
    comps.push_back({lift(primitive_root(pe, p), pe), euler_phi_ll(pe)});
  }
  return comps;
}

}  // namespace detail

// All characters chi mod q with chi^j principal, as value tables.
inline std::vector<RationalCharacter> rational_characters_with_power_trivial(
    long long q, int j) {
  if (q <= 0) throw std::invalid_argument("modulus must be positive");
  auto comps = detail::unit_group_components(q);

  // Exponent vector of every unit, found by walking the whole group once
  // with a mixed-radix odometer over the component generators.
  std::vector<long long> radix(comps.size(), 0);
  long long group_size = 1;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    radix[i] = group_size;
    group_size *= comps[i].size;
  }
  std::vector<long long> index_of(static_cast<std::size_t>(q), -1);
  {
    std::vector<long long> evec(comps.size(), 0);
    long long x = 1 % q;
    for (long long idx = 0; idx < group_size; ++idx) {
      index_of[static_cast<std::size_t>(x)] = idx;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        ++evec[i];
        x = static_cast<long long>((__int128)x * comps[i].generator % q);
        if (evec[i] < comps[i].size) break;
        evec[i] = 0;  // g_i^{size} == 1, so x already wrapped correctly
      }
    }
  }
  for (long long a = 0; a < q; ++a)
    if (std::gcd(a, q) == 1 && index_of[static_cast<std::size_t>(a)] < 0)
      throw std::logic_error("unit group enumeration incomplete");

  long long L = 1;  // common order for the value roots of unity
  for (const auto& c : comps) L = std::lcm(L, c.size);

  // exponent choices k_i with j * k_i == 0 mod d_i
  std::vector<std::vector<long long>> choices(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    long long d = comps[i].size;
    long long g = std::gcd<long long>(j, d);
    for (long long t = 0; t < g; ++t) choices[i].push_back(t * (d / g));
  }

  std::vector<RationalCharacter> out;
  std::vector<std::size_t> pick(comps.size(), 0);
  while (true) {
    std::vector<RootOfUnity> vals(static_cast<std::size_t>(q),
                                  RootOfUnity::zero_of(static_cast<int>(L)));
    for (long long a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      long long idx = index_of[static_cast<std::size_t>(a)];
      i128 num = 0;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        long long e = (idx / radix[i]) % comps[i].size;
        num += static_cast<i128>(L / comps[i].size) * choices[i][pick[i]] * e;
      }
      vals[static_cast<std::size_t>(a)] =
          RootOfUnity::make(static_cast<int>(L), num);
    }
    out.emplace_back(q, static_cast<int>(L), std::move(vals));
    std::size_t i = 0;
    for (; i < comps.size(); ++i) {
      if (++pick[i] < choices[i].size()) break;
      pick[i] = 0;
    }
    if (i == comps.size()) break;
  }
  return out;
}

// Brute-force count of primitive order-j characters mod q whose first j-1
// powers all stay primitive.  Guarded to desk scale.
inline long long oracle_count(int j, long long q) {
  if (j != 3 && j != 4 && j != 6)
    throw std::invalid_argument("oracle_count: j must be 3, 4 or 6");
  if (q > 10000) throw std::invalid_argument("oracle_count: q too large for brute force");
  if (std::gcd<long long>(q, j) != 1)
    throw std::invalid_argument("oracle_count: q must be coprime to j");
  if (q == 1) return 0;
  long long count = 0;
  for (const auto& chi : rational_characters_with_power_trivial(q, j)) {
    if (chi.char_order() != j) continue;
    bool ok = true;
    for (int i = 1; i < j && ok; ++i)
      if (!chi.power(i).is_primitive()) ok = false;
    if (ok) ++count;
  }
  return count;
}

}  // namespace lfm
