#pragma once

// Exact arithmetic in the two Euclidean rings this library lives in:
//
//   gaussian:    Z[i],      i^2 = -1,                 D_K = -4, w_K = 4
//   eisenstein:  Z[w],      w  = (-1+sqrt(-3))/2,     D_K = -3, w_K = 6
//                           w^2 = -1 - w
//
// Elements are a + b*theta with exact 128-bit coordinates.  Everything here
// is a pure function of its inputs; values are immutable and freely
// shareable across threads.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "int128.hpp"

namespace lfm {

enum class Ring : std::uint8_t { gaussian, eisenstein };

constexpr int discriminant(Ring r) { return r == Ring::gaussian ? -4 : -3; }
constexpr int unit_count(Ring r) { return r == Ring::gaussian ? 4 : 6; }
constexpr char generator_letter(Ring r) { return r == Ring::gaussian ? 'i' : 'w'; }

struct QInt {
  i128 a{0};
  i128 b{0};
  Ring ring{Ring::gaussian};

  QInt() = default;
  QInt(i128 a_, i128 b_, Ring r) : a(a_), b(b_), ring(r) {}

  bool is_zero() const { return a == 0 && b == 0; }
  friend bool operator==(const QInt& x, const QInt& y) {
    return x.ring == y.ring && x.a == y.a && x.b == y.b;
  }
  friend bool operator!=(const QInt& x, const QInt& y) { return !(x == y); }
};

inline void require_same_ring(const QInt& x, const QInt& y) {
  if (x.ring != y.ring) throw std::invalid_argument("ring mismatch");
}

inline i128 norm(const QInt& x) {
  return x.ring == Ring::gaussian ? x.a * x.a + x.b * x.b
                                  : x.a * x.a - x.a * x.b + x.b * x.b;
}

inline QInt from_int(i128 n, Ring r) { return {n, 0, r}; }
inline QInt one(Ring r) { return {1, 0, r}; }

inline QInt operator+(const QInt& x, const QInt& y) {
  require_same_ring(x, y);
  return {x.a + y.a, x.b + y.b, x.ring};
}
inline QInt operator-(const QInt& x, const QInt& y) {
  require_same_ring(x, y);
  return {x.a - y.a, x.b - y.b, x.ring};
}
inline QInt operator-(const QInt& x) { return {-x.a, -x.b, x.ring}; }
inline QInt operator*(const QInt& x, const QInt& y) {
  require_same_ring(x, y);
  if (x.ring == Ring::gaussian)
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a, x.ring};
  return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b, x.ring};
}

inline QInt conj(const QInt& x) {
  if (x.ring == Ring::gaussian) return {x.a, -x.b, x.ring};
  return {x.a - x.b, -x.b, x.ring};  // conj(w) = -1 - w
}

inline bool is_unit(const QInt& x) { return norm(x) == 1; }

inline std::vector<QInt> units(Ring r) {
  if (r == Ring::gaussian)
    return {{1, 0, r}, {0, 1, r}, {-1, 0, r}, {0, -1, r}};
  return {{1, 0, r}, {1, 1, r}, {0, 1, r}, {-1, 0, r}, {-1, -1, r}, {0, -1, r}};
}

// u * unit_inverse(u) == 1 for units.
inline QInt unit_inverse(const QInt& u) {
  if (!is_unit(u)) throw std::invalid_argument("not a unit");
  return conj(u);
}

// --------------------------------------------------------------------------
// Euclidean division: x = q*y + r with norm(r) < norm(y).

struct DivRem {
  QInt quot;
  QInt rem;
};

inline DivRem divrem(const QInt& x, const QInt& y) {
  require_same_ring(x, y);
  if (y.is_zero()) throw std::invalid_argument("division by zero");
  const QInt w = x * conj(y);
  const i128 n = norm(y);
  QInt q{round_div(w.a, n), round_div(w.b, n), x.ring};
  QInt r = x - q * y;
  return {q, r};
}

inline bool divides(const QInt& d, const QInt& x) {
  return divrem(x, d).rem.is_zero();
}

inline QInt exact_div(const QInt& x, const QInt& d) {
  DivRem qr = divrem(x, d);
  if (!qr.rem.is_zero()) throw std::invalid_argument("non-exact division");
  return qr.quot;
}

// --------------------------------------------------------------------------
// Canonical associate: the unit multiple whose complex argument lies in
// [0, 2*pi/w_K).  Gives a total order for deduplication.

inline bool in_canonical_sector(const QInt& x) {
  if (x.ring == Ring::gaussian) return x.a > 0 && x.b >= 0;
  return x.b >= 0 && x.b < x.a;  // arg in [0, pi/3)
}

// Returns {u, p} with p = u*x canonical.
inline std::pair<QInt, QInt> canonical_associate(const QInt& x) {
  if (x.is_zero()) return {one(x.ring), x};
  // rotate clockwise by 2*pi/w_K per step
  const QInt rot = x.ring == Ring::gaussian ? QInt{0, -1, x.ring}   // -i
                                            : QInt{0, -1, x.ring};  // -w
  QInt u = one(x.ring);
  QInt p = x;
  for (int step = 0; step < unit_count(x.ring); ++step) {
    if (in_canonical_sector(p)) return {u, p};
    p = p * rot;
    u = u * rot;
  }
  throw std::logic_error("canonical associate not found");
}

// --------------------------------------------------------------------------
// Primary and E-primary normal forms.
//
//   gaussian primary:    (n,2)=1 and n == 1 mod (1+i)^3
//   eisenstein primary:  (n,3)=1 and n == 1 mod 3
//   E-primary:           (n,6)=1, n == +-1 mod 3, and for n = a+b*w
//                           a+b == 1 mod 4  if b even
//                           b   == 1 mod 4  if a even
//                           a   == 3 mod 4  if a, b both odd

enum class PrimaryMode { primary, e_primary };

inline bool is_primary(const QInt& n) {
  if (n.ring == Ring::gaussian) {
    if (floor_mod(norm(n), 2) == 0) return false;
    const QInt m{-2, 2, Ring::gaussian};  // (1+i)^3
    return divides(m, n - one(n.ring));
  }
  if (floor_mod(norm(n), 3) == 0) return false;
  return floor_mod(n.a - 1, 3) == 0 && floor_mod(n.b, 3) == 0;
}

// The mod-4 case conditions alone.  They select one of {n, -n} for every
// odd n and are equivalent to the cube criterion
//     n^3 = c + d*w  with  6 | d  and  c + d == 1 mod 4,
// which is invariant under multiplication by cube roots of unity.
inline bool e_primary_parity(const QInt& n) {
  const i128 a = n.a, b = n.b;
  if (floor_mod(b, 2) == 0) return floor_mod(a + b, 4) == 1;
  if (floor_mod(a, 2) == 0) return floor_mod(b, 4) == 1;
  return floor_mod(a, 4) == 3;
}

inline bool is_e_primary(const QInt& n) {
  if (n.ring != Ring::eisenstein)
    throw std::invalid_argument("E-primary is an eisenstein notion");
  const i128 N = norm(n);
  if (floor_mod(N, 2) == 0 || floor_mod(N, 3) == 0) return false;
  // n == +-1 mod 3 cuts the three parity-admissible associates down to one
  const bool plus = floor_mod(n.a - 1, 3) == 0 && floor_mod(n.b, 3) == 0;
  const bool minus = floor_mod(n.a + 1, 3) == 0 && floor_mod(n.b, 3) == 0;
  if (!plus && !minus) return false;
  return e_primary_parity(n);
}

inline bool passes_primary(const QInt& n, PrimaryMode mode) {
  return mode == PrimaryMode::primary ? is_primary(n) : is_e_primary(n);
}

struct Normalized {
  QInt unit;   // u
  QInt value;  // u * n
};

// Unique associate of n passing the requested predicate.  Throws when n is
// not coprime to the defining modulus (2, 3 or 6).
inline Normalized normalize_primary(const QInt& n, PrimaryMode mode) {
  if (n.is_zero()) throw std::invalid_argument("normalize_primary: zero");
  const i128 N = norm(n);
  if (mode == PrimaryMode::e_primary) {
    if (n.ring != Ring::eisenstein)
      throw std::invalid_argument("E-primary needs the eisenstein ring");
    if (gcd128(N, 6) != 1)
      throw std::invalid_argument("normalize_primary: n not coprime to 6");
  } else if (n.ring == Ring::gaussian) {
    if (gcd128(N, 2) != 1)
      throw std::invalid_argument("normalize_primary: n not coprime to 2");
  } else {
    if (gcd128(N, 3) != 1)
      throw std::invalid_argument("normalize_primary: n not coprime to 3");
  }
  for (const QInt& u : units(n.ring)) {
    QInt c = u * n;
    if (passes_primary(c, mode)) return {u, c};
  }
  throw std::logic_error("normalize_primary: no primary associate");
}

inline PrimaryMode primary_mode_for_order(int j) {
  return j == 6 ? PrimaryMode::e_primary : PrimaryMode::primary;
}

// --------------------------------------------------------------------------
// Factorization.  Primes are found by factoring the norm over Z and
// splitting each rational prime by its residue class.  Primes coprime to
// 2 (gaussian) resp. 3 (eisenstein) are reported in primary form, the rest
// as the canonical associate.

struct PrimePower {
  QInt prime;
  int exp;
};

struct Factorization {
  QInt unit;
  std::vector<PrimePower> factors;
};

namespace detail {

// x with x^2 == -1 mod p (p % 4 == 1), or x^2+x+1 == 0 mod p (p % 3 == 1).
// Exhaustive search, memoized per prime.
inline long long quartic_root_mod(long long p) {
  thread_local std::unordered_map<long long, long long> cache;
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  for (long long x = 2; x < p; ++x) {
    if ((x * x + 1) % p == 0) {
      cache.emplace(p, x);
      return x;
    }
  }
  throw std::logic_error("no square root of -1 found");
}

inline long long cubic_root_mod(long long p) {
  thread_local std::unordered_map<long long, long long> cache;
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;
  for (long long x = 2; x < p; ++x) {
    if ((x * x + x + 1) % p == 0) {
      cache.emplace(p, x);
      return x;
    }
  }
  throw std::logic_error("no primitive cube root found");
}

inline QInt raw_gcd(QInt x, QInt y) {
  while (!y.is_zero()) {
    QInt r = divrem(x, y).rem;
    x = y;
    y = r;
  }
  return x;
}

inline QInt normalize_prime(const QInt& pr) {
  const i128 N = norm(pr);
  if (pr.ring == Ring::gaussian) {
    if (gcd128(N, 2) == 1) return normalize_primary(pr, PrimaryMode::primary).value;
  } else {
    if (gcd128(N, 3) == 1) return normalize_primary(pr, PrimaryMode::primary).value;
  }
  return canonical_associate(pr).second;
}

}  // namespace detail

// The two primes above a split rational prime, in normalized form.
// first is the one with theta-image +root, second its conjugate.
inline std::pair<QInt, QInt> split_primes_above(long long p, Ring r) {
  if (r == Ring::gaussian) {
    if (p % 4 != 1) throw std::invalid_argument("p does not split in Z[i]");
    long long x = detail::quartic_root_mod(p);
    QInt pr = detail::raw_gcd(from_int(p, r), QInt{x, -1, r});
    pr = detail::normalize_prime(pr);
    return {pr, detail::normalize_prime(conj(pr))};
  }
  if (p % 3 != 1) throw std::invalid_argument("p does not split in Z[w]");
  long long x = detail::cubic_root_mod(p);
  QInt pr = detail::raw_gcd(from_int(p, r), QInt{x, -1, r});
  pr = detail::normalize_prime(pr);
  return {pr, detail::normalize_prime(conj(pr))};
}

inline QInt ramified_prime(Ring r) {
  // gaussian: 1+i above 2;  eisenstein: 2+w (canonical associate of 1-w) above 3
  return r == Ring::gaussian ? QInt{1, 1, r} : QInt{2, 1, r};
}

inline long long ramified_rational_prime(Ring r) {
  return r == Ring::gaussian ? 2 : 3;
}

inline bool splits(long long p, Ring r) {
  return r == Ring::gaussian ? p % 4 == 1 : p % 3 == 1;
}
inline bool is_inert(long long p, Ring r) {
  return p != ramified_rational_prime(r) && !splits(p, r);
}

inline Factorization factor(const QInt& n) {
  if (n.is_zero()) throw std::invalid_argument("factor: zero");
  Factorization out;
  out.unit = one(n.ring);
  QInt work = n;
  i128 N = norm(n);

  auto strip = [&work](const QInt& pr) {
    int e = 0;
    while (true) {
      DivRem qr = divrem(work, pr);
      if (!qr.rem.is_zero()) break;
      work = qr.quot;
      ++e;
    }
    return e;
  };

  auto handle = [&](long long p, int k) {
    const Ring r = n.ring;
    if (p == ramified_rational_prime(r)) {
      QInt pr = ramified_prime(r);
      int e = strip(pr);
      if (e != k) throw std::logic_error("factor: ramified valuation mismatch");
      out.factors.push_back({pr, e});
      return;
    }
    if (splits(p, r)) {
      auto [pr1, pr2] = split_primes_above(p, r);
      int e1 = strip(pr1);
      int e2 = strip(pr2);
      if (e1 + e2 != k) throw std::logic_error("factor: split valuation mismatch");
      if (e1 > 0) out.factors.push_back({pr1, e1});
      if (e2 > 0) out.factors.push_back({pr2, e2});
      return;
    }
    // inert
    if (k % 2 != 0) throw std::logic_error("factor: odd inert valuation");
    QInt pr = detail::normalize_prime(from_int(p, r));
    int e = strip(pr);
    if (e != k / 2) throw std::logic_error("factor: inert valuation mismatch");
    out.factors.push_back({pr, e});
  };

  for (i128 p = 2; p * p <= N; ++p) {
    if (N % p != 0) continue;
    int k = 0;
    while (N % p == 0) {
      N /= p;
      ++k;
    }
    handle(static_cast<long long>(p), k);
  }
  if (N > 1) handle(static_cast<long long>(N), 1);

  if (!is_unit(work)) throw std::logic_error("factor: cofactor is not a unit");
  out.unit = work;
  std::sort(out.factors.begin(), out.factors.end(),
            [](const PrimePower& x, const PrimePower& y) {
              i128 nx = norm(x.prime), ny = norm(y.prime);
              if (nx != ny) return nx < ny;
              if (x.prime.a != y.prime.a) return x.prime.a < y.prime.a;
              return x.prime.b < y.prime.b;
            });
  return out;
}

inline QInt factorization_product(const Factorization& f, Ring r) {
  QInt prod = f.unit.is_zero() ? one(r) : f.unit;
  for (const auto& pp : f.factors)
    for (int i = 0; i < pp.exp; ++i) prod = prod * pp.prime;
  return prod;
}

inline bool is_squarefree(const QInt& n) {
  if (n.is_zero()) throw std::invalid_argument("is_squarefree: zero");
  for (const auto& pp : factor(n).factors)
    if (pp.exp > 1) return false;
  return true;
}

// True iff some rational prime divides n in O_K (equivalently p | a and
// p | b for the coordinates).
inline bool has_rational_prime_divisor(const QInt& n) {
  if (n.is_zero()) throw std::invalid_argument("has_rational_prime_divisor: zero");
  i128 N = norm(n);
  auto check = [&](i128 p) { return n.a % p == 0 && n.b % p == 0; };
  for (i128 p = 2; p * p <= N; ++p) {
    if (N % p != 0) continue;
    while (N % p == 0) N /= p;
    if (check(p)) return true;
  }
  if (N > 1 && check(N)) return true;
  return false;
}

// --------------------------------------------------------------------------
// gcd, normalized: primary form when coprime to 2 (gaussian) / 3
// (eisenstein), otherwise the canonical associate.

inline QInt gcd(const QInt& x, const QInt& y) {
  require_same_ring(x, y);
  QInt g = detail::raw_gcd(x, y);
  if (g.is_zero()) return g;
  const i128 N = norm(g);
  const i128 m = x.ring == Ring::gaussian ? 2 : 3;
  if (gcd128(N, m) == 1) return normalize_primary(g, PrimaryMode::primary).value;
  return canonical_associate(g).second;
}

inline bool coprime(const QInt& x, const QInt& y) {
  return is_unit(detail::raw_gcd(x, y));
}

// --------------------------------------------------------------------------
// Modular exponentiation: base^e mod m (representative from divrem).

inline QInt pow_mod(QInt base, i128 e, const QInt& m) {
  if (e < 0) throw std::invalid_argument("pow_mod: negative exponent");
  QInt acc = divrem(one(m.ring), m).rem;
  base = divrem(base, m).rem;
  while (e > 0) {
    if (e & 1) acc = divrem(acc * base, m).rem;
    base = divrem(base * base, m).rem;
    e >>= 1;
  }
  return acc;
}

// --------------------------------------------------------------------------
// Text format: "a+b*i" / "a+b*w" with optional signs; parsing is exact.

inline std::string format_qint(const QInt& x) {
  std::string s = to_string(x.a);
  s += x.b < 0 ? '-' : '+';
  s += to_string(abs128(x.b));
  s += '*';
  s += generator_letter(x.ring);
  return s;
}

inline QInt parse_qint(const std::string& text, Ring ring) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty element literal");
  i128 a = 0, b = 0;
  std::size_t pos = 0;
  bool any = false;
  while (pos < s.size()) {
    i128 sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    if (pos >= s.size() || s[pos] < '0' || s[pos] > '9')
      throw std::invalid_argument("bad element literal: " + text);
    i128 v = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      v = v * 10 + (s[pos] - '0');
      ++pos;
    }
    if (pos < s.size() && s[pos] == '*') {
      ++pos;
      if (pos >= s.size() || s[pos] != generator_letter(ring))
        throw std::invalid_argument("bad generator letter in: " + text);
      ++pos;
      b += sign * v;
    } else {
      a += sign * v;
    }
    any = true;
  }
  if (!any) throw std::invalid_argument("bad element literal: " + text);
  return {a, b, ring};
}

}  // namespace lfm
