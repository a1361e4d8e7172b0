#pragma once

// j-th order power residue symbols (m/n)_j for j in {2,3,4,6}.
//
// Baseline route: factor n and evaluate the defining congruence
//     (m/pi)_j == m^((N(pi)-1)/j)  mod pi
// at each prime, extended completely multiplicatively in n.
//
// Fast route: flip-and-reduce with the quartic/cubic/sextic reciprocity
// laws; unit and ramified-prime contributions are still evaluated through
// the factorization-based definition.  Both routes implement the same
// contract and serve as cross-oracles for each other.

#include <stdexcept>

#include "rings.hpp"
#include "root_of_unity.hpp"

namespace lfm {

inline Ring ring_for_order(int j) {
  switch (j) {
    case 4:
      return Ring::gaussian;
    case 2:
    case 3:
    case 6:
      return Ring::eisenstein;
    default:
      throw std::invalid_argument("symbol order must be 2, 3, 4 or 6");
  }
}

// Primitive j-th root of unity in the matching ring.
inline QInt zeta_root(int j) {
  switch (j) {
    case 2:
      return {-1, 0, Ring::eisenstein};
    case 3:
      return {0, 1, Ring::eisenstein};  // w
    case 4:
      return {0, 1, Ring::gaussian};  // i
    case 6:
      return {1, 1, Ring::eisenstein};  // 1 + w = -w^2
    default:
      throw std::invalid_argument("symbol order must be 2, 3, 4 or 6");
  }
}

inline void validate_symbol_modulus(const QInt& n, int j) {
  if (n.ring != ring_for_order(j))
    throw std::invalid_argument("ring does not match symbol order");
  if (n.is_zero()) throw std::invalid_argument("symbol modulus is zero");
  if (gcd128(norm(n), j) != 1)
    throw std::invalid_argument("norm of modulus not coprime to symbol order");
}

namespace detail {

// (m/pi)_j at a prime pi: exponent k of zeta_j, or -1 when pi | m.
inline int prime_symbol(const QInt& m, const QInt& pi, int j) {
  const i128 N = norm(pi);
  const i128 e = (N - 1) / j;  // integral whenever gcd(N, j) = 1
  QInt t = pow_mod(m, e, pi);
  if (t.is_zero()) return -1;
  QInt z = one(pi.ring);
  const QInt zeta = zeta_root(j);
  for (int k = 0; k < j; ++k) {
    if (divides(pi, t - z)) return k;
    z = z * zeta;
  }
  throw std::logic_error("residue symbol value is not a root of unity");
}

}  // namespace detail

// (m/n)_j by factorization + modular exponentiation.
inline RootOfUnity residue_symbol(const QInt& m, const QInt& n, int j) {
  validate_symbol_modulus(n, j);
  require_same_ring(m, n);
  if (is_unit(n)) return RootOfUnity::one_of(j);
  i128 k = 0;
  for (const auto& pp : factor(n).factors) {
    int s = detail::prime_symbol(m, pp.prime, j);
    if (s < 0) return RootOfUnity::zero_of(j);
    k += static_cast<i128>(pp.exp) * s;
  }
  return RootOfUnity::make(j, k);
}

// Convenience overload for rational arguments.
inline RootOfUnity residue_symbol(i128 m, const QInt& n, int j) {
  return residue_symbol(from_int(m, n.ring), n, j);
}

namespace detail {

inline RootOfUnity fast_symbol_impl(QInt m, QInt n, int j) {
  // invariant: n is primary (j = 3, 4) or E-primary (j = 6) and a valid
  // modulus for order j.
  const Ring ring = n.ring;
  const PrimaryMode mode = primary_mode_for_order(j);
  const QInt ram = ramified_prime(ring);
  const QInt two = from_int(2, ring);
  i128 k = 0;

  while (true) {
    if (is_unit(n)) return RootOfUnity::make(j, k);
    m = divrem(m, n).rem;
    if (m.is_zero()) return RootOfUnity::zero_of(j);

    // Split off ramified-prime powers (and inert 2 for the sextic symbol),
    // then the unit fixed by primary normalization.
    i128 e_ram = 0;
    while (true) {
      DivRem qr = divrem(m, ram);
      if (!qr.rem.is_zero()) break;
      m = qr.quot;
      ++e_ram;
    }
    i128 e_two = 0;
    if (j == 6) {
      while (true) {
        DivRem qr = divrem(m, two);
        if (!qr.rem.is_zero()) break;
        m = qr.quot;
        ++e_two;
      }
    }
    Normalized nm = normalize_primary(m, mode);
    const QInt m0 = nm.value;

    if (e_ram > 0) {
      RootOfUnity s = residue_symbol(ram, n, j);
      if (s.is_zero()) return RootOfUnity::zero_of(j);  // unreachable: (n, ram) = 1
      k += e_ram * s.k;
    }
    if (e_two > 0) {
      RootOfUnity s = residue_symbol(two, n, j);
      if (s.is_zero()) return RootOfUnity::zero_of(j);
      k += e_two * s.k;
    }
    if (nm.unit != one(ring)) {
      // m = unit_inverse(u) * (stripped parts) * m0
      RootOfUnity s = residue_symbol(unit_inverse(nm.unit), n, j);
      k += s.k;
    }

    // Reciprocity flip: (m0/n)_j = (n/m0)_j * sign.
    if (j == 4) {
      i128 an = (norm(n) - 1) / 4;
      i128 am = (norm(m0) - 1) / 4;
      k += 2 * floor_mod(an, 2) * floor_mod(am, 2);  // (-1)^(an*am) = zeta_4^(2*an*am)
    } else if (j == 6) {
      i128 an = (norm(n) - 1) / 2;
      i128 am = (norm(m0) - 1) / 2;
      k += 3 * floor_mod(an, 2) * floor_mod(am, 2);
    }
    QInt next_m = n;
    n = m0;
    m = next_m;
  }
}

}  // namespace detail

// Same contract as residue_symbol, computed through the reciprocity laws.
inline RootOfUnity residue_symbol_fast(const QInt& m, const QInt& n, int j) {
  validate_symbol_modulus(n, j);
  require_same_ring(m, n);
  if (is_unit(n)) return RootOfUnity::one_of(j);
  if (j == 2) {
    // (m/n)_2 = (m/n)_6^3 when n is also coprime to 3; otherwise fall back.
    if (gcd128(norm(n), 3) != 1) return residue_symbol(m, n, 2);
    RootOfUnity s = residue_symbol_fast(m, n, 6).pow(3);
    if (s.is_zero()) return RootOfUnity::zero_of(2);
    return RootOfUnity::make(2, s.k / 3);
  }
  const Normalized nn = normalize_primary(n, primary_mode_for_order(j));
  return detail::fast_symbol_impl(m, nn.value, j);
}

inline RootOfUnity residue_symbol_fast(i128 m, const QInt& n, int j) {
  return residue_symbol_fast(from_int(m, n.ring), n, j);
}

// Checks the reciprocity law for one admissible pair; throws when the pair
// does not satisfy the law's preconditions.
inline bool verify_reciprocity(const QInt& m, const QInt& n, int j) {
  if (j != 3 && j != 4 && j != 6)
    throw std::invalid_argument("reciprocity law needs j in {3,4,6}");
  validate_symbol_modulus(n, j);
  validate_symbol_modulus(m, j);
  const PrimaryMode mode = primary_mode_for_order(j);
  if (!passes_primary(m, mode) || !passes_primary(n, mode))
    throw std::invalid_argument("reciprocity: operands must be primary");
  if (!coprime(m, n)) throw std::invalid_argument("reciprocity: operands not coprime");
  if (j == 4 && (gcd128(norm(m) * norm(n), 2)) != 1)
    throw std::invalid_argument("reciprocity: operands must be odd");

  RootOfUnity lhs = residue_symbol(n, m, j);
  RootOfUnity rhs = residue_symbol(m, n, j);
  if (j == 4) {
    i128 e = ((norm(n) - 1) / 4) * ((norm(m) - 1) / 4);
    rhs = rhs * RootOfUnity::make(4, 2 * floor_mod(e, 2));
  } else if (j == 6) {
    i128 e = ((norm(n) - 1) / 2) * ((norm(m) - 1) / 2);
    rhs = rhs * RootOfUnity::make(6, 3 * floor_mod(e, 2));
  }
  return lhs == rhs;
}

// chi_j^(m)(d) = 1 for coprime rational m, d with (md, j) = 1; returns the
// outcome of checking it on one pair.
inline bool rational_symbol_is_one(i128 m, i128 d, int j) {
  if (j != 3 && j != 4 && j != 6)
    throw std::invalid_argument("rational symbol check needs j in {3,4,6}");
  if (gcd128(m * d, j) != 1)
    throw std::invalid_argument("rational symbol check: md not coprime to j");
  if (gcd128(m, d) != 1)
    throw std::invalid_argument("rational symbol check: m, d not coprime");
  const Ring ring = ring_for_order(j);
  if (abs128(d) == 1) return true;
  return residue_symbol(from_int(m, ring), from_int(d, ring), j).is_one();
}

}  // namespace lfm
