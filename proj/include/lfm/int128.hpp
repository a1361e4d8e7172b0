#pragma once

// Signed 128-bit helpers. Ring coordinates are kept in __int128 so that all
// desk-scale norms (<= 1e12) multiply with ample headroom.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lfm {

using i128 = __int128;

inline i128 abs128(i128 x) { return x < 0 ? -x : x; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Nearest-integer division for d > 0 (ties round toward +infinity).
inline i128 round_div(i128 n, i128 d) {
  i128 num = 2 * n + d;
  i128 den = 2 * d;
  i128 q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

inline i128 floor_mod(i128 n, i128 d) {
  i128 r = n % d;
  return r < 0 ? r + d : r;
}

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v)
                            : static_cast<unsigned __int128>(v);
  char buf[48];
  int pos = 48;
  while (u > 0) {
    buf[--pos] = static_cast<char>('0' + static_cast<int>(u % 10));
    u /= 10;
  }
  std::string s;
  if (neg) s.push_back('-');
  s.append(buf + pos, buf + 48);
  return s;
}

}  // namespace lfm
