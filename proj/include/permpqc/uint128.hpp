#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace permpqc {

// Exponents live in Z_omega where omega ~ 3.26e19 exceeds 64 bits, so all
// exponent arithmetic is done with 128-bit semantics.
using u128 = unsigned __int128;

inline constexpr u128 u128_max = ~static_cast<u128>(0);

inline std::string to_string(u128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value != 0) {
    out.push_back(static_cast<char>('0' + static_cast<unsigned>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

inline u128 parse_u128(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("parse_u128: empty string");
  u128 value = 0;
  for (char c : text) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("parse_u128: bad digit in \"" + std::string(text) + "\"");
    const unsigned d = static_cast<unsigned>(c - '0');
    if (value > (u128_max - d) / 10)
      throw std::overflow_error("parse_u128: value exceeds 128 bits");
    value = value * 10 + d;
  }
  return value;
}

// (a + b) mod m for a, b already reduced.
inline u128 addmod(u128 a, u128 b, u128 m) {
  return (a >= m - b) ? a - (m - b) : a + b;
}

// (a * b) mod m. The product of two reduced values can exceed 128 bits
// (omega^2 ~ 1.06e39), so fall back to double-and-add when it would.
inline u128 mulmod(u128 a, u128 b, u128 m) {
  if (m == 0) throw std::invalid_argument("mulmod: zero modulus");
  a %= m;
  b %= m;
  if (a == 0 || b == 0) return 0;
  if (a <= u128_max / b) return (a * b) % m;
  u128 acc = 0;
  while (b != 0) {
    if (b & 1) acc = addmod(acc, a, m);
    b >>= 1;
    if (b != 0) a = addmod(a, a, m);
  }
  return acc;
}

}  // namespace permpqc
