#pragma once

// Montgomery multiplication for odd moduli below 2^127, R = 2^128.
// Covers p^6 for every prime up to ~2.2e6, which is far beyond what the
// table builder is asked to handle.

#include <cstdint>

#include "wilson4/exact_arith.hpp"

namespace wilson4 {

using u128 = unsigned __int128;

class Montgomery128 {
 public:
  explicit Montgomery128(u128 modulus);

  u128 modulus() const { return n_; }

  u128 to_mont(u128 a) const { return mul(a % n_, r2_); }
  u128 from_mont(u128 a) const { return redc(0, a); }
  u128 one() const { return one_; }

  u128 mul(u128 a, u128 b) const {
    u128 hi, lo;
    mul_wide(a, b, hi, lo);
    return redc(hi, lo);
  }
  u128 add(u128 a, u128 b) const {
    u128 s = a + b;  // a, b < n < 2^127: no wraparound
    return s >= n_ ? s - n_ : s;
  }
  u128 sub(u128 a, u128 b) const { return a >= b ? a - b : a + (n_ - b); }

  u128 pow(u128 base_mont, std::uint64_t e) const;

  static void mul_wide(u128 a, u128 b, u128& hi, u128& lo) {
    const std::uint64_t a0 = static_cast<std::uint64_t>(a), a1 = static_cast<std::uint64_t>(a >> 64);
    const std::uint64_t b0 = static_cast<std::uint64_t>(b), b1 = static_cast<std::uint64_t>(b >> 64);
    const u128 p00 = static_cast<u128>(a0) * b0;
    const u128 p01 = static_cast<u128>(a0) * b1;
    const u128 p10 = static_cast<u128>(a1) * b0;
    const u128 p11 = static_cast<u128>(a1) * b1;
    const u128 mid = (p00 >> 64) + static_cast<std::uint64_t>(p01) + static_cast<std::uint64_t>(p10);
    lo = (mid << 64) | static_cast<std::uint64_t>(p00);
    hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
  }

 private:
  // (hi*2^128 + lo) / 2^128 mod n, for inputs below n*2^128.
  u128 redc(u128 hi, u128 lo) const {
    const u128 m = lo * ninv_;
    u128 mh, ml;
    mul_wide(m, n_, mh, ml);
    const u128 carry = (lo + ml < lo) ? 1 : 0;
    u128 t = hi + mh + carry;
    return t >= n_ ? t - n_ : t;
  }

  u128 n_;
  u128 ninv_;  // -n^{-1} mod 2^128
  u128 r2_;    // 2^256 mod n
  u128 one_;   // 2^128 mod n
};

u128 to_u128(const Integer& v);
Integer from_u128(u128 v);

}  // namespace wilson4
