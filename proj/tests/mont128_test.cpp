#include <gtest/gtest.h>

#include <random>

#include "wilson4/exact_arith.hpp"
#include "wilson4/mont128.hpp"

using namespace wilson4;

namespace {

u128 draw(std::mt19937_64& rng, u128 n) {
  const u128 x = (static_cast<u128>(rng()) << 64) | rng();
  return x % n;
}

}  // namespace

TEST(Montgomery128, MulMatchesGmp) {
  std::mt19937_64 rng(3);
  for (std::uint64_t p : {3ull, 7ull, 1009ull, 10037ull, 120011ull, 1000003ull}) {
    for (int e = 1; e <= 4; ++e) {
      const Integer n = prime_power(p, e);
      const Montgomery128 m(to_u128(n));
      for (int i = 0; i < 200; ++i) {
        const u128 a = draw(rng, to_u128(n)), b = draw(rng, to_u128(n));
        const u128 got = m.from_mont(m.mul(m.to_mont(a), m.to_mont(b)));
        EXPECT_EQ(from_u128(got), from_u128(a) * from_u128(b) % n);
        EXPECT_EQ(from_u128(m.from_mont(m.add(m.to_mont(a), m.to_mont(b)))), (from_u128(a) + from_u128(b)) % n);
        Integer diff = (from_u128(a) - from_u128(b)) % n;
        if (diff < 0) diff += n;
        EXPECT_EQ(from_u128(m.from_mont(m.sub(m.to_mont(a), m.to_mont(b)))), diff);
      }
    }
  }
}

TEST(Montgomery128, NearTopOfRange) {
  // Largest odd modulus the kernel accepts sits just under 2^127.
  const Integer n = (Integer(1) << 127) - 1;
  const Montgomery128 m(to_u128(n));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const u128 a = draw(rng, to_u128(n)), b = draw(rng, to_u128(n));
    EXPECT_EQ(from_u128(m.from_mont(m.mul(m.to_mont(a), m.to_mont(b)))), from_u128(a) * from_u128(b) % n);
  }
}

TEST(Montgomery128, PowMatchesModPow) {
  const Integer n = prime_power(10037, 4);
  const Montgomery128 m(to_u128(n));
  for (std::uint64_t base : {2ull, 3ull, 10036ull}) {
    for (std::uint64_t e : {0ull, 1ull, 10036ull, 123456789ull}) {
      EXPECT_EQ(from_u128(m.from_mont(m.pow(m.to_mont(base), e))), mod_pow(base, Integer(std::to_string(e)), n).value());
    }
  }
}
