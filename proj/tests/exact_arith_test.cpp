#include <gtest/gtest.h>

#include <random>

#include "support/test_oracles.hpp"
#include "wilson4/errors.hpp"
#include "wilson4/exact_arith.hpp"

using namespace wilson4;

TEST(ModPow, SmallCases) {
  EXPECT_EQ(mod_pow(2, 4, 5).value(), 1);
  EXPECT_EQ(mod_pow(7, 0, 13).value(), 1);
}

TEST(ModPow, MatchesRepeatedMultiplication) {
  const Integer m = prime_power(19, 4);
  Integer x = 1;
  for (int i = 0; i < 19; ++i) x = x * 10 % m;
  EXPECT_EQ(mod_pow(10, 19, m).value(), x);
}

TEST(ModPow, NegativeBaseIsCanonical) {
  EXPECT_EQ(mod_pow(-2, 3, 11).value(), 3);  // -8 = 3 mod 11
}

TEST(ModInv, KnownValues) {
  EXPECT_EQ(mod_inv(6, 49).value(), 41);
  EXPECT_EQ(mod_inv(6, 49).value(), oracle_test::egcd_inverse(6, 49));
  EXPECT_EQ(mod_inv(1, 1000003).value(), 1);
  EXPECT_THROW(mod_inv(5, 25), NotInvertible);
}

TEST(ModInv, RandomCoprimePairs) {
  std::mt19937_64 rng(20261018);
  for (int i = 0; i < 500; ++i) {
    const Integer m = Integer(static_cast<unsigned long>(rng() % 1000000 + 2));
    const Integer a = Integer(static_cast<unsigned long>(rng() % 10000000));
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (g != 1) {
      EXPECT_THROW(mod_inv(a, m), NotInvertible);
      continue;
    }
    const Residue x = mod_inv(a, m);
    EXPECT_EQ(x.value() * a % m, m == 1 ? 0 : 1);
    EXPECT_EQ(x.value(), oracle_test::egcd_inverse(a, m));
  }
}

TEST(RatReduce, KnownValues) {
  EXPECT_EQ(rat_reduce(Rational(1, 6), 7, 2).value(), 41);
  EXPECT_EQ(rat_reduce(Rational(-1, 120), 7, 1).value(), 6);
  EXPECT_EQ(rat_reduce(Rational(3), 5, 2).value(), 3);
  EXPECT_THROW(rat_reduce(Rational(1, 14), 7, 2), DenominatorDivisible);
}

TEST(RatReduce, IsAdditiveAndMultiplicative) {
  std::mt19937_64 rng(7);
  for (std::uint64_t p : {5ull, 7ull, 13ull, 101ull}) {
    for (int i = 0; i < 200; ++i) {
      const auto draw = [&] {
        long num = static_cast<long>(rng() % 100000) - 50000;
        long den = static_cast<long>(rng() % 5000) + 1;
        while (den % static_cast<long>(p) == 0) ++den;
        return make_rational(num, den);
      };
      const Rational a = draw(), b = draw();
      for (int e = 1; e <= 4; ++e) {
        EXPECT_EQ(rat_reduce(Rational(a + b), p, e), rat_reduce(a, p, e) + rat_reduce(b, p, e));
        EXPECT_EQ(rat_reduce(Rational(a * b), p, e), rat_reduce(a, p, e) * rat_reduce(b, p, e));
      }
    }
  }
}

TEST(Valuation, KnownValues) {
  EXPECT_EQ(valuation(Rational(50), 5), 2);
  EXPECT_EQ(valuation(Rational(1, 3), 3), -1);
  EXPECT_EQ(valuation(Rational(10), 7), 0);
  EXPECT_THROW(valuation(Rational(0), 7), ZeroInput);
}

TEST(Valuation, AddsUnderProducts) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Rational a = make_rational(static_cast<long>(rng() % 99999) + 1, static_cast<long>(rng() % 9999) + 1);
    const Rational b = make_rational(static_cast<long>(rng() % 99999) + 1, static_cast<long>(rng() % 9999) + 1);
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
      EXPECT_EQ(valuation(Rational(a * b), p), valuation(a, p) + valuation(b, p));
    }
  }
}

TEST(Residue, CanonicalAndGuarded) {
  const Residue a(-1, 25);
  EXPECT_EQ(a.value(), 24);
  EXPECT_EQ((a + Residue(3, 25)).value(), 2);
  EXPECT_EQ((-a).value(), 1);
  EXPECT_EQ(a.reduce_to(5).value(), 4);
  EXPECT_THROW(a + Residue(1, 125), ModulusMismatch);
  EXPECT_THROW(a * Residue(1, 5), ModulusMismatch);
  EXPECT_FALSE(Residue(1, 5) == Residue(1, 25));
}

TEST(Primality, TrialDivision) {
  const auto ref = oracle_test::primes_in(0, 3000);
  std::vector<std::uint64_t> got;
  for (std::uint64_t n = 0; n <= 3000; ++n) {
    if (is_prime(n)) got.push_back(n);
  }
  EXPECT_EQ(got, ref);
  EXPECT_TRUE(is_prime(10037));
  EXPECT_TRUE(is_prime(120011));
  EXPECT_FALSE(is_prime(10037ull * 10039ull));
}

TEST(Binomial, SmallRows) {
  EXPECT_EQ(binomial(24, 12), 2704156);
  EXPECT_EQ(factorial(12), 479001600);
  EXPECT_EQ(binomial(5, 7), 0);
}
