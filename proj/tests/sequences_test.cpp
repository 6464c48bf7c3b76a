#include <gtest/gtest.h>

#include "support/test_oracles.hpp"
#include "wilson4/errors.hpp"
#include "wilson4/sequences.hpp"

using namespace wilson4;

TEST(SumPowers, SmallValues) {
  EXPECT_EQ(sum_powers(5, 1, 2).value(), 10);
  EXPECT_EQ(sum_powers(7, 0, 1).value(), 6);
}

TEST(SumPowers, MatchesExactSums) {
  for (std::uint64_t p : oracle_test::primes_in(3, 61)) {
    for (int k = 0; k <= static_cast<int>(3 * p); ++k) {
      for (int e = 1; e <= 5; ++e) {
        const Integer m = prime_power(p, e);
        ASSERT_EQ(sum_powers(p, k, e).value(), oracle_test::power_sum(p, k) % m) << p << ' ' << k << ' ' << e;
      }
    }
  }
}

TEST(Harmonic, WolstenholmeExamples) {
  EXPECT_EQ(harmonic(5, 1, 2).value(), 0);
  EXPECT_EQ(harmonic(7, 2, 1).value(), 0);
  for (std::uint64_t p : oracle_test::primes_in(5, 211)) {
    EXPECT_EQ(harmonic(p, 1, 2).value(), 0) << p;
    EXPECT_EQ(harmonic(p, 2, 1).value(), 0) << p;
  }
}

TEST(Harmonic, MatchesExactRationalSums) {
  for (std::uint64_t p : oracle_test::primes_in(3, 43)) {
    for (int k = 1; k <= static_cast<int>(p - 1); ++k) {
      const Rational h = oracle_test::harmonic(p, k);
      for (int e = 1; e <= 4; ++e) {
        const Integer m = prime_power(p, e);
        ASSERT_EQ(harmonic(p, k, e).value(), oracle_test::reduce(h, m)) << p << ' ' << k;
      }
    }
  }
}

TEST(Stirling, ExactValues) {
  EXPECT_EQ(stirling_exact(5, 2), 35);
  for (std::uint64_t p : oracle_test::primes_in(3, 61)) {
    EXPECT_EQ(stirling_exact(p, 1), Integer(p * (p - 1) / 2));
    EXPECT_EQ(stirling_exact(p, static_cast<int>(p - 1)), oracle_test::factorial(p - 1));
    const auto e = oracle_test::elementary(oracle_test::naturals(p));
    const auto row = stirling_exact_row(p, static_cast<int>(p - 1));
    for (int k = 1; k <= static_cast<int>(p - 1); ++k) {
      ASSERT_EQ(Rational(row[k]), e[k]);
      EXPECT_EQ(stirling_mod(p, k, 4).value(), row[k] % prime_power(p, 4));
    }
  }
  EXPECT_THROW(stirling_exact(2003, 3), Error);
  EXPECT_THROW(stirling_exact(7, 7), Error);
}

TEST(Mhs, KnownValues) {
  EXPECT_EQ(mhs(11, 6, 4).value(), 2068);
  EXPECT_EQ(mhs(11, 8, 4).value(), 5456);
}

TEST(Mhs, MatchesExactElementarySums) {
  for (std::uint64_t p : oracle_test::primes_in(3, 43)) {
    const auto e = oracle_test::elementary(oracle_test::reciprocals(p));
    for (int k = 1; k <= static_cast<int>(p - 1); ++k) {
      for (int ex = 1; ex <= 4; ++ex) {
        ASSERT_EQ(mhs(p, k, ex).value(), oracle_test::reduce(e[k], prime_power(p, ex))) << p << ' ' << k;
      }
    }
  }
}

TEST(Mhs, TopIndexIsInverseFactorial) {
  for (std::uint64_t p : oracle_test::primes_in(3, 211)) {
    for (int e = 1; e <= 4; ++e) {
      const Integer m = prime_power(p, e);
      EXPECT_EQ(mhs(p, static_cast<int>(p - 1), e), mod_inv(factorial_mod(p, e).value(), m));
      EXPECT_EQ((mhs(p, static_cast<int>(p - 1), e) * factorial_mod(p, e)).value(), m == 1 ? 0 : 1);
    }
  }
}

TEST(FactorialMod, MatchesProduct) {
  for (std::uint64_t p : oracle_test::primes_in(3, 300)) {
    const Integer f = oracle_test::factorial(p - 1);
    for (int e = 1; e <= 4; ++e) EXPECT_EQ(factorial_mod(p, e).value(), f % prime_power(p, e));
  }
}

TEST(FermatQuotients, DefiningRelation) {
  for (std::uint64_t p : oracle_test::primes_in(3, 211)) {
    const auto q = fermat_quotients(p);
    ASSERT_EQ(q.size(), p - 1);
    const Integer m = prime_power(p, 2);
    for (std::uint64_t a = 1; a < p; ++a) {
      EXPECT_LT(q[a - 1], p);
      EXPECT_EQ(mod_pow(a, p - 1, m).value(), (1 + Integer(p) * q[a - 1]) % m);
    }
  }
}

TEST(Newton, BothHalvesHold) {
  EXPECT_TRUE(newton_check(7, 3, 4).pass);
  EXPECT_TRUE(newton_check(11, 10, 4).pass);
  const auto r = newton_check(13, 1, 4);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(mhs(13, 1, 4), harmonic(13, 1, 4));
  for (std::uint64_t p : oracle_test::primes_in(3, 31)) {
    for (int k = 1; k <= static_cast<int>(p - 1); ++k) EXPECT_TRUE(newton_check(p, k, 4).pass) << p << ' ' << k;
  }
}

TEST(PrimeContext, Contents) {
  const PrimeContext c(13, 36);
  EXPECT_EQ(c.prime(), 13u);
  EXPECT_EQ(c.wilson_digits().first, 0);
  EXPECT_EQ(c.agoh_giuga(), agoh_giuga_q1(13));
  const Integer w = (oracle_test::factorial(12) + 1) / 13;
  EXPECT_EQ(c.wilson_quotient().reduce(3).value(), w % prime_power(13, 3));
  for (std::uint64_t a = 1; a < 13; ++a) EXPECT_EQ(c.fermat_quotient(a), fermat_quotients(13)[a - 1]);
  for (int k = 2; k <= 36; k += 2) {
    const Rational b = oracle_test::divided(k);
    const PAdic d = c.divided(k);
    const PAdic expect = PAdic::from_rational(b, 13, d.precision());
    EXPECT_EQ((d - expect).valuation(), d.precision()) << k;
  }
}
