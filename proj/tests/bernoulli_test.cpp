#include <gtest/gtest.h>

#include "support/test_oracles.hpp"
#include "wilson4/bernoulli.hpp"
#include "wilson4/errors.hpp"

using namespace wilson4;
using oracle_test::bernoulli_recurrence;

TEST(BernoulliExact, KnownValues) {
  EXPECT_EQ(bernoulli_exact(0), 1);
  EXPECT_EQ(bernoulli_exact(1), Rational(-1, 2));
  EXPECT_EQ(bernoulli_exact(3), 0);
  EXPECT_EQ(bernoulli_exact(12), Rational(-691, 2730));
}

TEST(BernoulliExact, MatchesRecurrence) {
  for (int n = 0; n <= 160; ++n) EXPECT_EQ(bernoulli_exact(n), bernoulli_recurrence(n)) << n;
  EXPECT_EQ(bernoulli_exact(300), bernoulli_recurrence(300));
}

TEST(DividedBernoulli, KnownValues) {
  EXPECT_EQ(divided_bernoulli_exact(2), Rational(1, 12));
  EXPECT_EQ(divided_bernoulli_exact(10), Rational(1, 132));
  EXPECT_EQ(divided_bernoulli_exact(5), 0);
}

TEST(VonStaudt, DenominatorsMatchExactBernoulli) {
  EXPECT_EQ(von_staudt_denominator(2), 6);
  EXPECT_EQ(von_staudt_denominator(4), 30);
  EXPECT_EQ(von_staudt_denominator(12), 2730);
  for (int n = 2; n <= 200; n += 2) {
    EXPECT_EQ(von_staudt_denominator(n), bernoulli_recurrence(n).get_den()) << n;
  }
}

TEST(BernoulliTable, SmallExamples) {
  const auto t11 = build_table(11, 30, 4);
  EXPECT_EQ(t11.entry(10).reduce_to(11).value(), 10);

  const auto t7 = build_table(7, 18, 4);
  EXPECT_EQ(t7.entry(4), rat_reduce(Rational(-7, 30), 7, 4));

  // p B_{2(p-1)} = -(p-1) + 2 p B_{p-1} mod p^2.
  const std::uint64_t p = 13;
  const auto t13 = build_table(p, 36, 4);
  const Integer m2 = prime_power(p, 2);
  EXPECT_EQ(t13.entry(24).reduce_to(m2), Residue(Integer(1 - 13) + 2 * t13.entry(12).value(), m2));
}

TEST(BernoulliTable, MatchesExactForSmallPrimes) {
  for (std::uint64_t p : oracle_test::primes_in(7, 101)) {
    const int nmax = static_cast<int>(3 * (p - 1));
    const auto t = build_table(p, nmax, kMaxTableExponent);
    ASSERT_EQ(t.nmax(), nmax);
    for (int k = 0; k <= nmax; ++k) {
      const Rational pb = Rational(Integer(p)) * bernoulli_recurrence(k);
      ASSERT_EQ(t.entry(k), Residue(oracle_test::reduce(pb, t.modulus()), t.modulus())) << "p=" << p << " k=" << k;
    }
  }
}

TEST(BernoulliTable, ResidueInvariants) {
  for (std::uint64_t p : {7ull, 31ull, 173ull, 1009ull}) {
    const auto t = build_table(p, static_cast<int>(3 * (p - 1)), 4);
    for (int k = 2; k <= t.nmax(); k += 2) {
      const Integer r = t.entry(k).reduce_to(p).value();
      if (k % static_cast<int>(p - 1) == 0) {
        EXPECT_EQ(r, Integer(p - 1)) << "p=" << p << " k=" << k;
      } else {
        EXPECT_EQ(r, 0) << "p=" << p << " k=" << k;
      }
    }
  }
}

TEST(BernoulliTable, ExactTableAgreesWithDescent) {
  for (std::uint64_t p : {7ull, 11ull, 13ull}) {
    const int nmax = static_cast<int>(3 * (p - 1));
    const auto a = build_table(p, nmax, 5), b = exact_table(p, nmax, 5);
    for (int k = 0; k <= nmax; ++k) EXPECT_EQ(a.entry(k), b.entry(k));
  }
}

TEST(BernoulliTable, Guards) {
  EXPECT_THROW(build_table(7, 18, 6), InsufficientPrecision);
  EXPECT_THROW(build_table(5, 12, 4), Error);
  EXPECT_NO_THROW(exact_table(5, 12, 4));
}
