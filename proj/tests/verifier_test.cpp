#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support/test_oracles.hpp"
#include "wilson4/errors.hpp"
#include "wilson4/verifier.hpp"

using namespace wilson4;

TEST(Registry, IdsAreUnique) {
  std::set<std::string> seen;
  for (const auto& c : registry()) {
    EXPECT_TRUE(seen.insert(c.id).second) << c.id;
    EXPECT_GE(c.min_prime, 3u);
    EXPECT_TRUE(c.cases && c.evaluate) << c.id;
    EXPECT_FALSE(c.covers.empty()) << c.id;
  }
}

TEST(Registry, CoversEveryItem) {
  const std::vector<std::string> items = {
      "R1",  "R2",  "R3",     "R4",     "R5",     "R6",      "R7",      "R8",   "R9",   "R10", "R11",
      "R12", "R13", "R14",    "R15",    "P1",     "P2",      "T1",      "T2",   "T3",   "T4",  "T5",
      "T6",  "L1",  "L2",     "C1",     "C2",     "MT1.i",   "MT1.ii",  "MT2.Hp3", "MT2.Hp1", "MT3",
      "EQ60", "EQ70", "EQ73", "EQ89",   "EQ90",   "MIKI",    "NEWTON"};
  std::set<std::string> covered;
  for (const auto& c : registry()) covered.insert(c.covers.begin(), c.covers.end());
  for (const auto& item : items) EXPECT_TRUE(covered.count(item)) << "no check covers " << item;
}

TEST(Registry, SpecIdsExist) {
  for (const char* id : {"MT3", "R4.wolstenholme1", "T2.iii", "K2", "EM", "MIKI", "EQ73"}) {
    EXPECT_NO_THROW(find_check(id)) << id;
  }
  EXPECT_THROW(find_check("R99"), UnknownCheck);
}

TEST(RunCheck, Examples) {
  const auto mt3 = run_check("MT3", 19);
  EXPECT_TRUE(mt3.pass);
  EXPECT_EQ(mt3.lhs.value(), 93175);
  EXPECT_EQ(mt3.rhs.value(), 93175);
  EXPECT_EQ(mt3.e, 4);

  const auto w = run_check("R4.wolstenholme1", 5);
  EXPECT_TRUE(w.pass);
  EXPECT_EQ(w.lhs, Residue(0, 25));
  EXPECT_EQ(w.rhs, Residue(0, 25));

  EXPECT_THROW(run_check("MT3", 3), PrimeTooSmall);
  EXPECT_THROW(run_check("MT3", 21), NotPrime);
  EXPECT_THROW(run_check("nope", 19), UnknownCheck);
}

TEST(RunCheck, PassMatchesResidueEquality) {
  for (const auto& r : Verifier().run_cases("R7", 23)) {
    EXPECT_EQ(r.pass, r.lhs == r.rhs);
    EXPECT_EQ(r.modulus(), prime_power(23, r.e));
  }
}

TEST(RunCheck, BoundedOracleIsSkippedAbove) {
  const auto r = run_check("R11.i", 223);
  EXPECT_EQ(r.status, CheckStatus::Skipped);
}

TEST(RunSuite, Examples) {
  const auto s = run_suite({19, 61, 173}, {"MT3"});
  EXPECT_EQ(s.passed, 3u);
  EXPECT_TRUE(s.ok());
  const auto golden = golden_table();
  for (const auto& r : s.reports) EXPECT_EQ(r.lhs.value(), golden.at(r.p));

  const auto empty = run_suite({});
  EXPECT_TRUE(empty.reports.empty());
  EXPECT_EQ(empty.passed + empty.failed, 0u);
}

TEST(RunSuite, SkipsBelowMinPrime) {
  const auto s = run_suite({5, 7, 13}, {"MT3", "R5"});
  EXPECT_TRUE(s.ok());
  const auto skipped = std::make_pair(std::string("MT3"), std::uint64_t{5});
  EXPECT_NE(std::find(s.skipped.begin(), s.skipped.end(), skipped), s.skipped.end());
  EXPECT_EQ(std::count_if(s.reports.begin(), s.reports.end(), [](const auto& r) { return r.id == "MT3"; }), 1);
}

TEST(RunSuite, GuardedChecksSkipInsteadOfThrowing) {
  Verifier v;
  EXPECT_THROW(v.run_cases("EQ89", 11), PrimeTooSmall);
  const auto s = v.run_suite({11, 13}, {"EQ89"});
  EXPECT_EQ(s.skipped.size(), 1u);
  EXPECT_EQ(s.passed, 1u);
}

TEST(RunSuite, DeterministicAndOrderIndependent) {
  const std::vector<std::uint64_t> primes = {13, 7, 29, 11, 17};
  std::vector<std::uint64_t> reversed(primes.rbegin(), primes.rend());
  const std::vector<std::string> ids = {"R9", "T3", "K1", "MT3", "EQ60"};
  std::vector<std::string> ids_rev(ids.rbegin(), ids.rend());

  Verifier a, b;
  const auto s1 = a.run_suite(primes, ids, 1);
  const auto s2 = b.run_suite(reversed, ids_rev, 4);
  EXPECT_EQ(s1.passed, s2.passed);
  EXPECT_EQ(s1.failed, s2.failed);
  EXPECT_EQ(s1.skipped.size(), s2.skipped.size());

  auto key = [](const SuiteSummary& s) {
    std::vector<std::tuple<std::string, std::uint64_t, std::string, std::string>> k;
    for (const auto& r : s.reports) k.emplace_back(r.id, r.p, r.lhs.to_string(), r.rhs.to_string());
    std::sort(k.begin(), k.end());
    return k;
  };
  EXPECT_EQ(key(s1), key(s2));

  // Same inputs twice: identical report order, not just the same set.
  const auto s3 = a.run_suite(primes, ids, 3);
  ASSERT_EQ(s1.reports.size(), s3.reports.size());
  for (std::size_t i = 0; i < s1.reports.size(); ++i) {
    EXPECT_EQ(s1.reports[i].id, s3.reports[i].id);
    EXPECT_EQ(s1.reports[i].lhs, s3.reports[i].lhs);
  }
}

TEST(GoldenTable, NinePairs) {
  const auto g = golden_table();
  EXPECT_EQ(g.size(), 9u);
  EXPECT_EQ(g.at(19), 93175);
  EXPECT_EQ(g.at(877), Integer("557572214137"));
  EXPECT_EQ(g.at(1009), Integer("709347287962"));
  EXPECT_EQ(g.at(120011), Integer("143693568124824551692"));
  for (const auto& [p, v] : g) {
    EXPECT_LT(v, prime_power(p, 4));
    if (p <= 1009) EXPECT_EQ(v, oracle_test::factorial(p - 1) % prime_power(p, 4)) << p;
  }
}

TEST(ContextCache, StoreRoundTrip) {
  std::map<std::tuple<std::uint64_t, int, int>, BernoulliTable> saved;
  int loads = 0;
  TableStore store;
  store.load = [&](std::uint64_t p, int e, int n) -> std::optional<BernoulliTable> {
    ++loads;
    auto it = saved.find({p, e, n});
    if (it == saved.end()) return std::nullopt;
    return it->second;
  };
  store.save = [&](const BernoulliTable& t) { saved.emplace(std::make_tuple(t.prime(), t.exponent(), t.nmax()), t); };

  Verifier first(store);
  const auto r1 = first.run_cases("T3", 31);
  EXPECT_EQ(saved.size(), 1u);
  Verifier second(store);
  const auto r2 = second.run_cases("T3", 31);
  EXPECT_EQ(loads, 2);
  ASSERT_EQ(r1.size(), r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) EXPECT_EQ(r1[i].rhs, r2[i].rhs);
}
