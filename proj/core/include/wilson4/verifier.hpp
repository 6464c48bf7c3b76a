#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wilson4/report.hpp"
#include "wilson4/sequences.hpp"

namespace wilson4 {

/// One instance of a parameterized check, e.g. k=3.
struct CaseParam {
  int a = 0;
  int b = 0;
  std::string label;  // empty for single-case checks
};

struct CheckInput {
  std::uint64_t p;
  const PrimeContext* ctx;  // null when the check declares no context
  const CaseParam& param;
};

/// (oracle side, formula side).
using Sides = std::pair<Residue, Residue>;

struct CongruenceCheck {
  std::string id;
  std::vector<std::string> covers;  // congruence items, for the coverage test
  std::uint64_t min_prime = 5;
  std::uint64_t max_prime = 0;      // 0: unbounded; above it the oracle is too costly
  int modulus_exponent = 4;
  bool needs_context = true;
  std::function<std::vector<CaseParam>(std::uint64_t p)> cases;
  std::function<Sides(const CheckInput&)> evaluate;
};

/// Above this the exact-rational oracles (Bernoulli numbers to 3(p-1),
/// exact convolutions, exact Stirling rows) are skipped.
inline constexpr std::uint64_t kExactOracleMaxPrime = 211;

const std::vector<CongruenceCheck>& registry();
/// Throws UnknownCheck.
const CongruenceCheck& find_check(const std::string& id);

/// Published reference values p -> (p-1)! mod p^4.
std::map<std::uint64_t, Integer> golden_table();

struct TableStore {
  std::function<std::optional<BernoulliTable>(std::uint64_t p, int e, int nmax)> load;
  std::function<void(const BernoulliTable&)> save;
};

/// PrimeContext per (p, e, nmax), built once and shared.
class ContextCache {
 public:
  explicit ContextCache(TableStore store = {}) : store_(std::move(store)) {}
  std::shared_ptr<const PrimeContext> get(std::uint64_t p, int nmax);

 private:
  struct Slot {
    std::once_flag once;
    std::shared_ptr<const PrimeContext> ctx;
  };
  TableStore store_;
  std::mutex mu_;
  std::map<std::pair<std::uint64_t, int>, std::shared_ptr<Slot>> slots_;
};

struct SuiteSummary {
  std::vector<CongruenceReport> reports;  // executed cases, in registry/prime/case order
  std::vector<std::pair<std::string, std::uint64_t>> skipped;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<CongruenceReport> failures;

  bool ok() const { return failed == 0; }
};

class Verifier {
 public:
  explicit Verifier(TableStore store = {}) : cache_(std::move(store)) {}

  /// Every case of `id` at p. Throws UnknownCheck, NotPrime, PrimeTooSmall.
  /// Above max_prime a single SKIPPED report is returned.
  std::vector<CongruenceReport> run_cases(const std::string& id, std::uint64_t p);
  /// First failing case, or the last case when all pass.
  CongruenceReport run_check(const std::string& id, std::uint64_t p);
  /// Empty ids means every registered check. Skips (id, p) below min_prime or
  /// above max_prime. Never throws on a failing check.
  SuiteSummary run_suite(const std::vector<std::uint64_t>& primes, const std::vector<std::string>& ids = {},
                         int jobs = 1);

  ContextCache& contexts() { return cache_; }

 private:
  ContextCache cache_;
};

/// Process-wide verifier without a table store.
CongruenceReport run_check(const std::string& id, std::uint64_t p);
SuiteSummary run_suite(const std::vector<std::uint64_t>& primes, const std::vector<std::string>& ids = {},
                       int jobs = 1);

/// Table size every check can rely on.
inline int context_nmax(std::uint64_t p) { return static_cast<int>(3 * (p - 1)); }

}  // namespace wilson4
