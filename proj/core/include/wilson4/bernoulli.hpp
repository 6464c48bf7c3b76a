#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wilson4/exact_arith.hpp"

namespace wilson4 {

/// B_n with B_1 = -1/2. Memoized; safe to call concurrently.
Rational bernoulli_exact(int n);

/// B_n / n for n >= 1.
Rational divided_bernoulli_exact(int n);

/// Product of the primes q with (q-1) | n, for even n >= 2.
Integer von_staudt_denominator(int n);

/// Residues of p*B_k mod p^e for k = 0..nmax. Every entry is integral, even
/// when (p-1) | k.
class BernoulliTable {
 public:
  BernoulliTable(std::uint64_t p, int e, std::vector<Integer> entries);

  std::uint64_t prime() const { return p_; }
  int exponent() const { return e_; }
  int nmax() const { return static_cast<int>(entries_.size()) - 1; }
  const Integer& modulus() const { return modulus_; }

  Residue entry(int k) const;
  std::span<const Integer> entries() const { return entries_; }

 private:
  std::uint64_t p_;
  int e_;
  Integer modulus_;
  std::vector<Integer> entries_;
};

/// Highest exponent build_table can deliver: five Faulhaber terms leave an
/// error of valuation >= 5 once p >= 7.
inline constexpr int kMaxTableExponent = 5;

/// Builds the table from power sums S_k = sum_{a<p} a^k mod p^{e+1}, inverting
/// the truncated Faulhaber expansion one index at a time.
/// Needs p >= 7 and 1 <= e <= 5 (InsufficientPrecision otherwise).
BernoulliTable build_table(std::uint64_t p, int nmax, int e);

/// Same layout, filled from exact Bernoulli numbers. Any prime; only sensible
/// for small p.
BernoulliTable exact_table(std::uint64_t p, int nmax, int e);

}  // namespace wilson4
