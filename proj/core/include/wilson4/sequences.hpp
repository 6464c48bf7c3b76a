#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "wilson4/bernoulli.hpp"
#include "wilson4/padic.hpp"
#include "wilson4/report.hpp"

namespace wilson4 {

// Direct evaluations. These are the oracle routes: plain sums and products,
// no Bernoulli numbers anywhere. Odd primes only; p^e must stay below 2^127.

/// sum_{a=1}^{p-1} a^k mod p^e.
Residue sum_powers(std::uint64_t p, int k, int e);
/// H_{p-1,k} = sum_{a=1}^{p-1} a^{-k} mod p^e.
Residue harmonic(std::uint64_t p, int k, int e);
/// A_k = e_k(1, ..., p-1) exactly. Refuses p > 2000.
Integer stirling_exact(std::uint64_t p, int k);
/// A_0..A_kmax exactly, one pass.
std::vector<Integer> stirling_exact_row(std::uint64_t p, int kmax);
/// S_0..S_kmax = sum_{a=1}^{p-1} a^r exactly.
std::vector<Integer> power_sums_exact(std::uint64_t p, int kmax);
/// A_k mod p^e.
Residue stirling_mod(std::uint64_t p, int k, int e);
/// A*_k = e_k(1^{-1}, ..., (p-1)^{-1}) mod p^e.
Residue mhs(std::uint64_t p, int k, int e);
/// A*_0..A*_kmax mod p^e, one pass.
std::vector<Residue> mhs_row(std::uint64_t p, int kmax, int e);
/// (p-1)! mod p^e.
Residue factorial_mod(std::uint64_t p, int e);
/// q_a = (a^{p-1} - 1)/p mod p, for a = 1..p-1 (index a-1).
std::vector<std::uint64_t> fermat_quotients(std::uint64_t p);

/// Newton's identity: exactly for (A_k, S_k) and mod p^e for (A*_k, H_k).
/// The report carries the A*/H sides; detail notes the exact half.
CongruenceReport newton_check(std::uint64_t p, int k, int e);

/// Per-prime data shared read-only by every check at that prime.
class PrimeContext {
 public:
  /// Absolute precision of the stored p*B_k.
  static constexpr int kTableExponent = 5;

  PrimeContext(std::uint64_t p, int nmax);
  /// Adopts a prebuilt (e.g. cached) table.
  explicit PrimeContext(BernoulliTable table);

  std::uint64_t prime() const { return p_; }
  int nmax() const { return table_.nmax(); }
  const BernoulliTable& table() const { return table_; }

  PAdic p_bernoulli(int k) const;  // p B_k
  PAdic bernoulli(int k) const;    // B_k
  PAdic divided(int k) const;      // B_k / k; zero for k < 2 or odd k

  /// A p-adic constant at the working precision.
  PAdic constant(const Rational& q) const;

  /// w_p mod p^3, from (p-1)! directly.
  const PAdic& wilson_quotient() const { return wilson_; }
  std::pair<int, int> wilson_digits() const { return wilson_digits_; }
  int agoh_giuga() const { return agoh_giuga_; }

  std::uint64_t fermat_quotient(std::uint64_t a) const { return fermat_[a - 1]; }
  const std::vector<std::uint64_t>& fermat_quotients() const { return fermat_; }
  /// sum_a q_a^2 a^{-j} mod p; any integer j.
  std::uint64_t fermat_square_sum(long j) const;

  /// CB(n) = sum_{i=2}^{n-2} B_i/i * B_{n-i}/(n-i). Memoized.
  PAdic full_convolution(int n) const;
  /// BBB(n) = sum_{i=2}^{n-4} B_i/i * CB(n-i). Memoized.
  PAdic triple_convolution(int n) const;
  /// TCB(a, b) = sum_{i=a}^{b} B_i/i * B_{a+b-i}/(a+b-i).
  PAdic truncated_convolution(int a, int b) const;

 private:
  void init();

  std::uint64_t p_;
  BernoulliTable table_;
  std::vector<std::uint64_t> fermat_;
  PAdic wilson_;
  std::pair<int, int> wilson_digits_{0, 0};
  int agoh_giuga_ = 0;

  mutable std::mutex memo_mu_;
  mutable std::map<int, PAdic> cb_memo_;
  mutable std::map<int, PAdic> bbb_memo_;
  mutable std::map<long, std::uint64_t> qsum_memo_;
};

}  // namespace wilson4
