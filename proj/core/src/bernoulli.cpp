#include "wilson4/bernoulli.hpp"

#include <mutex>

#include "wilson4/errors.hpp"
#include "wilson4/mont128.hpp"

namespace wilson4 {

namespace {

// B_{2k} for k = 0..K, grown by recomputing tangent numbers to the new size.
struct EvenBernoulliCache {
  std::mutex mu;
  std::vector<Rational> even{Rational(1)};

  void extend(int k_max) {
    int size = 64;
    while (size < k_max) size *= 2;
    // Tangent numbers T_1..T_size (Brent & Harvey), integers throughout.
    std::vector<Integer> t(size + 1);
    t[1] = 1;
    for (int k = 2; k <= size; ++k) t[k] = (k - 1) * t[k - 1];
    for (int k = 2; k <= size; ++k) {
      for (int j = k; j <= size; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
    }
    std::vector<Rational> out(size + 1);
    out[0] = 1;
    for (int k = 1; k <= size; ++k) {
      Integer four_k;
      mpz_ui_pow_ui(four_k.get_mpz_t(), 4, static_cast<unsigned long>(k));
      Integer num = 2 * k * t[k];
      if (k % 2 == 0) num = -num;
      out[k] = make_rational(num, four_k * (four_k - 1));
    }
    even = std::move(out);
  }
};

EvenBernoulliCache& cache() {
  static EvenBernoulliCache c;
  return c;
}

}  // namespace

Rational bernoulli_exact(int n) {
  if (n < 0) throw Error("bernoulli_exact: negative index");
  if (n == 1) return Rational(-1, 2);
  if (n % 2 == 1) return Rational(0);
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mu);
  if (static_cast<int>(c.even.size()) <= n / 2) c.extend(n / 2);
  return c.even[n / 2];
}

Rational divided_bernoulli_exact(int n) {
  if (n < 1) throw Error("divided_bernoulli_exact: index must be positive");
  Rational b = bernoulli_exact(n);
  b /= n;
  return b;
}

Integer von_staudt_denominator(int n) {
  if (n < 2 || n % 2 != 0) throw Error("von_staudt_denominator: n must be even and >= 2");
  Integer d = 1;
  for (int k = 1; k <= n; ++k) {
    if (n % k == 0 && is_prime(static_cast<std::uint64_t>(k) + 1)) d *= k + 1;
  }
  return d;
}

BernoulliTable::BernoulliTable(std::uint64_t p, int e, std::vector<Integer> entries)
    : p_(p), e_(e), modulus_(prime_power(p, e)), entries_(std::move(entries)) {
  if (entries_.empty()) throw Error("empty Bernoulli table");
  for (auto& v : entries_) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), modulus_.get_mpz_t());
}

Residue BernoulliTable::entry(int k) const {
  if (k < 0 || k > nmax()) {
    throw Error("Bernoulli table index " + std::to_string(k) + " outside [0, " +
                std::to_string(nmax()) + "]");
  }
  return Residue(entries_[static_cast<std::size_t>(k)], modulus_);
}

BernoulliTable build_table(std::uint64_t p, int nmax, int e) {
  if (p < 7 || !is_prime(p)) throw Error("build_table needs a prime p >= 7");
  if (e < 1 || e > kMaxTableExponent) {
    throw InsufficientPrecision("build_table: exponent " + std::to_string(e) +
                                " beyond the five-term Faulhaber truncation");
  }
  if (nmax < 1) throw Error("build_table: nmax must be positive");

  const Integer work_mod = prime_power(p, e + 1);
  const Montgomery128 mont(to_u128(work_mod));

  // S_k for even k only; odd-index Bernoulli numbers beyond B_1 vanish.
  const int halves = nmax / 2;
  std::vector<u128> sums(static_cast<std::size_t>(halves) + 1, 0);
  for (std::uint64_t a = 1; a < p; ++a) {
    const u128 am = mont.to_mont(a);
    const u128 sq = mont.mul(am, am);
    u128 pw = mont.one();
    for (int h = 0; h <= halves; ++h) {
      sums[h] = mont.add(sums[h], pw);
      pw = mont.mul(pw, sq);
    }
  }

  // S_k = sum_{m=0}^{4} C(k,m)/(m+1) p^m (p B_{k-m}) + O(p^5), using B_1 = -1/2.
  std::vector<Integer> pb(static_cast<std::size_t>(nmax) + 1, 0);
  pb[0] = p;
  Integer half = mod_inv(2, work_mod).value();
  pb[1] = work_mod - Integer(p) * half % work_mod;
  Integer inv[6];
  for (int m = 1; m <= 5; ++m) inv[m] = mod_inv(m, work_mod).value();
  Integer pp[5];
  for (int m = 0; m < 5; ++m) pp[m] = prime_power(p, m);

  for (int k = 2; k <= nmax; k += 2) {
    Integer acc = from_u128(mont.from_mont(sums[k / 2]));
    for (int m = 1; m <= 4 && k - m >= 0; ++m) {
      const Integer& lower = pb[static_cast<std::size_t>(k - m)];
      if (lower == 0) continue;
      acc -= binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(m)) * inv[m + 1] * pp[m] *
             lower;
    }
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), work_mod.get_mpz_t());
    pb[static_cast<std::size_t>(k)] = acc;
  }
  return BernoulliTable(p, e, std::move(pb));
}

BernoulliTable exact_table(std::uint64_t p, int nmax, int e) {
  std::vector<Integer> pb(static_cast<std::size_t>(nmax) + 1);
  for (int k = 0; k <= nmax; ++k) {
    Rational v = bernoulli_exact(k) * Integer(p);
    pb[static_cast<std::size_t>(k)] = rat_reduce(v, p, e).value();
  }
  return BernoulliTable(p, e, std::move(pb));
}

}  // namespace wilson4
