#include "wilson4/sequences.hpp"

#include <chrono>

#include "wilson4/errors.hpp"
#include "wilson4/mont128.hpp"

namespace wilson4 {

namespace {

constexpr int kConstantPrecision = 8;

void require_odd_prime(std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw Error(std::to_string(p) + " is not an odd prime");
}

Montgomery128 ring(std::uint64_t p, int e) {
  require_odd_prime(p);
  if (e < 1) throw Error("exponent must be positive");
  return Montgomery128(to_u128(prime_power(p, e)));
}

// e_k over the given Montgomery-form values, for k = 0..kmax.
std::vector<u128> elementary_row(const Montgomery128& m, const std::vector<u128>& xs, int kmax) {
  std::vector<u128> row(static_cast<std::size_t>(kmax) + 1, 0);
  row[0] = m.one();
  int filled = 0;
  for (u128 x : xs) {
    filled = std::min(filled + 1, kmax);
    for (int j = filled; j >= 1; --j) row[j] = m.add(row[j], m.mul(row[j - 1], x));
  }
  return row;
}

std::vector<u128> inverses(const Montgomery128& m, std::uint64_t p) {
  const Integer mod = from_u128(m.modulus());
  std::vector<u128> out;
  out.reserve(p - 1);
  for (std::uint64_t a = 1; a < p; ++a) out.push_back(m.to_mont(to_u128(mod_inv(a, mod).value())));
  return out;
}

std::vector<u128> naturals(const Montgomery128& m, std::uint64_t p) {
  std::vector<u128> out;
  out.reserve(p - 1);
  for (std::uint64_t a = 1; a < p; ++a) out.push_back(m.to_mont(a));
  return out;
}

Residue as_residue(const Montgomery128& m, u128 v) {
  return Residue(from_u128(m.from_mont(v)), from_u128(m.modulus()));
}

void require_k(std::uint64_t p, int k) {
  if (k < 1 || static_cast<std::uint64_t>(k) > p - 1) {
    throw Error("index " + std::to_string(k) + " outside [1, p-1]");
  }
}

}  // namespace

Residue sum_powers(std::uint64_t p, int k, int e) {
  if (k < 0) throw Error("sum_powers: negative exponent");
  const auto m = ring(p, e);
  u128 s = 0;
  for (std::uint64_t a = 1; a < p; ++a) s = m.add(s, m.pow(m.to_mont(a), static_cast<std::uint64_t>(k)));
  return as_residue(m, s);
}

Residue harmonic(std::uint64_t p, int k, int e) {
  if (k < 1) throw Error("harmonic: k must be positive");
  const auto m = ring(p, e);
  u128 s = 0;
  for (u128 inv : inverses(m, p)) s = m.add(s, m.pow(inv, static_cast<std::uint64_t>(k)));
  return as_residue(m, s);
}

std::vector<Integer> stirling_exact_row(std::uint64_t p, int kmax) {
  require_odd_prime(p);
  require_k(p, kmax);
  if (p > 2000) throw Error("stirling_exact: p > 2000, use stirling_mod");
  std::vector<Integer> row(static_cast<std::size_t>(kmax) + 1, 0);
  row[0] = 1;
  int filled = 0;
  for (std::uint64_t a = 1; a < p; ++a) {
    filled = std::min(filled + 1, kmax);
    for (int j = filled; j >= 1; --j) row[j] += row[j - 1] * a;
  }
  return row;
}

Integer stirling_exact(std::uint64_t p, int k) { return stirling_exact_row(p, k)[k]; }

std::vector<Integer> power_sums_exact(std::uint64_t p, int kmax) {
  require_odd_prime(p);
  std::vector<Integer> s(static_cast<std::size_t>(kmax) + 1, 0);
  for (std::uint64_t x = 1; x < p; ++x) {
    Integer t = 1;
    for (int r = 0; r <= kmax; ++r) {
      s[r] += t;
      t *= x;
    }
  }
  return s;
}

Residue stirling_mod(std::uint64_t p, int k, int e) {
  require_k(p, k);
  const auto m = ring(p, e);
  return as_residue(m, elementary_row(m, naturals(m, p), k)[k]);
}

Residue mhs(std::uint64_t p, int k, int e) {
  require_k(p, k);
  const auto m = ring(p, e);
  return as_residue(m, elementary_row(m, inverses(m, p), k)[k]);
}

std::vector<Residue> mhs_row(std::uint64_t p, int kmax, int e) {
  require_k(p, kmax);
  const auto m = ring(p, e);
  std::vector<Residue> out;
  for (u128 v : elementary_row(m, inverses(m, p), kmax)) out.push_back(as_residue(m, v));
  return out;
}

Residue factorial_mod(std::uint64_t p, int e) {
  const auto m = ring(p, e);
  u128 f = m.one();
  for (std::uint64_t a = 2; a < p; ++a) f = m.mul(f, m.to_mont(a));
  return as_residue(m, f);
}

std::vector<std::uint64_t> fermat_quotients(std::uint64_t p) {
  require_odd_prime(p);
  const u128 p2 = static_cast<u128>(p) * p;
  std::vector<std::uint64_t> q;
  q.reserve(p - 1);
  for (std::uint64_t a = 1; a < p; ++a) {
    u128 r = 1, b = a % p2;
    for (std::uint64_t e = p - 1; e != 0; e >>= 1) {
      if (e & 1) r = r * b % p2;
      b = b * b % p2;
    }
    q.push_back(static_cast<std::uint64_t>((r - 1) / p));
  }
  return q;
}

CongruenceReport newton_check(std::uint64_t p, int k, int e) {
  const auto t0 = std::chrono::steady_clock::now();
  require_k(p, k);

  // Exact half: (-1)^{k-1} k A_k = S_k + sum_{r=1}^{k-1} (-1)^r A_r S_{k-r}.
  const auto a = stirling_exact_row(p, k);
  const auto s = power_sums_exact(p, k);
  Integer exact_rhs = s[k];
  for (int r = 1; r < k; ++r) exact_rhs += (r % 2 ? -1 : 1) * a[r] * s[k - r];
  const Integer exact_lhs = (k % 2 ? 1 : -1) * k * a[k];
  const bool exact_ok = exact_lhs == exact_rhs;

  // Modular half over the reciprocals.
  const Integer m = prime_power(p, e);
  const auto star = mhs_row(p, k, e);
  Residue lhs = Residue((k % 2 ? 1 : -1) * k * star[k].value(), m);
  Residue rhs = harmonic(p, k, e);
  for (int r = 1; r < k; ++r) {
    const Residue term = star[r] * harmonic(p, k - r, e);
    rhs = r % 2 ? rhs - term : rhs + term;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  auto rep = make_report("NEWTON[k=" + std::to_string(k) + "]", p, e, lhs, rhs, ms);
  if (!exact_ok) {
    rep.pass = false;
    rep.status = CheckStatus::Fail;
    rep.detail = "exact identity for A_k, S_k fails";
  } else {
    rep.detail = "exact identity for A_k, S_k holds";
  }
  return rep;
}

PrimeContext::PrimeContext(std::uint64_t p, int nmax)
    : p_(p),
      table_(p >= 7 ? build_table(p, nmax, kTableExponent) : exact_table(p, nmax, kTableExponent)) {
  init();
}

PrimeContext::PrimeContext(BernoulliTable table) : p_(table.prime()), table_(std::move(table)) {
  if (table_.exponent() < kTableExponent) {
    throw InsufficientPrecision("PrimeContext needs a table mod p^" + std::to_string(kTableExponent));
  }
  init();
}

void PrimeContext::init() {
  require_odd_prime(p_);
  fermat_ = wilson4::fermat_quotients(p_);
  if (p_ >= 5) {
    const Residue f = factorial_mod(p_, 4);
    wilson_ = PAdic::from_integer(f.value() + 1, p_, 4) / Rational(p_);
    if (nmax() >= static_cast<int>(2 * (p_ - 1))) wilson_digits_ = wilson_quotient_residues(table_);
    const PAdic pb = p_bernoulli(static_cast<int>(p_ - 1));
    agoh_giuga_ = ((pb + Rational(1)) / Rational(p_)).digit(0);
  }
}

PAdic PrimeContext::p_bernoulli(int k) const {
  return PAdic::from_integer(table_.entry(k).value(), p_, table_.exponent());
}

PAdic PrimeContext::bernoulli(int k) const { return p_bernoulli(k) / Rational(p_); }

PAdic PrimeContext::divided(int k) const {
  if (k < 2 || k % 2 == 1) return PAdic::zero(p_);
  return bernoulli(k) / Rational(k);
}

PAdic PrimeContext::constant(const Rational& q) const {
  return PAdic::from_rational(q, p_, kConstantPrecision);
}

std::uint64_t PrimeContext::fermat_square_sum(long j) const {
  const long period = static_cast<long>(p_ - 1);
  const long jj = ((j % period) + period) % period;
  {
    std::lock_guard<std::mutex> lock(memo_mu_);
    if (auto it = qsum_memo_.find(jj); it != qsum_memo_.end()) return it->second;
  }
  // a^{-j} = a^{(p-1) - j}
  const std::uint64_t ex = static_cast<std::uint64_t>((period - jj) % period);
  u128 s = 0;
  for (std::uint64_t a = 1; a < p_; ++a) {
    u128 r = 1, b = a;
    for (std::uint64_t e = ex; e != 0; e >>= 1) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
    }
    const u128 q = fermat_[a - 1];
    s = (s + q * q % p_ * r) % p_;
  }
  std::lock_guard<std::mutex> lock(memo_mu_);
  qsum_memo_.emplace(jj, static_cast<std::uint64_t>(s));
  return static_cast<std::uint64_t>(s);
}

PAdic PrimeContext::full_convolution(int n) const {
  {
    std::lock_guard<std::mutex> lock(memo_mu_);
    if (auto it = cb_memo_.find(n); it != cb_memo_.end()) return it->second;
  }
  PAdic s = PAdic::zero(p_);
  for (int i = 2; i <= n - 2; i += 2) s += divided(i) * divided(n - i);
  std::lock_guard<std::mutex> lock(memo_mu_);
  cb_memo_.emplace(n, s);
  return s;
}

PAdic PrimeContext::triple_convolution(int n) const {
  {
    std::lock_guard<std::mutex> lock(memo_mu_);
    if (auto it = bbb_memo_.find(n); it != bbb_memo_.end()) return it->second;
  }
  PAdic s = PAdic::zero(p_);
  for (int i = 2; i <= n - 4; i += 2) s += divided(i) * full_convolution(n - i);
  std::lock_guard<std::mutex> lock(memo_mu_);
  bbb_memo_.emplace(n, s);
  return s;
}

PAdic PrimeContext::truncated_convolution(int a, int b) const {
  PAdic s = PAdic::zero(p_);
  for (int i = a; i <= b; ++i) {
    if (i % 2 == 0 && (a + b - i) % 2 == 0) s += divided(i) * divided(a + b - i);
  }
  return s;
}

}  // namespace wilson4
