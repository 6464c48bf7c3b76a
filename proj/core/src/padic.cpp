#include "wilson4/padic.hpp"

#include <algorithm>
#include <string>

#include "wilson4/bernoulli.hpp"
#include "wilson4/errors.hpp"

namespace wilson4 {

namespace {

Integer power(std::uint64_t p, long e) { return prime_power(p, static_cast<int>(e)); }

}  // namespace

PAdic PAdic::make(std::uint64_t p, long val, long prec, Integer raw) {
  prec = std::min<long>(prec, kExact);
  PAdic r;
  r.p_ = p;
  r.prec_ = static_cast<int>(prec);
  r.val_ = r.prec_;
  if (val >= prec) return r;
  const Integer m = power(p, prec - val);
  mpz_mod(raw.get_mpz_t(), raw.get_mpz_t(), m.get_mpz_t());
  if (raw == 0) return r;
  while (mpz_divisible_ui_p(raw.get_mpz_t(), p)) {
    mpz_divexact_ui(raw.get_mpz_t(), raw.get_mpz_t(), p);
    ++val;
  }
  r.val_ = static_cast<int>(val);
  r.unit_ = std::move(raw);
  return r;
}

PAdic PAdic::zero(std::uint64_t p, int precision) { return make(p, precision, precision, 0); }

PAdic PAdic::from_integer(const Integer& n, std::uint64_t p, int precision) {
  if (precision >= kExact && n != 0) throw Error("from_integer: nonzero values need finite precision");
  return make(p, 0, precision, n);
}

PAdic PAdic::from_rational(const Rational& q, std::uint64_t p, int precision) {
  if (q == 0) return zero(p, precision);
  if (precision >= kExact) throw Error("from_rational: nonzero values need finite precision");
  const int v = wilson4::valuation(q, p);
  if (v >= precision) return zero(p, precision);
  Integer num = q.get_num(), den = q.get_den();
  Integer pv = power(p, std::abs(v));
  if (v > 0) mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), pv.get_mpz_t());
  if (v < 0) mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), pv.get_mpz_t());
  const Integer m = power(p, precision - v);
  return make(p, v, precision, num * mod_inv(den, m).value());
}

void PAdic::require_same_prime(const PAdic& rhs) const {
  if (p_ != rhs.p_) {
    throw ModulusMismatch("p-adic numbers over " + std::to_string(p_) + " and " + std::to_string(rhs.p_));
  }
}

PAdic PAdic::with_precision(int precision) const {
  if (precision >= prec_) return *this;
  return make(p_, val_, precision, unit_);
}

PAdic PAdic::operator-() const { return make(p_, val_, prec_, -unit_); }

PAdic& PAdic::operator+=(const PAdic& rhs) {
  require_same_prime(rhs);
  const int prec = std::min(prec_, rhs.prec_);
  if (rhs.is_zero() || rhs.val_ >= prec) return *this = with_precision(prec);
  if (is_zero() || val_ >= prec) return *this = rhs.with_precision(prec);
  const int v = std::min(val_, rhs.val_);
  Integer raw = unit_ * power(p_, val_ - v) + rhs.unit_ * power(p_, rhs.val_ - v);
  return *this = make(p_, v, prec, std::move(raw));
}

PAdic& PAdic::operator-=(const PAdic& rhs) { return *this += -rhs; }

PAdic& PAdic::operator*=(const PAdic& rhs) {
  require_same_prime(rhs);
  const long prec = std::min<long>(static_cast<long>(prec_) + rhs.val_, static_cast<long>(rhs.prec_) + val_);
  if (is_zero() || rhs.is_zero()) return *this = make(p_, prec, prec, 0);
  return *this = make(p_, static_cast<long>(val_) + rhs.val_, prec, unit_ * rhs.unit_);
}

PAdic& PAdic::operator/=(const PAdic& rhs) {
  require_same_prime(rhs);
  if (rhs.is_zero()) throw NotInvertible("p-adic division by a value indistinguishable from zero");
  const int rel = rhs.prec_ - rhs.val_;
  PAdic inv = make(p_, -rhs.val_, rel - rhs.val_, mod_inv(rhs.unit_, power(p_, rel)).value());
  return *this *= inv;
}

PAdic& PAdic::operator+=(const Rational& rhs) {
  if (rhs == 0) return *this;
  if (prec_ >= kExact) throw Error("adding a rational to an exact zero has no finite precision");
  return *this += from_rational(rhs, p_, prec_);
}

PAdic& PAdic::operator-=(const Rational& rhs) { return *this += Rational(-rhs); }

PAdic& PAdic::operator*=(const Rational& rhs) {
  if (rhs == 0) return *this = zero(p_);
  if (is_zero()) return *this = make(p_, static_cast<long>(prec_) + wilson4::valuation(rhs, p_),
                                      static_cast<long>(prec_) + wilson4::valuation(rhs, p_), 0);
  const int v = wilson4::valuation(rhs, p_);
  const int rel = prec_ - val_;
  PAdic u = from_rational(rhs, p_, v + rel);
  return *this = make(p_, static_cast<long>(val_) + u.val_, static_cast<long>(prec_) + v, unit_ * u.unit_);
}

PAdic& PAdic::operator/=(const Rational& rhs) {
  if (rhs == 0) throw NotInvertible("p-adic division by zero");
  return *this *= Rational(1 / rhs);
}

Integer PAdic::lift() const {
  if (val_ < 0) throw ValuationTooLow("lift of a value with valuation " + std::to_string(val_));
  if (is_zero()) return 0;
  return unit_ * power(p_, val_);
}

Residue PAdic::reduce(int e) const {
  if (val_ < 0 && !(is_zero())) {
    throw ValuationTooLow("cannot reduce a value with valuation " + std::to_string(val_) + " mod p^" +
                          std::to_string(e));
  }
  if (prec_ < e) {
    throw InsufficientPrecision("value known mod p^" + std::to_string(prec_) + ", asked for mod p^" +
                                std::to_string(e));
  }
  const Integer m = power(p_, e);
  if (is_zero() || val_ >= e) return Residue(0, m);
  return Residue(unit_ * power(p_, val_), m);
}

int PAdic::digit(int i) const {
  if (i < -1) throw Error("digit index below -1");
  if (!is_zero() && val_ < -1) {
    throw ValuationTooLow("digit of a value with valuation " + std::to_string(val_));
  }
  if (prec_ <= i) {
    throw InsufficientPrecision("digit " + std::to_string(i) + " of a value known mod p^" +
                                std::to_string(prec_));
  }
  if (is_zero() || val_ > i) return 0;
  Integer x = unit_ * power(p_, val_ + 1);  // p * value, an integer
  mpz_fdiv_q(x.get_mpz_t(), x.get_mpz_t(), power(p_, i + 1).get_mpz_t());
  return static_cast<int>(mpz_fdiv_ui(x.get_mpz_t(), p_));
}

Rational QpDigits::reconstruct() const {
  Rational r = make_rational(digits.empty() ? 0 : digits[0], Integer(p));
  Integer pw = 1;
  for (std::size_t i = 1; i < digits.size(); ++i) {
    r += Rational(pw * digits[i]);
    pw *= p;
  }
  return r;
}

QpDigits digits(const Rational& q, std::uint64_t p, int count) {
  if (count < 1 || count > 5) throw Error("digits: count must be in [1, 5]");
  if (q != 0 && wilson4::valuation(q, p) < -1) {
    throw ValuationTooLow("v_p(q) = " + std::to_string(wilson4::valuation(q, p)) + " < -1");
  }
  const PAdic x = PAdic::from_rational(q, p, count);
  QpDigits out{p, {}};
  for (int i = -1; i < count - 1; ++i) out.digits.push_back(x.digit(i));
  return out;
}

int residue_at(const Rational& q, std::uint64_t p, int i) {
  if (q != 0 && wilson4::valuation(q, p) < -1) {
    throw ValuationTooLow("v_p(q) = " + std::to_string(wilson4::valuation(q, p)) + " < -1");
  }
  return PAdic::from_rational(q, p, i + 2).digit(i);
}

namespace {

BernoulliTable small_table(std::uint64_t p, int nmax, int e) {
  return p >= 7 ? build_table(p, nmax, e) : exact_table(p, nmax, e);
}

}  // namespace

int agoh_giuga_q1(std::uint64_t p) {
  if (p < 5 || !is_prime(p)) throw Error("agoh_giuga_q1 needs a prime p >= 5");
  const auto t = small_table(p, static_cast<int>(p - 1), 2);
  Integer x = (t.entry(static_cast<int>(p - 1)).value() + 1) / p;
  return static_cast<int>(mpz_fdiv_ui(x.get_mpz_t(), p));
}

std::pair<int, int> wilson_quotient_residues(std::uint64_t p) {
  if (p < 5 || !is_prime(p)) throw Error("wilson_quotient_residues needs a prime p >= 5");
  return wilson_quotient_residues(small_table(p, static_cast<int>(2 * (p - 1)), 3));
}

std::pair<int, int> wilson_quotient_digits_bernoulli(const BernoulliTable& t) {
  const std::uint64_t p = t.prime();
  if (t.exponent() < 3 || t.nmax() < static_cast<int>(2 * (p - 1))) {
    throw InsufficientPrecision("Wilson quotient digits need p*B_{2(p-1)} mod p^3");
  }
  const PAdic pb1 = PAdic::from_integer(t.entry(static_cast<int>(p - 1)).value(), p, 3);
  const PAdic pb2 = PAdic::from_integer(t.entry(static_cast<int>(2 * (p - 1))).value(), p, 3);
  const Rational pq{Integer(p)};
  const int ag = ((pb1 + Rational(1)) / pq).digit(0);
  const int w0 = static_cast<int>((ag + p - 1) % p);
  PAdic y = pb1 * Rational(2 * pq + 1) - pb2 * Rational(1, 2) - pb1 * pb1 * Rational(1, 2);
  y += Rational(Rational(1) + pq / 2 - Rational(3) * pq * pq / 2);
  return {w0, y.digit(2)};
}

std::pair<int, int> wilson_quotient_residues(const BernoulliTable& t) {
  const std::uint64_t p = t.prime();
  if (p < 5) throw Error("wilson_quotient_residues needs p >= 5");
  if (t.exponent() < 3 || t.nmax() < static_cast<int>(2 * (p - 1))) {
    throw InsufficientPrecision("Wilson quotient digits need p*B_{2(p-1)} mod p^3");
  }
  const Integer p3 = prime_power(p, 3);
  Integer f = 1;
  for (std::uint64_t a = 2; a < p; ++a) f = f * a % p3;
  const PAdic w = (PAdic::from_integer(f + 1, p, 3) / Rational(p));
  const std::pair<int, int> direct{w.digit(0), w.digit(1)};

  const std::pair<int, int> formula = wilson_quotient_digits_bernoulli(t);

  if (direct != formula) {
    throw FormulaMismatch("Wilson quotient digits at p=" + std::to_string(p) + ": direct (" +
                          std::to_string(direct.first) + "," + std::to_string(direct.second) +
                          ") vs Bernoulli (" + std::to_string(formula.first) + "," +
                          std::to_string(formula.second) + ")");
  }
  return direct;
}

}  // namespace wilson4
