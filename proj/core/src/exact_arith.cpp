#include "wilson4/exact_arith.hpp"

#include "wilson4/errors.hpp"

namespace wilson4 {

Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer prime_power(std::uint64_t p, int e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(e));
  return r;
}

Residue::Residue(Integer value, Integer modulus)
    : value_(std::move(value)), modulus_(std::move(modulus)) {
  if (modulus_ <= 0) throw Error("residue modulus must be positive");
  mpz_mod(value_.get_mpz_t(), value_.get_mpz_t(), modulus_.get_mpz_t());
}

void Residue::require_same_modulus(const Residue& rhs) const {
  if (modulus_ != rhs.modulus_) {
    throw ModulusMismatch("residues mod " + modulus_.get_str() + " and mod " +
                          rhs.modulus_.get_str());
  }
}

Residue Residue::operator+(const Residue& rhs) const {
  require_same_modulus(rhs);
  return Residue(value_ + rhs.value_, modulus_);
}

Residue Residue::operator-(const Residue& rhs) const {
  require_same_modulus(rhs);
  return Residue(value_ - rhs.value_, modulus_);
}

Residue Residue::operator*(const Residue& rhs) const {
  require_same_modulus(rhs);
  return Residue(value_ * rhs.value_, modulus_);
}

Residue Residue::operator-() const { return Residue(-value_, modulus_); }

Residue Residue::reduce_to(const Integer& modulus) const {
  if (!mpz_divisible_p(modulus_.get_mpz_t(), modulus.get_mpz_t())) {
    throw ModulusMismatch(modulus.get_str() + " does not divide " + modulus_.get_str());
  }
  return Residue(value_, modulus);
}

Residue mod_pow(const Integer& base, const Integer& exp, const Integer& m) {
  if (m < 1) throw Error("mod_pow: modulus must be positive");
  if (exp < 0) throw Error("mod_pow: negative exponent");
  Integer r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return Residue(r, m);
}

Residue mod_inv(const Integer& a, const Integer& m) {
  if (m == 1) return Residue(0, m);
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw NotInvertible(a.get_str() + " is not invertible mod " + m.get_str());
  }
  return Residue(r, m);
}

Residue rat_reduce(const Rational& q, std::uint64_t p, int e) {
  const Integer m = prime_power(p, e);
  if (mpz_divisible_ui_p(q.get_den_mpz_t(), p)) {
    throw DenominatorDivisible("denominator " + q.get_den().get_str() +
                               " divisible by " + std::to_string(p));
  }
  return Residue(q.get_num() * mod_inv(q.get_den(), m).value(), m);
}

int valuation(const Integer& n, std::uint64_t p) {
  if (n == 0) throw ZeroInput("valuation of zero");
  Integer t = n;
  int v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

int valuation(const Rational& q, std::uint64_t p) {
  if (q == 0) throw ZeroInput("valuation of zero");
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace wilson4
