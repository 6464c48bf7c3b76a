#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace wilson4 {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms.
Rational make_rational(const Integer& num, const Integer& den);

Integer prime_power(std::uint64_t p, int e);

/// A canonical representative in [0, modulus). Arithmetic between residues of
/// different moduli throws ModulusMismatch.
class Residue {
 public:
  Residue(Integer value, Integer modulus);

  const Integer& value() const { return value_; }
  const Integer& modulus() const { return modulus_; }

  Residue operator+(const Residue& rhs) const;
  Residue operator-(const Residue& rhs) const;
  Residue operator*(const Residue& rhs) const;
  Residue operator-() const;

  /// Reduces to a modulus that divides the current one.
  Residue reduce_to(const Integer& modulus) const;

  bool operator==(const Residue& rhs) const {
    return value_ == rhs.value_ && modulus_ == rhs.modulus_;
  }

  std::string to_string() const { return value_.get_str(); }

 private:
  void require_same_modulus(const Residue& rhs) const;

  Integer value_;
  Integer modulus_;
};

Residue mod_pow(const Integer& base, const Integer& exp, const Integer& m);

/// Throws NotInvertible when gcd(a, m) != 1.
Residue mod_inv(const Integer& a, const Integer& m);

/// numerator * denominator^{-1} mod p^e. Throws DenominatorDivisible when p
/// divides the denominator.
Residue rat_reduce(const Rational& q, std::uint64_t p, int e);

/// v_p(q); negative when p divides the denominator. Throws ZeroInput on 0.
int valuation(const Rational& q, std::uint64_t p);
int valuation(const Integer& n, std::uint64_t p);

/// Deterministic trial division; adequate for the primes this library handles.
bool is_prime(std::uint64_t n);

Integer binomial(unsigned long n, unsigned long k);
Integer factorial(unsigned long n);

}  // namespace wilson4
