#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wilson4/exact_arith.hpp"

namespace wilson4 {

/// An element of Q_p known modulo p^precision: p^valuation * unit, with the
/// unit stored modulo p^(precision - valuation). Zero is valuation == precision.
/// Precision is tracked through every operation, so reduce() and digit() can
/// refuse to answer rather than return garbage.
class PAdic {
 public:
  /// Precision used for exact zero; large enough to never be the binding bound.
  static constexpr int kExact = 1 << 20;

  static PAdic zero(std::uint64_t p, int precision = kExact);
  static PAdic from_integer(const Integer& n, std::uint64_t p, int precision);
  static PAdic from_rational(const Rational& q, std::uint64_t p, int precision);

  std::uint64_t prime() const { return p_; }
  int valuation() const { return val_; }
  int precision() const { return prec_; }
  bool is_zero() const { return unit_ == 0; }
  const Integer& unit() const { return unit_; }

  PAdic with_precision(int precision) const;

  PAdic operator-() const;
  PAdic& operator+=(const PAdic& rhs);
  PAdic& operator-=(const PAdic& rhs);
  PAdic& operator*=(const PAdic& rhs);
  PAdic& operator/=(const PAdic& rhs);
  PAdic& operator+=(const Rational& rhs);
  PAdic& operator-=(const Rational& rhs);
  PAdic& operator*=(const Rational& rhs);
  PAdic& operator/=(const Rational& rhs);

  /// Canonical integer in [0, p^precision); needs valuation >= 0.
  Integer lift() const;
  /// Residue mod p^e. Throws ValuationTooLow / InsufficientPrecision.
  Residue reduce(int e) const;
  /// Greedy Hensel digit d_i in [0, p), i >= -1; needs valuation >= -1.
  int digit(int i) const;

 private:
  static PAdic make(std::uint64_t p, long val, long prec, Integer raw);
  void require_same_prime(const PAdic& rhs) const;

  std::uint64_t p_ = 2;
  int val_ = kExact;
  int prec_ = kExact;
  Integer unit_ = 0;
};

inline PAdic operator+(PAdic a, const PAdic& b) { return a += b; }
inline PAdic operator-(PAdic a, const PAdic& b) { return a -= b; }
inline PAdic operator*(PAdic a, const PAdic& b) { return a *= b; }
inline PAdic operator/(PAdic a, const PAdic& b) { return a /= b; }
inline PAdic operator+(PAdic a, const Rational& b) { return a += b; }
inline PAdic operator-(PAdic a, const Rational& b) { return a -= b; }
inline PAdic operator*(PAdic a, const Rational& b) { return a *= b; }
inline PAdic operator/(PAdic a, const Rational& b) { return a /= b; }
inline PAdic operator+(const Rational& a, PAdic b) { return b += a; }
inline PAdic operator-(const Rational& a, const PAdic& b) { return -b + a; }
inline PAdic operator*(const Rational& a, PAdic b) { return b *= a; }

/// Digits d_{-1}, d_0, ..., d_{count-2} of a rational with valuation >= -1.
struct QpDigits {
  std::uint64_t p = 0;
  std::vector<int> digits;  // digits[0] is d_{-1}

  int at(int i) const { return digits.at(static_cast<std::size_t>(i + 1)); }
  /// d_{-1}/p + sum d_i p^i.
  Rational reconstruct() const;
};

/// count in [1, 5]. Throws ValuationTooLow when v_p(q) < -1.
QpDigits digits(const Rational& q, std::uint64_t p, int count);
int residue_at(const Rational& q, std::uint64_t p, int i);

/// x in [0, p) with p*B_{p-1} = -1 + p*x (mod p^2).
int agoh_giuga_q1(std::uint64_t p);

/// ((w_p)_0, (w_p)_1) from (p-1)! directly, cross-checked against the
/// Bernoulli expressions; FormulaMismatch if they disagree.
std::pair<int, int> wilson_quotient_residues(std::uint64_t p);

class BernoulliTable;
/// Same, taking p*B_{p-1} and p*B_{2(p-1)} from an existing table (e >= 3).
std::pair<int, int> wilson_quotient_residues(const BernoulliTable& table);
/// The Bernoulli route alone: (w_p)_0 = ((pB_{p-1}+1)/p)_0 - 1 and the digit-2
/// expression for (w_p)_1.
std::pair<int, int> wilson_quotient_digits_bernoulli(const BernoulliTable& table);

}  // namespace wilson4
