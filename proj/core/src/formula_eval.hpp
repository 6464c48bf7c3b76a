#pragma once

// Shorthand used by the closed-form code so that formulas read close to the
// displays they implement.

#include "wilson4/padic.hpp"
#include "wilson4/sequences.hpp"

namespace wilson4 {

inline Rational Q(long num, long den = 1) { return make_rational(num, den); }

struct Ev {
  const PrimeContext& c;
  Rational P;

  explicit Ev(const PrimeContext& ctx) : c(ctx), P(Integer(ctx.prime())) {}

  int ip() const { return static_cast<int>(c.prime()); }
  long lp() const { return static_cast<long>(c.prime()); }
  Rational pw(int e) const { return Rational(prime_power(c.prime(), e)); }
  Rational ag() const { return Q(c.agoh_giuga()); }

  PAdic zero() const { return PAdic::zero(c.prime()); }
  PAdic k(const Rational& q) const { return c.constant(q); }
  PAdic b(int i) const { return c.divided(i); }
  PAdic B(int i) const { return c.bernoulli(i); }
  PAdic pB(int i) const { return c.p_bernoulli(i); }
  PAdic CB(int n) const { return c.full_convolution(n); }
  PAdic BBB(int n) const { return c.triple_convolution(n); }
  PAdic TCB(int a, int b) const { return c.truncated_convolution(a, b); }

  /// 2p B_{2(p-1)} - p^2 B_{p-1}^2 (divided Bernoulli numbers), i.e. p^2 CB(p-1) mod p^3.
  PAdic X() const {
    const int p = ip();
    const PAdic b1 = b(p - 1);
    return b(2 * (p - 1)) * Rational(2 * P) - b1 * b1 * pw(2);
  }

  long d(const PAdic& x, int i) const { return x.digit(i); }
  /// Digit of an ordinary integer (or rational) value, for nested brackets.
  long dq(const Rational& x, int i) const { return residue_at(x, c.prime(), i); }
};

}  // namespace wilson4
