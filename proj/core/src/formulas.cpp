#include "wilson4/formulas.hpp"

#include <chrono>

#include "wilson4/errors.hpp"
#include "formula_eval.hpp"
#include "wilson4/oracles.hpp"

namespace wilson4 {

PAdic convolution_value(const ConvolutionKind& kind, const PrimeContext& ctx) {
  switch (kind.tag) {
    case ConvolutionTag::FullCB: return ctx.full_convolution(kind.order);
    case ConvolutionTag::TripleBBB: return ctx.triple_convolution(kind.order);
    case ConvolutionTag::TruncatedTCB: return ctx.truncated_convolution(kind.start, kind.order - kind.start);
  }
  throw Error("unknown convolution kind");
}

Residue convolution(const ConvolutionKind& kind, const PrimeContext& ctx, int e) {
  return convolution_value(kind, ctx).reduce(e);
}

Rational convolution_exact(const ConvolutionKind& kind) {
  switch (kind.tag) {
    case ConvolutionTag::FullCB: return oracle::full_convolution(kind.order);
    case ConvolutionTag::TripleBBB: return oracle::triple_convolution(kind.order);
    case ConvolutionTag::TruncatedTCB: return oracle::truncated_convolution(kind.start, kind.order - kind.start);
  }
  throw Error("unknown convolution kind");
}

namespace closed {

PAdic sums_of_powers(const PrimeContext& c, int k) {
  const Ev v(c);
  const long kk = k;
  return v.pB(k) + v.B(k - 1) * Rational(v.pw(2) * kk / 2) + v.B(k - 2) * Rational(v.pw(3) * kk * (kk - 1) / 6) +
         (k >= 3 ? v.B(k - 3) * Rational(v.pw(4) * kk * (kk - 1) * (kk - 2) / 24) : v.zero());
}

PAdic harmonic_p2(const PrimeContext& c, int k) {
  const Ev v(c);
  const long p = v.lp();
  if (k < p - 1) return v.pB(static_cast<int>(p - 1 - k)) * Q(k, k + 1);
  return -v.pB(static_cast<int>(p - 1)) + Q(2 * (p - 1));
}

PAdic harmonic_p3(const PrimeContext& c, int k) {
  const Ev v(c);
  const int p = v.ip();
  if (k <= p - 4) {
    if (k % 2 == 1) return v.b(p - 2 - k) * Rational(Q(k * (k + 1), 2) * v.pw(2));
    return (v.b(2 * p - 2 - k) - v.b(p - 1 - k) * Q(2)) * Rational(k * v.P);
  }
  if (k == p - 3) return (v.k(Q(1, 2)) - v.B(p + 1) * Q(3)) * v.P - Rational(Q(4, 3) * v.pw(2));
  if (k == p - 2) return -(v.pB(p - 1) + Q(2)) * v.P + Rational(Q(5, 2) * v.pw(2));
  return v.pB(2 * p - 2) - v.pB(p - 1) * Q(3) + Q(3 * (p - 1));
}

PAdic harmonic_p4(const PrimeContext& c, int k) {
  const Ev v(c);
  const int p = v.ip();
  if (k % 2 == 0) {
    return -(v.b(3 * p - 3 - k) - v.b(2 * p - 2 - k) * Q(3) + v.b(p - 1 - k) * Q(3)) * Rational(k * v.P) -
           v.b(p - 3 - k) * Rational(binomial(k + 2, 3) * v.pw(3));
  }
  return -(v.b(2 * p - 3 - k) - v.b(p - 2 - k) * Q(2)) * Rational(binomial(k + 1, 2) * v.pw(2));
}

PAdic harmonic_p3_top(const PrimeContext& c) {
  const Ev v(c);
  const int p = v.ip();
  const Rational& P = v.P;
  PAdic s = v.k(Rational(Q(37, 12) * v.pw(3) - 3 * v.pw(2) + Q(3, 4) * P));
  s -= v.pB(p - 1) * v.pw(2);
  s += v.b(p + 1) * Rational(3 * P * (P - 3));
  s -= v.B(2 * p) * Rational((P - 3 + Q(11, 2) * v.pw(3)) / 2);
  return s;
}

PAdic harmonic_p1_top(const PrimeContext& c) {
  const Ev v(c);
  const int p = v.ip();
  const Rational p3 = v.pw(3);
  PAdic s = v.k(Rational((13 * p3 + 12 * v.P - 12) / 3));
  s += v.pB(p - 1) * Rational((19 * p3 - 12) / 2);
  s += v.pB(2 * (p - 1)) * Rational(4 - 7 * p3);
  s += v.pB(3 * (p - 1)) * Rational((11 * p3 - 6) / 6);
  return s;
}

PAdic stirling_p3(const PrimeContext& c, int j) {
  const Ev v(c);
  const Rational& P = v.P;
  if (j == 1) return v.k(Rational(P * (P - 1) / 2));
  if (j == 2) return v.k(Rational((-P / 6 + Q(3, 4) * P * P) / 2));
  if (j % 2 == 1) return v.B(j - 1) * Rational(v.pw(2) / 2 * Q(j, j - 1));
  const int k = j / 2;
  PAdic s = v.zero();
  for (int r = 1; r < k; ++r) s += v.B(2 * r) * v.B(j - 2 * r) / Q(2 * r);
  return (v.pB(j) - s * v.pw(2)) * Q(-1, 2 * k);
}

PAdic stirling_short(const PrimeContext& c, int j) {
  const Ev v(c);
  const Rational& P = v.P;
  const long n = j / 2;
  if (j == 2) return v.k(Rational(P * (1 - 2 * P) * (5 * P - 2) / 24));
  if (j == 4) return v.k(Rational((P / 15 + P * P / 36 - Q(5, 4) * v.pw(3)) / 8));
  PAdic s = v.pB(j);
  s += v.B(j - 2) * Rational(Q(n * (16 * n * n - 12 * n + 5), 24 * (n - 1)) * v.pw(3));
  s -= v.CB(j) * Rational(v.pw(2) * n);
  s += v.CB(j - 2) * Rational(v.pw(3) / 12);
  PAdic t = v.zero();
  for (int r = 4; r <= j - 4; ++r) {
    if (r % 2 == 0) t += v.B(j - r) * v.CB(r);
  }
  s += t * Rational(v.pw(3) / 2);
  return s * Q(-1, 2 * n);
}

PAdic stirling_convolution(const PrimeContext& c, int j) {
  const Ev v(c);
  const long n = j / 2;
  return v.CB(j) * Rational(v.pw(2) / 2) - v.b(j) * v.P - v.BBB(j) * Rational(v.pw(3) / 6) -
         v.b(j - 2) * Rational(Q(16 * n * n - 12 * n + 5, 24) * v.pw(3));
}

PAdic inverse_factorial_p3(const PrimeContext& c) {
  const Ev v(c);
  const int p = v.ip();
  const PAdic pb = v.b(p - 1) * v.P;
  return (pb - Q(1)) * Q(3) - v.b(2 * (p - 1)) * v.P - pb * pb * Q(1, 2);
}

PAdic mhs_p3(const PrimeContext& c, int k) {
  const Ev v(c);
  const int p = v.ip();
  const Rational ag = v.ag();
  if (k == p - 1) return inverse_factorial_p3(c);
  if (k == p - 2) return v.k(Rational(v.P / 2 - v.pw(2) + ag * v.pw(2) / 2));
  if (k == p - 3) return v.k(Rational(v.P / 12 - Q(11, 24) * v.pw(2) + v.pw(2) / 12 * ag));
  if (k % 2 == 1) return v.b(p - 2 - k) * Rational(Q(k + 1, 2) * v.pw(2));
  return (v.b(p - 1 - k) * Q(2) - v.b(2 * (p - 1) - k)) * v.P + v.TCB(p + 1 - k, p - 3) * Rational(v.pw(2) / 2);
}

namespace {

// A_j mod p^4 for even j: short closed forms below 6, the general form from there on.
PAdic stirling_even_p4(const PrimeContext& c, int j) {
  return j < 6 ? stirling_short(c, j) : stirling_convolution(c, j);
}

}  // namespace

PAdic mhs_via_stirling(const PrimeContext& c, int j, int part) {
  const Ev v(c);
  const int p = v.ip();
  const Rational& P = v.P;
  const PAdic& w = c.wilson_quotient();
  const Rational ag = v.ag();
  if (part == 0) {
    part = j == 2 ? 2 : j == p - 5 ? 3 : j == p - 3 ? 4 : j == p - 1 ? 5 : 1;
  }
  switch (part) {
    case 2:
      return -stirling_even_p4(c, p - 3) + w * (v.b(p - 3) * Q(2) - v.b(2 * p - 4)) * v.pw(2);
    case 3:
      return v.k(Rational((Q(5, 4) * v.pw(3) - P / 15 - P * P / 36) / 8)) +
             w * Rational(P / 120 * (Q(7, 12) * P * P - P * (1 + P * ag)));
    case 4:
      return (v.k(Rational(P * (2 * P - 1) * (5 * P - 2))) +
              w * Rational(P * (2 * P - 11 * P * P + 2 * P * P * ag))) *
             Q(1, 24);
    case 5:
      return w * v.P * (inverse_factorial_p3(c)) - Q(1);
    default: {
      const PAdic pw1 = w * P + Q(1);
      return -stirling_even_p4(c, p - 1 - j) + w * pw1 * v.b(p - 1 - j) * v.pw(2) -
             w * v.CB(p - 1 - j) * Rational(v.pw(3) / 2);
    }
  }
}

namespace {

// p(2B_4 - B_{p+3}) + 1/2 (7p^2/720 + 2p B_{p+3} + 2p B_4 pB_{p-1}), with B = divided.
PAdic r10_iii_block(const Ev& v) {
  const int p = v.ip();
  return (v.b(4) * Q(2) - v.b(p + 3)) * v.P +
         (v.k(Rational(Q(7, 720) * v.pw(2))) + v.b(p + 3) * Rational(2 * v.P) +
          v.b(4) * v.pB(p - 1) * Rational(2 * v.P)) *
             Q(1, 2);
}

// A*_{p-3} mod p^3 (its p-integral closed form).
PAdic mhs_p3_top3(const Ev& v) {
  return v.k(Rational(v.P / 12 - Q(11, 24) * v.pw(2) + v.pw(2) / 12 * v.ag()));
}

// H_{p-1,p-3} mod p^3.
PAdic h_p3_minus3(const Ev& v) {
  const int p = v.ip();
  return (v.k(Q(1, 2)) - v.B(p + 1) * Q(3)) * v.P - Rational(Q(4, 3) * v.pw(2));
}

}  // namespace

PAdic mhs_newton_sum(const PrimeContext& c, int j) {
  const Ev v(c);
  const int p = v.ip();
  const Rational& P = v.P;
  const Rational p2 = v.pw(2), p3 = v.pw(3);
  const PAdic& w = c.wilson_quotient();
  const long n = j / 2;
  if (j <= p - 5) {
    PAdic s = -(v.b(3 * p - 3 - j) - v.b(2 * p - 2 - j) * Q(3) + v.b(p - 1 - j) * Q(3)) * Rational(j * P) -
              v.b(p - 3 - j) * Rational(binomial(j + 2, 3) * p3);
    s += (v.b(p - 3) * Q(2) - v.b(2 * p - 4)) * (v.b(2 * p - j) - v.b(p + 1 - j) * Q(2)) *
         Rational((j - 2) * p2);
    for (int r = 4; r <= j - 2; ++r) {
      const long f = j - r;
      s += (v.b(2 * (p - 1) - j + r) - v.b(p - 1 - j + r) * Q(2)) * v.b(p - 1 - r) * Rational(f * p2);
      s += v.CB(p - 1 - r) * v.b(p - 1 - j + r) * Rational(f * p3 / 2);
      s -= w * v.b(p - 1 - j + r) * v.b(p - 1 - r) * Rational(f * p3);
    }
    return s * Q(-1, 2 * n);
  }
  const PAdic r10 = r10_iii_block(v);
  if (j == p - 3) {
    PAdic s = harmonic_p3_top(c);
    s += (v.b(p + 3) - v.b(4) * Q(2)) * (v.b(p - 3) * Q(2) - v.b(2 * p - 4)) * Rational(p2 * (P - 5));
    s += (v.b(2 * p - 4) - v.b(p - 3) * Q(2)) * r10 * Rational(2 * P);
    for (int r = 4; r <= p - 7; ++r) {
      const long f = p - 3 - r;
      s += (v.b(p + 1 + r) - v.b(r + 2) * Q(2)) * v.b(p - 1 - r) * Rational(f * p2);
      s += v.CB(p - 1 - r) * v.b(r + 2) * Rational(f * p3 / 2);
      s -= w * v.b(r + 2) * v.b(p - 1 - r) * Rational(f * p3);
    }
    return s * Q(-1, p - 3);
  }
  PAdic s = harmonic_p1_top(c);
  s += (v.b(p - 3) * Q(2) - v.b(2 * p - 4)) * h_p3_minus3(v) * v.P + v.b(p - 3) * Rational(p3 / 2);
  s += (v.b(2 * p - 4) - v.b(p - 3) * Q(2)) * mhs_p3_top3(v) * Rational(2 * P);
  s += (v.b(2 * p - 6) - v.b(p - 5) * Q(2)) * r10 * Rational(4 * P);
  for (int r = 4; r <= p - 7; ++r) {
    const long f = p - 1 - r;
    s += (v.b(p - 1 + r) - v.b(r) * Q(2)) * v.b(p - 1 - r) * Rational(f * p2);
    s += v.CB(p - 1 - r) * v.b(r) * Rational(f * p3 / 2);
    s -= w * v.b(r) * v.b(p - 1 - r) * Rational(f * p3);
  }
  return s * Q(-1, p - 1);
}

namespace {

// 0 below index 2, else B_i/i + B_i.
PAdic bz(const Ev& v, int i) { return i < 2 ? v.zero() : v.b(i) + v.B(i); }

}  // namespace

PAdic mhs_closed(const PrimeContext& c, int j) {
  const Ev v(c);
  const int p = v.ip();
  const Rational p2 = v.pw(2), p3 = v.pw(3);
  const PAdic& w = c.wilson_quotient();
  const long n = j / 2;

  PAdic s = (v.BBB(2 * (p - 1) - j) - v.BBB(p - 1 - j)) * Q(2 * n - 1, 3) - v.BBB(p - 1 - j) * Q(2 * n, 3);
  s *= Rational(p3 / 2);

  // sum_a (sum_i c_i a^{-i}) q_a^2 a^{-2n}, collapsed onto the Fermat-quotient power sums.
  PAdic tot = v.zero();
  for (int i = p + 1 - j; i <= p - 5; ++i) {
    if (i % 2) continue;
    tot += (v.b(i) * Q(2 * n + 1) + v.B(i)) * Q(static_cast<long>(c.fermat_square_sum(i + j)));
  }
  for (int i = 2; i <= p - 7 - j; ++i) {
    if (i % 2) continue;
    tot += (v.b(i) + v.B(i)) * Q(static_cast<long>(c.fermat_square_sum(i + j)));
  }
  s -= tot * Rational(p3 / 2);

  s += -(v.b(3 * p - 3 - j) - v.b(2 * p - 2 - j) * Q(3) + v.b(p - 1 - j) * Q(3)) * Rational(j * v.P) -
       v.b(p - 3 - j) * Rational(binomial(j + 2, 3) * p3);
  s += v.b(p - 3) * (v.b(2 * p - j) - v.b(p + 1 - j)) * Rational(2 * (n - 1) * p2);
  s -= (w * v.P + Q(1)) * v.TCB(p + 1 - j, p - 3) * Rational(p2 * n);
  s += -v.CB(p - 1 - j) * Rational(Q(2 * n - 1, 2) * p2) + v.CB(p - 1) * bz(v, p - 1 - j) * Rational(p3 / 2);
  s += ((v.TCB(4, p - 3) + v.b(2) * v.b(p - 1) * Q(2)) * Rational(p3 / 2) - v.b(2) * p2) * bz(v, p - 3 - j);
  s += ((v.TCB(6, p - 3) + v.b(4) * v.b(p - 1) * Q(2) + v.b(2) * v.b(2)) * Rational(p3 / 2) - v.b(4) * p2) *
       bz(v, p - 5 - j);
  return s * Q(-1, 2 * n);
}

PAdic mhs_top_minus3(const PrimeContext& c) {
  const Ev v(c);
  const int p = v.ip();
  const Rational& P = v.P;
  const Rational p2 = v.pw(2), p3 = v.pw(3);
  const PAdic& w = c.wilson_quotient();
  PAdic s = harmonic_p3_top(c);
  s += (v.b(p + 3) - v.b(4) * Q(2)) * (v.b(p - 3) * Q(2) - v.b(2 * p - 4)) * Rational(p2 * (P - 5));
  s += (v.b(2 * p - 4) - v.b(p - 3) * Q(2)) * r10_iii_block(v) * Rational(2 * P);
  s -= (v.BBB(p + 1) * Q(4, 3) - v.CB(p - 1) * (v.b(2) + v.B(2)) - v.CB(p - 3) * (v.b(4) + v.B(4)) -
        v.b(2) * v.b(2) * (v.b(p - 3) + v.B(p - 3))) *
       Rational(p3 / 2);
  s += (w * P + Q(1)) * (v.b(4) * v.b(p - 3) * Q(2) - v.TCB(4, p - 3)) * Rational(p2 * (P - 3) / 2);
  PAdic tot = v.zero();
  for (int i = 6; i <= p - 5; i += 2) {
    tot += (v.B(i) - v.b(i) * Q(2)) * Q(static_cast<long>(c.fermat_square_sum(i - 2)));
  }
  s -= tot * Rational(p3 / 2);
  return s * Q(-1, p - 3);
}

PAdic mhs_top(const PrimeContext& c) {
  const Ev v(c);
  const int p = v.ip();
  const Rational& P = v.P;
  const Rational p2 = v.pw(2), p3 = v.pw(3);
  const PAdic& w = c.wilson_quotient();
  const PAdic pw1 = w * P + Q(1);
  const PAdic x = v.X();
  PAdic s = -v.BBB(p - 1) * Rational(p3 / 3);
  s += (w * v.b(p - 3) + v.d(v.b(2 * p - 4) - v.b(p - 3), 1)) * Rational(p3 / 4);
  s += -v.b(p - 5) * Rational(p3 / 72) + v.b(p - 3) * Rational(Q(7, 12) * p3);
  s += v.k(Rational(p3 / 2 * v.d(v.CB(p - 1), 1)));
  s += pw1 * Rational((1 - P) / 2 * p2 * v.d(x, 2));
  s -= pw1 * (v.b(p - 3) * Q(1, 2) + v.b(p - 5) * Q(1, 5)) * Rational(p2 / 6);
  PAdic tot = v.zero();
  for (int i = 6; i <= p - 5; i += 2) tot += v.B(i) * Q(static_cast<long>(c.fermat_square_sum(i)));
  s -= tot * Rational(p3 / 2);
  s += harmonic_p1_top(c);
  s += (v.b(p - 3) * Q(2) - v.b(2 * p - 4)) * h_p3_minus3(v) * v.P;
  s += (v.b(2 * p - 4) - v.b(p - 3) * Q(2)) * mhs_p3_top3(v) * Rational(2 * P);
  s += (v.b(2 * p - 6) - v.b(p - 5) * Q(2)) * r10_iii_block(v) * Rational(4 * P);
  return s * Q(-1, p - 1);
}

PAdic r10_i(const PrimeContext& c, int n2) {
  const Ev v(c);
  const int p = v.ip();
  return -v.CB(p - 1 - n2) * Rational(v.pw(2) / 2) + (v.b(2 * (p - 1) - n2) - v.b(p - 1 - n2)) * v.P +
         v.b(p - 1 - n2) * Rational(v.pw(2) * (v.ag() - 1));
}

PAdic r10_ii(const PrimeContext& c) {
  const Ev v(c);
  const int p = v.ip();
  return v.b(p + 1) * Rational(2 * v.P) + v.b(2) * v.pw(2) + v.b(2) * v.pB(p - 1) * Rational(2 * v.P);
}

PAdic r10_iii(const PrimeContext& c) {
  const Ev v(c);
  const int p = v.ip();
  return v.k(Rational(Q(7, 720) * v.pw(2))) + v.b(p + 3) * Rational(2 * v.P) +
         v.b(4) * v.pB(p - 1) * Rational(2 * v.P);
}

PAdic r11_i(const PrimeContext& c) { return Ev(c).X(); }

PAdic r11_ii(const PrimeContext& c) {
  const Ev v(c);
  const int p = v.ip();
  return c.wilson_quotient() * v.b(p - 3) * Q(2) + Q(2 * v.d(v.b(2 * p - 4) - v.b(p - 3), 1));
}

PAdic r11_iii(const PrimeContext& c) {
  const Ev v(c);
  const int p = v.ip();
  return c.wilson_quotient() * v.b(p - 5) * Q(2) + Q(2 * v.d(v.b(2 * p - 6) - v.b(p - 5), 1)) -
         v.b(p - 3) * v.b(p - 3);
}

PAdic mt1_i(const PrimeContext& c) {
  const Ev v(c);
  const int p = v.ip();
  const auto [w0, w1] = c.wilson_digits();
  const PAdic b3 = v.b(p - 3), b24 = v.b(2 * p - 4);
  PAdic t = v.k(Rational(3 * v.d(v.CB(p - 3), 1)));
  t -= v.b(p - 5) * Q(11, 4);
  t += Q(6 * v.d(v.b(3 * p - 5) - b24 * Q(3) + b3 * Q(2), 2));
  t += Q(v.dq(Q(6 * v.d(b3 - b24, 1)), 1));
  const PAdic inner = v.k(Q(2 * v.d(b24 - b3, 1))) + b3 * Q(2 * w0);
  t += Q(v.dq(Q(3 * v.d(inner, 0)), 1));
  t += Q(w1 * v.d(b3 * Q(-6), 0));
  t += Q(w0 * v.d((b24 - b3 * Q(2)) * Q(6), 1));
  t += Q(v.dq(Q(w0 * v.d(b3 * Q(-6), 0)), 1));
  const long brace = v.dq(Q(6 * v.d(b3 - b24, 1)), 0) + v.d(b3 * Q(-6 * w0), 0) + v.dq(Q(3 * v.d(inner, 0)), 0);
  t += Q(v.dq(Q(brace), 1));
  return t;
}

PAdic mt1_ii(const PrimeContext& c) {
  const Ev v(c);
  const int p = v.ip();
  const auto [w0, w1] = c.wilson_digits();
  const PAdic b3 = v.b(p - 3), b5 = v.b(p - 5), b24 = v.b(2 * p - 4), b26 = v.b(2 * p - 6);
  const long d30 = v.d(b3, 0);
  PAdic t = v.k(Rational(3 * v.d(v.CB(p - 5), 1)));
  t -= v.b(p - 7) * Q(15, 4);
  t += Q(v.dq(Q(3 * d30 * d30), 1));
  t += b3 * Q(6 * v.d(b3 * Q(2) - b24, 1));
  t += Q(6 * v.d(v.b(3 * p - 7) - b26 * Q(3) + b5 * Q(2), 2));
  t += Q(v.dq(Q(6 * v.d(b5 - b26, 1)), 1));
  t += Q(w0 * v.d(b5 * Q(-6), 1));
  t += Q(w1 * v.d(b5 * Q(-6), 0));
  t += Q(v.dq(Q(w0 * v.d(b5 * Q(-6), 0)), 1));
  t += Q(v.d(b5 * Q(-6L * w0 * w0), 0));
  const PAdic inner = v.k(Q(2 * v.d(b26 - b5, 1))) + b5 * Q(2 * w0) - b3 * b3;
  t += Q(v.dq(Q(3L * w0 * v.d(inner, 0)), 0));
  t += Q(v.dq(Q(3 * v.d(inner, 0)), 1));
  const long brace = v.dq(Q(3 * d30 * d30), 0) + v.dq(Q(6 * v.d(b5 - b26, 1)), 0) +
                     v.dq(Q(-6L * w0 * v.d(b5, 0)), 0) + v.dq(Q(3 * v.d(inner, 0)), 0);
  t += Q(v.dq(Q(brace), 1));
  return t;
}

PAdic quotient_square_sum(const PrimeContext& c) {
  const Ev v(c);
  const AppendixTerms a = appendix_terms(c);
  // O_1 carries a non-digit 6 B_{p-3}(...) term, so O is only meaningful mod p.
  return v.k(Rational(v.pw(3) / 2 * (v.d(v.CB(v.ip() - 1), 1) + a.o_sum)));
}

PAdic eq90(const PrimeContext& c) {
  const Ev v(c);
  const int p = v.ip();
  const Rational p3 = v.pw(3);
  const PAdic cb = v.CB(p - 1);
  const PAdic a = PAdic::from_integer(wilson_formula(c, 4).value(), c.prime(), 4);
  return v.k(Rational(3 * v.d(cb, 1) * p3 + 3 * v.pw(2) * v.d(cb, 0))) - a * Q(6) -
         v.b(p - 1) * Rational(6 * v.P) - v.b(p - 3) * Rational(Q(15, 4) * p3);
}

}  // namespace closed

}  // namespace wilson4

namespace wilson4 {

namespace {

void require_index(const PrimeContext& ctx, int k) {
  if (k < 1 || static_cast<std::uint64_t>(k) > ctx.prime() - 1) {
    throw Error("index " + std::to_string(k) + " outside [1, p-1]");
  }
}

Unsupported unsupported(const char* what, int k, int e) {
  return Unsupported(std::string(what) + ": no closed form for k=" + std::to_string(k) + " mod p^" +
                     std::to_string(e));
}

}  // namespace

Residue harmonic_formula(const PrimeContext& ctx, int k, int e) {
  require_index(ctx, k);
  const int p = static_cast<int>(ctx.prime());
  switch (e) {
    case 1:
    case 2: return closed::harmonic_p2(ctx, k).reduce(e);
    case 3: return closed::harmonic_p3(ctx, k).reduce(e);
    case 4:
      if (p > 5 && k <= p - 5) return closed::harmonic_p4(ctx, k).reduce(e);
      if (k == p - 3) return closed::harmonic_p3_top(ctx).reduce(e);
      if (k == p - 1) return closed::harmonic_p1_top(ctx).reduce(e);
      break;
    default: break;
  }
  throw unsupported("harmonic_formula", k, e);
}

Residue stirling_formula(const PrimeContext& ctx, int k, int e) {
  require_index(ctx, k);
  if (e >= 1 && e <= 3) return closed::stirling_p3(ctx, k).reduce(e);
  if (e == 4 && k % 2 == 0) {
    return (k < 6 ? closed::stirling_short(ctx, k) : closed::stirling_convolution(ctx, k)).reduce(e);
  }
  throw unsupported("stirling_formula", k, e);
}

Residue mhs_formula(const PrimeContext& ctx, int k, int e, MhsVariant variant) {
  require_index(ctx, k);
  const int p = static_cast<int>(ctx.prime());
  const bool even = k % 2 == 0;
  if (variant == MhsVariant::Auto) {
    if (e <= 3) {
      variant = MhsVariant::ModP3;
    } else if (e == 4 && even) {
      variant = k <= p - 5 ? MhsVariant::Closed : k == p - 3 ? MhsVariant::TopMinus3 : MhsVariant::Top;
    } else {
      throw unsupported("mhs_formula", k, e);
    }
  }
  if (variant == MhsVariant::ModP3) {
    if (e > 3) throw unsupported("mhs_formula (mod p^3 form)", k, e);
    return closed::mhs_p3(ctx, k).reduce(e);
  }
  if (e != 4 || !even) throw unsupported("mhs_formula", k, e);
  switch (variant) {
    case MhsVariant::ViaStirling:
      if (k == 2 || (k >= 4 && k <= p - 7) || k >= p - 5) return closed::mhs_via_stirling(ctx, k).reduce(e);
      break;
    case MhsVariant::NewtonSum:
      if (k <= p - 5 || k == p - 3 || k == p - 1) return closed::mhs_newton_sum(ctx, k).reduce(e);
      break;
    case MhsVariant::Closed:
      if (k <= p - 5) return closed::mhs_closed(ctx, k).reduce(e);
      break;
    case MhsVariant::TopMinus3:
      if (k == p - 3) return closed::mhs_top_minus3(ctx).reduce(e);
      break;
    case MhsVariant::Top:
      if (k == p - 1) return closed::mhs_top(ctx).reduce(e);
      break;
    default: break;
  }
  throw unsupported("mhs_formula", k, e);
}

namespace {

struct Digits {
  long x2, bp0, bp1, bp2, bd0, bd1, bd2;
};

Digits appendix_digits(const Ev& v) {
  const int p = v.ip();
  const PAdic b1 = v.b(p - 1), b2 = v.b(2 * (p - 1));
  return {v.d(v.X(), 2), v.d(b1, 0), v.d(b1, 1), v.d(b1, 2), v.d(b2, 0), v.d(b2, 1), v.d(b2, 2)};
}

}  // namespace

AppendixTerms appendix_terms(const PrimeContext& ctx) {
  const Ev v(ctx);
  const long p = v.lp();
  if (p < 7) throw Error("appendix_terms needs p >= 7");
  const auto [x2, bp0, bp1, bp2, bd0, bd1, bd2] = appendix_digits(v);
  auto dq = [&](long x, int i) { return v.dq(Q(x), i); };
  auto mod = [&](long x) { return static_cast<int>(((x % p) + p) % p); };

  const long t0 = (p - 1) / 2 * x2, t1 = (p + 1) / 2 * x2;
  const long o0 = dq(2 * x2 + bp0 * bp0 + 2 * bp1 + dq(2 * bp0, 1), 1);
  const long o1_hat = 2 * bp1 * bp0 + 2 * bp2;
  const PAdic o1_tail = v.b(static_cast<int>(p - 3)) * Q(6 * (v.d(v.b(2), 1) - v.d(v.b(static_cast<int>(p + 1)), 1)));
  const long o2 = 2 * x2;
  const long o3 = -dq(2 * dq(t1, 0), 1) - 2 * dq(t0, 1) - 2 * dq(2 * dq(t0, 0), 1);
  const long shared = dq(2 * (1 + bd0), 1) + 1 + 2 * (1 + bd0 + bd1);
  const long o4 = -dq(shared, 1) - dq(2 * (1 + bd0), 2) - 2 * (1 + bd1 + bd2 + 2 * (1 + bd0));
  const long o5 = dq(3 + 2 * bp0, 1) + 5 + 4 * bp0 + bp0 * bp0 + 2 * bp1;
  const long o6 = -dq(x2 + dq(-3 - 2 * bp0, 0) + dq(shared, 0), 1);

  AppendixTerms a;
  const int o1 = mod(o1_hat - static_cast<long>(mpz_get_ui(o1_tail.reduce(1).value().get_mpz_t())));
  a.o = {mod(o0), o1, mod(o2), mod(o3), mod(o4), mod(o5), mod(o6)};
  a.o_hat = {mod(o0), mod(o1_hat), 0, mod(o3), mod(o4), mod(o5), mod(o6)};
  for (int i = 0; i < 7; ++i) {
    a.o_sum = (a.o_sum + a.o[i]) % static_cast<int>(p);
    a.o_hat_sum = (a.o_hat_sum + a.o_hat[i]) % static_cast<int>(p);
  }

  const int ip = static_cast<int>(p);
  const Rational& P = v.P;
  PAdic op = v.k(Rational(v.pw(2) / 2 * (1 + P * (v.ag() - 1)) * x2 - 4));
  op += v.b(ip - 1) * Rational(6 * P) - v.b(2 * (ip - 1)) * Rational(8 * P) + v.b(3 * (ip - 1)) * Rational(3 * P);
  op += v.b(ip - 3) * Rational(v.pw(2) * (Q(1, 4) - 3 * v.d(v.b(2), 0) - P * (Q(1, 4) + 3 * v.d(v.b(ip + 1), 1))));
  a.o_prime = op.reduce(4);
  return a;
}

namespace {

Rational redt(const PAdic& x) { return Rational(x.reduce(3).value()); }

}  // namespace

Residue wilson_formula(const PrimeContext& ctx, int e) {
  const Ev v(ctx);
  const int p = v.ip();
  if (e == 2) return (v.pB(p - 1) - v.P).reduce(2);
  const PAdic inv = closed::inverse_factorial_p3(ctx);  // also the mod p^3 factorial, up to the leading terms below
  const PAdic pb1 = v.b(p - 1) * v.P;
  if (e == 3) return (-pb1 + v.b(2 * (p - 1)) * v.P - pb1 * pb1 * Q(1, 2)).reduce(3);
  if (e != 4) throw Unsupported("wilson_formula: exponent must be 2, 3 or 4");
  if (p < 7) throw Error("wilson_formula mod p^4 needs p >= 7");

  const AppendixTerms a = appendix_terms(ctx);
  const PAdic x = v.X();
  const long x2 = v.d(x, 2);
  const Rational& P = v.P;
  const Rational p3 = v.pw(3);
  PAdic f = -v.b(p - 3) * p3;
  f += v.k(Rational(v.pw(2) / 2 * x2 * (3 - P * (1 + v.ag())) - p3 / 2 * a.o_hat_sum + 4));
  f += -v.b(p - 1) * Rational(10 * P) + v.b(2 * (p - 1)) * Rational(8 * P) - v.b(3 * (p - 1)) * Rational(3 * P);
  f += (pb1 * redt(x) - pb1 * pb1 + Q(1)) * redt(inv);
  return (f * Q(1, 3)).reduce(4);
}

Residue wilson_formula_alt(const PrimeContext& ctx) {
  const Ev v(ctx);
  const int p = v.ip();
  const AppendixTerms a = appendix_terms(ctx);
  const PAdic x = v.X();
  const Rational p3 = v.pw(3);
  const PAdic pb1 = v.b(p - 1) * v.P;
  const Rational inv = redt(closed::inverse_factorial_p3(ctx));
  PAdic f = v.k(Rational(2 * v.pw(2) * v.d(x, 2) - p3 / 2 * a.o_sum)) - pb1 * Q(4) -
            v.b(p - 3) * Rational(Q(5, 4) * p3) - PAdic::from_integer(a.o_prime.value(), ctx.prime(), 4);
  f -= (-pb1 * redt(x) + pb1 * pb1 - Q(1)) * inv;
  return (f * Q(1, 3)).reduce(4);
}

const char* to_string(KummerFamily f) {
  switch (f) {
    case KummerFamily::K1: return "K1";
    case KummerFamily::K2: return "K2";
    case KummerFamily::K3: return "K3";
    case KummerFamily::S2: return "S2";
    case KummerFamily::S3: return "S3";
    case KummerFamily::S4: return "S4";
    case KummerFamily::EM: return "EM";
    case KummerFamily::L1: return "L1";
    case KummerFamily::EQ70: return "EQ70";
    case KummerFamily::EQ73: return "EQ73";
    case KummerFamily::WolstenholmeBinomial: return "EQ73.wolstenholme";
  }
  return "?";
}

int modulus_exponent(KummerFamily f) {
  switch (f) {
    case KummerFamily::K1:
    case KummerFamily::EQ70: return 1;
    case KummerFamily::K2:
    case KummerFamily::S2:
    case KummerFamily::EM:
    case KummerFamily::L1: return 2;
    case KummerFamily::K3:
    case KummerFamily::S3:
    case KummerFamily::WolstenholmeBinomial: return 3;
    case KummerFamily::S4:
    case KummerFamily::EQ73: return 4;
  }
  return 1;
}

namespace {

template <class F>
CongruenceReport timed(std::string id, std::uint64_t p, int e, F&& sides) {
  const auto t0 = std::chrono::steady_clock::now();
  auto [lhs, rhs] = sides();
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return make_report(std::move(id), p, e, std::move(lhs), std::move(rhs), ms);
}

std::string param_suffix(KummerFamily f, const KummerParams& q) {
  switch (f) {
    case KummerFamily::K1:
    case KummerFamily::K2:
    case KummerFamily::K3: return "[b=" + std::to_string(q.b) + ",k=" + std::to_string(q.k) + "]";
    case KummerFamily::S2:
    case KummerFamily::S3:
    case KummerFamily::S4:
    case KummerFamily::L1: return "[k=" + std::to_string(q.k) + "]";
    case KummerFamily::EM: return "[n=" + std::to_string(q.n) + "]";
    default: return "";
  }
}

}  // namespace

CongruenceReport kummer_family_check(const PrimeContext& ctx, KummerFamily family, const KummerParams& q) {
  const Ev v(ctx);
  const std::uint64_t up = ctx.prime();
  const int p = v.ip();
  const int e = modulus_exponent(family);
  const Rational& P = v.P;
  const int b = q.b;
  const long k = q.k;
  return timed(std::string(to_string(family)) + param_suffix(family, q), up, e, [&]() -> std::pair<Residue, Residue> {
    switch (family) {
      case KummerFamily::K1:
        return {rat_reduce(oracle::divided(static_cast<int>(k * (p - 1) + b)), up, e), v.b(b).reduce(e)};
      case KummerFamily::K2: {
        const Rational tail = (k - 1) * (1 - Rational(prime_power(up, b - 1)));
        return {rat_reduce(oracle::divided(static_cast<int>(k * (p - 1) + b)), up, e),
                (v.b(p - 1 + b) * Q(k) - v.b(b) * tail).reduce(e)};
      }
      case KummerFamily::K3: {
        const Rational tail = Q((k - 1) * (k - 2), 2) * (1 - Rational(prime_power(up, b - 1)));
        return {rat_reduce(oracle::divided(static_cast<int>(k * (p - 1) + b)), up, e),
                (v.b(2 * (p - 1) + b) * Q(k * (k - 1) / 2) - v.b(p - 1 + b) * Q(k * (k - 2)) + v.b(b) * tail)
                    .reduce(e)};
      }
      case KummerFamily::S2:
        return {rat_reduce(P * bernoulli_exact(static_cast<int>(k * (p - 1))), up, e),
                (v.pB(p - 1) * Q(k) - Q((k - 1) * (p - 1))).reduce(e)};
      case KummerFamily::S3:
        return {rat_reduce(P * bernoulli_exact(static_cast<int>(k * (p - 1))), up, e),
                (v.k(Q((k - 2) * (k - 1) * (p - 1), 2)) - v.pB(p - 1) * Q(k * (k - 2)) +
                 v.pB(2 * (p - 1)) * Q(k * (k - 1), 2))
                    .reduce(e)};
      case KummerFamily::S4:
        return {rat_reduce(P * bernoulli_exact(static_cast<int>(k * (p - 1))), up, e),
                (v.k(Q(-(k - 1) * (k - 2) * (k - 3) * (p - 1), 6)) + v.pB(p - 1) * Q((k - 2) * (k - 3) * k, 2) -
                 v.pB(2 * (p - 1)) * Q(k * (k - 1) * (k - 3), 2) + v.pB(3 * (p - 1)) * Q(k * (k - 1) * (k - 2), 6))
                    .reduce(e)};
      case KummerFamily::EM: {
        const long s = static_cast<long>(ctx.fermat_square_sum(-q.n));
        return {rat_reduce(oracle::divided(p - 1 + q.n), up, e), (v.b(q.n) - Q(s) * P / 2).reduce(e)};
      }
      case KummerFamily::L1: {
        const Rational h = oracle::harmonic_number(q.k);
        return {rat_reduce(Rational(binomial(up - 1, static_cast<unsigned long>(k))), up, e),
                rat_reduce(Rational((k % 2 ? -1 : 1) * (1 - P * h)), up, e)};
      }
      case KummerFamily::EQ70:
        return {rat_reduce(Rational(binomial(2 * up - 2, up - 1)), up, e), Residue(0, prime_power(up, e))};
      case KummerFamily::EQ73:
        return {rat_reduce(Rational(binomial(2 * up - 2, up - 1)), up, e),
                rat_reduce(Rational(-4 * P * P * P - 2 * P * P - P), up, e)};
      case KummerFamily::WolstenholmeBinomial:
        return {rat_reduce(Rational(binomial(2 * up - 1, up - 1)), up, e), Residue(1, prime_power(up, e))};
    }
    throw Error("unknown family");
  });
}

IdentityReport miki_check(int n) {
  if (n < 6 || n % 2) throw Error("miki_check needs an even n >= 6");
  IdentityReport r;
  r.id = "MIKI[n=" + std::to_string(n) + "]";
  r.lhs = oracle::full_convolution(n);
  Rational rhs = 0;
  for (int i = 2; i <= n - 2; ++i) {
    rhs += Rational(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(i))) * oracle::divided(i) *
           oracle::divided(n - i);
  }
  rhs += 2 * oracle::harmonic_number(n) * oracle::divided(n);
  r.rhs = rhs;
  r.pass = r.lhs == r.rhs;
  return r;
}

CongruenceReport derived_identities(const PrimeContext& ctx, const std::string& id, int param) {
  const std::uint64_t up = ctx.prime();
  const int p = static_cast<int>(up);
  const Rational P{Integer(up)};
  const Rational p2 = P * P, p3 = p2 * P;
  auto ex = [&](const Rational& q, int e) { return rat_reduce(q, up, e); };
  using Sides = std::pair<Residue, Residue>;

  if (id == "MT1.i") {
    return timed(id, up, 1, [&]() -> Sides {
      return {ex(oracle::triple_convolution(p - 3), 1), closed::mt1_i(ctx).reduce(1)};
    });
  }
  if (id == "MT1.ii") {
    return timed(id, up, 1, [&]() -> Sides {
      return {ex(oracle::triple_convolution(p - 5), 1), closed::mt1_ii(ctx).reduce(1)};
    });
  }
  if (id == "R10.i") {
    return timed(id + "[2n=" + std::to_string(param) + "]", up, 3, [&]() -> Sides {
      return {ex(p2 / 2 * oracle::truncated_convolution(p + 1 - param, p - 3), 3),
              closed::r10_i(ctx, param).reduce(3)};
    });
  }
  if (id == "R10.ii") {
    return timed(id, up, 3, [&]() -> Sides {
      return {ex(p2 * oracle::truncated_convolution(4, p - 3), 3), closed::r10_ii(ctx).reduce(3)};
    });
  }
  if (id == "R10.iii") {
    return timed(id, up, 3, [&]() -> Sides {
      return {ex(p2 * oracle::truncated_convolution(6, p - 3), 3), closed::r10_iii(ctx).reduce(3)};
    });
  }
  if (id == "R11.i") {
    return timed(id, up, 3, [&]() -> Sides {
      return {ex(p2 * oracle::full_convolution(p - 1), 3), closed::r11_i(ctx).reduce(3)};
    });
  }
  if (id == "R11.ii") {
    return timed(id, up, 1, [&]() -> Sides {
      return {ex(oracle::full_convolution(p - 3), 1), closed::r11_ii(ctx).reduce(1)};
    });
  }
  if (id == "R11.iii") {
    return timed(id, up, 1, [&]() -> Sides {
      return {ex(oracle::full_convolution(p - 5), 1), closed::r11_iii(ctx).reduce(1)};
    });
  }
  if (id == "T6") {
    return timed(id, up, 4, [&]() -> Sides {
      const auto q = fermat_quotients(up);
      Rational s = 0;
      for (int i = 2; i <= p - 5; i += 2) {
        Integer inner = 0;
        for (std::uint64_t a = 1; a < up; ++a) {
          const Integer qa = q[a - 1];
          inner += qa * qa * mod_pow(a, Integer(static_cast<unsigned long>(p - 1 - i)), up).value();
        }
        s += bernoulli_exact(i) * Rational(inner);
      }
      return {ex(-p3 / 2 * s, 4), closed::quotient_square_sum(ctx).reduce(4)};
    });
  }
  if (id == "EQ60") {
    return timed(id + "[i=" + std::to_string(param) + "]", up, 1, [&]() -> Sides {
      const int lhs = residue_at(Rational(binomial(2 * (up - 1), static_cast<unsigned long>(param))), up, 1);
      long rhs = 0;
      for (int k = 1; k <= param; ++k) rhs += residue_at(oracle::harmonic_number(k), up, 0);
      return {Residue(lhs, P.get_num()), Residue(-2 * rhs, P.get_num())};
    });
  }
  if (id == "EQ89") {
    return timed(id, up, 4, [&]() -> Sides { return {factorial_mod(up, 4), wilson_formula_alt(ctx)}; });
  }
  if (id == "EQ90") {
    return timed(id, up, 4, [&]() -> Sides {
      return {ex(p3 * oracle::triple_convolution(p - 1), 4), closed::eq90(ctx).reduce(4)};
    });
  }
  throw UnknownCheck("derived_identities: unknown id " + id);
}

}  // namespace wilson4
