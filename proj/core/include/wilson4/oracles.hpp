#pragma once

// Exact-rational evaluations used as the independent side of checks.

#include <cstdint>

#include "wilson4/exact_arith.hpp"

namespace wilson4::oracle {

/// B_n/n, with 0 for n < 2 and odd n.
Rational divided(int n);
/// Exact CB(n), BBB(n) (memoized) and TCB(a, b).
Rational full_convolution(int n);
Rational triple_convolution(int n);
Rational truncated_convolution(int a, int b);
/// 1 + 1/2 + ... + 1/n.
Rational harmonic_number(int n);

}  // namespace wilson4::oracle
