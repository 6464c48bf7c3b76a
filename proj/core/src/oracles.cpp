#include "wilson4/oracles.hpp"

#include <map>
#include <mutex>

#include "wilson4/bernoulli.hpp"

namespace wilson4::oracle {

namespace {

std::mutex memo_mu;
std::map<int, Rational> cb_memo, bbb_memo;

}  // namespace

Rational divided(int n) {
  if (n < 2 || n % 2 == 1) return 0;
  return divided_bernoulli_exact(n);
}

Rational full_convolution(int n) {
  {
    std::lock_guard<std::mutex> lock(memo_mu);
    if (auto it = cb_memo.find(n); it != cb_memo.end()) return it->second;
  }
  Rational s = 0;
  for (int i = 2; i <= n - 2; i += 2) s += divided(i) * divided(n - i);
  std::lock_guard<std::mutex> lock(memo_mu);
  cb_memo.emplace(n, s);
  return s;
}

Rational triple_convolution(int n) {
  {
    std::lock_guard<std::mutex> lock(memo_mu);
    if (auto it = bbb_memo.find(n); it != bbb_memo.end()) return it->second;
  }
  Rational s = 0;
  for (int i = 2; i <= n - 4; i += 2) s += divided(i) * full_convolution(n - i);
  std::lock_guard<std::mutex> lock(memo_mu);
  bbb_memo.emplace(n, s);
  return s;
}

Rational truncated_convolution(int a, int b) {
  Rational s = 0;
  for (int i = a; i <= b; ++i) s += divided(i) * divided(a + b - i);
  return s;
}

Rational harmonic_number(int n) {
  Rational s = 0;
  for (int j = 1; j <= n; ++j) s += Rational(1, j);
  return s;
}

}  // namespace wilson4::oracle
