// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any
// fails. Optional arguments pick criteria by number, e.g. `acceptance 2`.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "wilson4/bernoulli.hpp"
#include "wilson4/formulas.hpp"
#include "wilson4/padic.hpp"
#include "wilson4/verifier.hpp"

using namespace wilson4;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) note = what;
    pass = pass && ok;
  }
};

std::vector<std::uint64_t> primes(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string secs(double s) {
  std::ostringstream o;
  o.precision(3);
  o << std::fixed << s << "s";
  return o.str();
}

Outcome golden_values() {
  Outcome o;
  const auto golden = golden_table();
  const auto t0 = Clock::now();
  for (std::uint64_t p : {19, 47, 61, 173, 521, 877, 1009}) {
    const PrimeContext ctx(p, context_nmax(p));
    const Residue f = wilson_formula(ctx, 4), d = factorial_mod(p, 4);
    o.require(f == d && f.value() == golden.at(p), "p=" + std::to_string(p) + " formula " + f.to_string() +
                                                        " direct " + d.to_string() + " table " + golden.at(p).get_str());
  }
  const double s = seconds_since(t0);
  o.require(s < 10.0, "took " + secs(s));
  if (o.pass) o.note = "7 primes, formula = direct = table, " + secs(s);
  return o;
}

Outcome large_prime() {
  Outcome o;
  const std::uint64_t p = 10037;
  const auto t0 = Clock::now();
  const PrimeContext ctx(p, context_nmax(p));
  const Residue f = wilson_formula(ctx, 4), d = factorial_mod(p, 4);
  const double s = seconds_since(t0);
  o.require(f == d && f.value() == golden_table().at(p), "formula " + f.to_string() + " direct " + d.to_string());
  o.require(s < 600.0, "took " + secs(s));
  if (o.pass) o.note = "p=10037 -> " + f.to_string() + " in " + secs(s) + " (p=120011 not run)";
  return o;
}

Outcome triple_convolution_spots() {
  Outcome o;
  for (auto [p, expect] : {std::pair<std::uint64_t, int>{11, 3}, {13, 2}}) {
    const PrimeContext ctx(p, context_nmax(p));
    const auto r = derived_identities(ctx, "MT1.i");
    o.require(r.pass && r.lhs.value() == expect && r.rhs.value() == expect,
              "p=" + std::to_string(p) + " direct " + r.lhs.to_string() + " formula " + r.rhs.to_string());
  }
  if (o.pass) o.note = "BBB(p-3) mod p: 3 at p=11, 2 at p=13";
  return o;
}

Outcome mhs_spots() {
  Outcome o;
  const PrimeContext ctx(11, context_nmax(11));
  for (auto [k, expect] : {std::pair<int, int>{6, 2068}, {8, 5456}}) {
    const Residue f = mhs_formula(ctx, k, 4, MhsVariant::ViaStirling), d = mhs(11, k, 4);
    o.require(f == d && f.value() == expect, "k=" + std::to_string(k) + " formula " + f.to_string() + " direct " + d.to_string());
  }
  if (o.pass) o.note = "A*_6 = 2068, A*_8 = 5456 mod 11^4";
  return o;
}

Outcome oracle_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto s = run_suite(primes(7, 101));
  const double secs_taken = seconds_since(t0);
  for (const auto& r : s.failures) {
    o.require(false, r.id + " p=" + std::to_string(r.p) + " " + to_string(r.status) + " " + r.lhs.to_string() +
                         " vs " + r.rhs.to_string() + " " + r.detail);
  }
  o.require(s.passed > 0, "nothing ran");
  o.require(secs_taken < 300.0, "took " + secs(secs_taken));
  if (o.pass) {
    o.note = std::to_string(s.passed) + " cases passed, " + std::to_string(s.skipped.size()) + " (check, p) skipped, " +
             secs(secs_taken);
  }
  return o;
}

Outcome identities() {
  Outcome o;
  for (int n = 6; n <= 40; n += 2) o.require(miki_check(n).pass, "Miki n=" + std::to_string(n));
  for (int n = 2; n <= 40; n += 2) {
    o.require(von_staudt_denominator(n) == bernoulli_exact(n).get_den(), "denominator n=" + std::to_string(n));
  }
  if (o.pass) o.note = "Miki n=6..40, Von Staudt n=2..40";
  return o;
}

Outcome ladder() {
  Outcome o;
  std::size_t t3 = 0;
  for (std::uint64_t p : primes(7, 101)) {
    const PrimeContext ctx(p, context_nmax(p));
    const Residue w4 = wilson_formula(ctx, 4), w3 = wilson_formula(ctx, 3), w2 = wilson_formula(ctx, 2);
    o.require(w4.reduce_to(prime_power(p, 3)) == w3, "e=4 vs e=3 at p=" + std::to_string(p));
    o.require(w3.reduce_to(prime_power(p, 2)) == w2, "e=3 vs e=2 at p=" + std::to_string(p));
    for (int k = 2; k <= static_cast<int>(p) - 5; k += 2, ++t3) {
      const Residue a = mhs_formula(ctx, k, 4, MhsVariant::Closed).reduce_to(prime_power(p, 3));
      o.require(a == mhs_formula(ctx, k, 3, MhsVariant::ModP3),
                "mod p^3 reduction at p=" + std::to_string(p) + " 2n=" + std::to_string(k));
    }
  }
  if (o.pass) o.note = "Wilson e=4 -> 3 -> 2 on [7, 101]; " + std::to_string(t3) + " (p, 2n) pairs reduce mod p^3";
  return o;
}

Outcome digit_properties() {
  Outcome o;
  std::size_t n = 0;
  for (std::uint64_t p : primes(3, 101)) {
    const int h = static_cast<int>((p - 1) / 2);
    const auto plus = digits(Rational(1, 2), p, 5), minus = digits(Rational(-1, 2), p, 5);
    o.require(plus.at(-1) == 0 && plus.at(0) == h + 1 && minus.at(-1) == 0, "half expansions at p=" + std::to_string(p));
    for (int i = 0; i <= 3; ++i) {
      if (i > 0) o.require(plus.at(i) == h, "1/2 digit at p=" + std::to_string(p));
      o.require(minus.at(i) == h, "-1/2 digit at p=" + std::to_string(p));
    }
    o.require(2 * residue_at(Rational(1, 2), p, 0) == static_cast<int>(p + 1), "2(1/2)_0 = p+1 at " + std::to_string(p));
    o.require(2 * residue_at(Rational(-1, 2), p, 1) == static_cast<int>(p - 1), "2(-1/2)_1 = p-1 at " + std::to_string(p));

    // Round trip over a fixed spread of rationals with valuation >= -1.
    for (long num = -40; num <= 40; num += 7) {
      for (long den : {1L, 2L, 3L, 7L, 12L, 30L, 252L, static_cast<long>(p), static_cast<long>(2 * p)}) {
        const Rational q = make_rational(num == 0 ? 1 : num, den);
        if (valuation(q, p) < -1) continue;
        for (int e = 1; e <= 5; ++e, ++n) {
          const Rational diff = q - digits(q, p, e).reconstruct();
          o.require(diff == 0 || valuation(diff, p) >= e - 1, "round trip at p=" + std::to_string(p));
        }
      }
    }
  }
  if (o.pass) o.note = std::to_string(n) + " round trips and the +-1/2 expansions on [3, 101]";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"golden Wilson values p <= 1009", golden_values},
      {"golden Wilson value p = 10037", large_prime},
      {"triple convolution spot values", triple_convolution_spots},
      {"multiple harmonic sum spot values", mhs_spots},
      {"oracle-equivalence suite 7..101", oracle_suite},
      {"prime-free identities", identities},
      {"consistency ladder", ladder},
      {"digit round trip and +-1/2 expansions", digit_properties},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::stoi(argv[i]));

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!pick.empty() && !pick.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " -- " << o.note
              << std::endl;
  }
  return all ? 0 : 1;
}
