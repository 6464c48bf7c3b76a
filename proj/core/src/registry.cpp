#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "wilson4/errors.hpp"
#include "wilson4/formulas.hpp"
#include "wilson4/oracles.hpp"
#include "wilson4/verifier.hpp"

namespace wilson4 {

namespace {

using Cases = std::function<std::vector<CaseParam>(std::uint64_t)>;

Cases single() {
  return [](std::uint64_t) { return std::vector<CaseParam>{CaseParam{}}; };
}

// name=v for v in [lo(p), hi(p)] stepping by `step`.
Cases span(std::string name, std::function<long(long)> lo, std::function<long(long)> hi, int step = 1) {
  return [=](std::uint64_t up) {
    const long p = static_cast<long>(up);
    std::vector<CaseParam> out;
    for (long v = lo(p); v <= hi(p); v += step) out.push_back({static_cast<int>(v), 0, name + "=" + std::to_string(v)});
    return out;
  };
}

std::function<long(long)> at(long c) {
  return [c](long) { return c; };
}
std::function<long(long)> pm(long off) {
  return [off](long p) { return p + off; };
}

Residue exact(const Rational& q, std::uint64_t p, int e) { return rat_reduce(q, p, e); }
Residue zero_mod(std::uint64_t p, int e) { return Residue(0, prime_power(p, e)); }

Sides from_report(const CongruenceReport& r) { return {r.lhs, r.rhs}; }

// Rows shared by every k of the Newton checks at one prime.
struct NewtonRows {
  std::vector<Integer> a, s;   // exact A_k, S_k; empty above the exact-oracle bound
  std::vector<Residue> star, h;  // A*_k, H_{p-1,k} mod p^4
};

std::shared_ptr<const NewtonRows> newton_rows(std::uint64_t p) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const NewtonRows>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(p); it != cache.end()) return it->second;
  if (cache.size() >= 8) cache.clear();
  auto d = std::make_shared<NewtonRows>();
  const int kmax = static_cast<int>(p - 1);
  if (p <= kExactOracleMaxPrime) {
    d->a = stirling_exact_row(p, kmax);
    d->s = power_sums_exact(p, kmax);
  }
  d->star = mhs_row(p, kmax, 4);
  d->h.push_back(Residue(p - 1, prime_power(p, 4)));
  for (int k = 1; k <= kmax; ++k) d->h.push_back(harmonic(p, k, 4));
  cache[p] = d;
  return d;
}

// K1-K3: b even in [2, p-3], k in {1, 2, 3}.
Cases kummer_cases() {
  return [](std::uint64_t up) {
    const int p = static_cast<int>(up);
    std::vector<CaseParam> out;
    for (int b = 2; b <= p - 3; b += 2) {
      for (int k = 1; k <= 3; ++k) {
        out.push_back({b, k, "b=" + std::to_string(b) + ",k=" + std::to_string(k)});
      }
    }
    return out;
  };
}

CongruenceCheck kummer(std::string id, KummerFamily f, std::uint64_t min_prime, Cases cases, bool bounded,
                       std::vector<std::string> covers) {
  CongruenceCheck c;
  c.id = std::move(id);
  c.covers = std::move(covers);
  c.min_prime = min_prime;
  c.max_prime = bounded ? kExactOracleMaxPrime : 0;
  c.modulus_exponent = modulus_exponent(f);
  c.cases = std::move(cases);
  c.evaluate = [f](const CheckInput& in) {
    KummerParams q;
    switch (f) {
      case KummerFamily::K1:
      case KummerFamily::K2:
      case KummerFamily::K3: q.b = in.param.a; q.k = in.param.b; break;
      case KummerFamily::EM: q.n = in.param.a; break;
      default: q.k = in.param.a; break;
    }
    return from_report(kummer_family_check(*in.ctx, f, q));
  };
  return c;
}

CongruenceCheck derived(std::string id, std::uint64_t min_prime, int e, Cases cases, bool bounded,
                        std::vector<std::string> covers) {
  CongruenceCheck c;
  c.id = id;
  c.covers = std::move(covers);
  c.min_prime = min_prime;
  c.max_prime = bounded ? kExactOracleMaxPrime : 0;
  c.modulus_exponent = e;
  c.cases = std::move(cases);
  c.evaluate = [id](const CheckInput& in) { return from_report(derived_identities(*in.ctx, id, in.param.a)); };
  return c;
}

CongruenceCheck make(std::string id, std::vector<std::string> covers, std::uint64_t min_prime, int e, Cases cases,
                     std::function<Sides(const CheckInput&)> eval, bool bounded = false, bool needs_context = true) {
  CongruenceCheck c;
  c.id = std::move(id);
  c.covers = std::move(covers);
  c.min_prime = min_prime;
  c.max_prime = bounded ? kExactOracleMaxPrime : 0;
  c.modulus_exponent = e;
  c.needs_context = needs_context;
  c.cases = std::move(cases);
  c.evaluate = std::move(eval);
  return c;
}

std::vector<CongruenceCheck> build_registry() {
  std::vector<CongruenceCheck> r;
  const auto even = [](std::string n, std::function<long(long)> lo, std::function<long(long)> hi) {
    return span(std::move(n), std::move(lo), std::move(hi), 2);
  };

  // Bernoulli data.
  r.push_back(make("R2", {"R2"}, 5, 1, even("k", at(2), [](long p) { return 3 * (p - 1); }),
                   [](const CheckInput& in) {
                     const Rational pb = Rational(Integer(in.p)) * bernoulli_exact(in.param.a);
                     const bool pole = in.param.a % (in.p - 1) == 0;
                     return Sides{exact(pb, in.p, 1), Residue(pole ? -1 : 0, Integer(in.p))};
                   },
                   true, false));
  r.push_back(make("R2.table", {"R2"}, 7, PrimeContext::kTableExponent,
                   span("k", at(0), [](long p) { return 3 * (p - 1); }),
                   [](const CheckInput& in) {
                     const Rational pb = Rational(Integer(in.p)) * bernoulli_exact(in.param.a);
                     return Sides{exact(pb, in.p, PrimeContext::kTableExponent), in.ctx->table().entry(in.param.a)};
                   },
                   true));
  r.push_back(make("R3", {"R3"}, 7, 4, span("k", at(2), [](long p) { return 3 * (p - 1); }),
                   [](const CheckInput& in) {
                     return Sides{sum_powers(in.p, in.param.a, 4), closed::sums_of_powers(*in.ctx, in.param.a).reduce(4)};
                   }));

  // Newton's identities.
  r.push_back(make("R1", {"R1"}, 5, 4, span("k", at(1), pm(-1)),
                   [](const CheckInput& in) {
                     const auto rows = newton_rows(in.p);
                     const auto& d = *rows;
                     const int k = in.param.a;
                     Integer rhs = d.s[k];
                     for (int j = 1; j < k; ++j) rhs += (j % 2 ? -1 : 1) * d.a[j] * d.s[k - j];
                     const Integer lhs = (k % 2 ? 1 : -1) * k * d.a[k];
                     const Integer m = prime_power(in.p, 4);
                     if (lhs != rhs) return Sides{Residue(lhs, m), Residue(lhs + 1, m)};  // exact failure
                     return Sides{Residue(lhs, m), Residue(rhs, m)};
                   },
                   true, false));
  r.push_back(make("NEWTON", {"NEWTON", "R1"}, 5, 4, span("k", at(1), pm(-1)),
                   [](const CheckInput& in) {
                     const auto rows = newton_rows(in.p);
                     const auto& d = *rows;
                     const int k = in.param.a;
                     Residue rhs = d.h[k];
                     for (int j = 1; j < k; ++j) {
                       const Residue t = d.star[j] * d.h[k - j];
                       rhs = j % 2 ? rhs - t : rhs + t;
                     }
                     const Residue lhs(Integer((k % 2 ? 1 : -1) * k) * d.star[k].value(), d.star[k].modulus());
                     return Sides{lhs, rhs};
                   },
                   false, false));

  // Harmonic numbers.
  r.push_back(make("R4.wolstenholme1", {"R4"}, 5, 2, single(),
                   [](const CheckInput& in) { return Sides{harmonic(in.p, 1, 2), zero_mod(in.p, 2)}; }, false, false));
  r.push_back(make("R4.wolstenholme2", {"R4"}, 5, 1, single(),
                   [](const CheckInput& in) { return Sides{harmonic(in.p, 2, 1), zero_mod(in.p, 1)}; }, false, false));
  for (auto [id, e, minp, hi] : {std::tuple{"R5", 2, 5, -1}, std::tuple{"R6", 3, 5, -1}, std::tuple{"R7", 4, 7, -5}}) {
    const int ee = e;
    r.push_back(make(id, {std::string(id)}, static_cast<std::uint64_t>(minp), e, span("k", at(1), pm(hi)),
                     [ee](const CheckInput& in) {
                       return Sides{harmonic(in.p, in.param.a, ee), harmonic_formula(*in.ctx, in.param.a, ee)};
                     }));
  }
  r.push_back(make("MT2.Hp3", {"MT2.Hp3"}, 7, 4, single(), [](const CheckInput& in) {
    const int k = static_cast<int>(in.p - 3);
    return Sides{harmonic(in.p, k, 4), harmonic_formula(*in.ctx, k, 4)};
  }));
  r.push_back(make("MT2.Hp1", {"MT2.Hp1"}, 7, 4, single(), [](const CheckInput& in) {
    const int k = static_cast<int>(in.p - 1);
    return Sides{harmonic(in.p, k, 4), harmonic_formula(*in.ctx, k, 4)};
  }));

  // Stirling numbers and multiple harmonic sums.
  r.push_back(make("R8", {"R8"}, 5, 3, span("j", at(1), pm(-1)), [](const CheckInput& in) {
    return Sides{stirling_mod(in.p, in.param.a, 3), stirling_formula(*in.ctx, in.param.a, 3)};
  }));
  r.push_back(make("R9", {"R9"}, 5, 3, span("k", at(1), pm(-1)), [](const CheckInput& in) {
    return Sides{mhs(in.p, in.param.a, 3), mhs_formula(*in.ctx, in.param.a, 3, MhsVariant::ModP3)};
  }));
  r.push_back(make("R15", {"R15"}, 5, 3, single(), [](const CheckInput& in) {
    const Integer m = prime_power(in.p, 3);
    return Sides{mod_inv(factorial_mod(in.p, 3).value(), m), closed::inverse_factorial_p3(*in.ctx).reduce(3)};
  }));
  r.push_back(make("P1.i", {"P1"}, 7, 4, even("2n", at(6), pm(-1)), [](const CheckInput& in) {
    return Sides{stirling_mod(in.p, in.param.a, 4), closed::stirling_short(*in.ctx, in.param.a).reduce(4)};
  }));
  r.push_back(make("P1.ii", {"P1"}, 5, 4, single(), [](const CheckInput& in) {
    return Sides{stirling_mod(in.p, 4, 4), closed::stirling_short(*in.ctx, 4).reduce(4)};
  }));
  r.push_back(make("P1.iii", {"P1"}, 5, 4, single(), [](const CheckInput& in) {
    return Sides{stirling_mod(in.p, 2, 4), closed::stirling_short(*in.ctx, 2).reduce(4)};
  }));
  r.push_back(make("T1", {"T1"}, 7, 4, even("2n", at(6), pm(-1)), [](const CheckInput& in) {
    return Sides{stirling_mod(in.p, in.param.a, 4), closed::stirling_convolution(*in.ctx, in.param.a).reduce(4)};
  }));

  struct T2Part {
    const char* id;
    int part;
    std::uint64_t min_prime;
    Cases cases;
  };
  const T2Part t2_parts[] = {
      {"T2.i", 1, 11, even("2n", at(4), pm(-7))},
      {"T2.ii", 2, 7, even("2n", at(2), at(2))},
      {"T2.iii", 3, 7, even("2n", pm(-5), pm(-5))},
      {"T2.iv", 4, 7, even("2n", pm(-3), pm(-3))},
      {"T2.v", 5, 5, even("2n", pm(-1), pm(-1))},
  };
  for (const auto& t : t2_parts) {
    const int part = t.part;
    r.push_back(make(t.id, {"T2"}, t.min_prime, 4, t.cases, [part](const CheckInput& in) {
      return Sides{mhs(in.p, in.param.a, 4), closed::mhs_via_stirling(*in.ctx, in.param.a, part).reduce(4)};
    }));
  }
  r.push_back(make("P2.i", {"P2"}, 7, 4, even("2n", at(2), pm(-5)), [](const CheckInput& in) {
    return Sides{mhs(in.p, in.param.a, 4), mhs_formula(*in.ctx, in.param.a, 4, MhsVariant::NewtonSum)};
  }));
  r.push_back(make("P2.ii", {"P2"}, 11, 4, single(), [](const CheckInput& in) {
    const int k = static_cast<int>(in.p - 3);
    return Sides{mhs(in.p, k, 4), mhs_formula(*in.ctx, k, 4, MhsVariant::NewtonSum)};
  }));
  r.push_back(make("P2.iii", {"P2"}, 11, 4, single(), [](const CheckInput& in) {
    const int k = static_cast<int>(in.p - 1);
    return Sides{mhs(in.p, k, 4), mhs_formula(*in.ctx, k, 4, MhsVariant::NewtonSum)};
  }));
  r.push_back(make("T3", {"T3"}, 7, 4, even("2n", at(2), pm(-5)), [](const CheckInput& in) {
    return Sides{mhs(in.p, in.param.a, 4), mhs_formula(*in.ctx, in.param.a, 4, MhsVariant::Closed)};
  }));
  r.push_back(make("T3.R9", {"T3", "R9"}, 7, 3, even("2n", at(2), pm(-5)), [](const CheckInput& in) {
    return Sides{closed::mhs_p3(*in.ctx, in.param.a).reduce(3), closed::mhs_closed(*in.ctx, in.param.a).reduce(3)};
  }));
  r.push_back(make("T4", {"T4"}, 11, 4, single(), [](const CheckInput& in) {
    const int k = static_cast<int>(in.p - 3);
    return Sides{mhs(in.p, k, 4), mhs_formula(*in.ctx, k, 4, MhsVariant::TopMinus3)};
  }));
  r.push_back(make("T5", {"T5"}, 11, 4, single(), [](const CheckInput& in) {
    const int k = static_cast<int>(in.p - 1);
    return Sides{mhs(in.p, k, 4), mhs_formula(*in.ctx, k, 4, MhsVariant::Top)};
  }));

  // Convolutions.
  r.push_back(derived("R10.i", 11, 3, even("2n", at(4), pm(-7)), true, {"R10"}));
  r.push_back(derived("R10.ii", 7, 3, single(), true, {"R10"}));
  r.push_back(derived("R10.iii", 7, 3, single(), true, {"R10"}));
  r.push_back(derived("R11.i", 7, 3, single(), true, {"R11"}));
  r.push_back(derived("R11.ii", 7, 1, single(), true, {"R11"}));
  r.push_back(derived("R11.iii", 11, 1, single(), true, {"R11"}));
  r.push_back(derived("MT1.i", 7, 1, single(), true, {"MT1.i"}));
  r.push_back(derived("MT1.ii", 11, 1, single(), true, {"MT1.ii"}));
  r.push_back(derived("T6", 13, 4, single(), true, {"T6"}));
  r.push_back(derived("EQ90", 13, 4, single(), true, {"EQ90"}));

  // Kummer-type congruences, binomial-weighted Bernoulli sums, central binomials.
  r.push_back(kummer("K1", KummerFamily::K1, 7, kummer_cases(), true, {"R12"}));
  r.push_back(kummer("K2", KummerFamily::K2, 7, kummer_cases(), true, {"R12"}));
  r.push_back(kummer("K3", KummerFamily::K3, 7, kummer_cases(), true, {"R12"}));
  r.push_back(kummer("EM", KummerFamily::EM, 7, even("n", at(4), pm(-3)), true, {"R13"}));
  r.push_back(kummer("S2", KummerFamily::S2, 5, span("k", at(1), at(4)), true, {"R14"}));
  r.push_back(kummer("S3", KummerFamily::S3, 5, span("k", at(1), at(4)), true, {"R14"}));
  r.push_back(kummer("S4", KummerFamily::S4, 7, span("k", at(1), at(4)), true, {"R14"}));
  r.push_back(kummer("L1", KummerFamily::L1, 5, span("k", at(0), pm(-1)), true, {"L1"}));
  r.push_back(kummer("EQ70", KummerFamily::EQ70, 5, single(), false, {"EQ70"}));
  r.push_back(kummer("EQ73", KummerFamily::EQ73, 5, single(), false, {"EQ73"}));
  r.push_back(kummer("EQ73.wolstenholme", KummerFamily::WolstenholmeBinomial, 5, single(), false, {"EQ73"}));
  r.push_back(derived("EQ60", 5, 1, even("i", at(2), pm(-3)), true, {"EQ60"}));

  // Digits of +-1/2.
  r.push_back(make("L2", {"L2"}, 3, 4, span("sign", at(0), at(1)),
                   [](const CheckInput& in) {
                     const Integer p(in.p);
                     const Integer half = (p - 1) / 2;
                     Integer rhs = in.param.a == 0 ? (p + 1) / 2 : half;
                     for (int i = 1; i <= 3; ++i) rhs += half * prime_power(in.p, i);
                     const Rational q = in.param.a == 0 ? Rational(1, 2) : Rational(-1, 2);
                     return Sides{exact(q, in.p, 4), Residue(rhs, prime_power(in.p, 4))};
                   },
                   false, false));
  r.push_back(make("C1", {"C1"}, 3, 2, single(),
                   [](const CheckInput& in) {
                     const Integer m = prime_power(in.p, 2);
                     return Sides{Residue(2 * residue_at(Rational(1, 2), in.p, 0), m), Residue(in.p + 1, m)};
                   },
                   false, false));
  r.push_back(make("C2", {"C2"}, 3, 2, single(),
                   [](const CheckInput& in) {
                     const Integer m = prime_power(in.p, 2);
                     return Sides{Residue(2 * residue_at(Rational(-1, 2), in.p, 1), m), Residue(in.p - 1, m)};
                   },
                   false, false));
  r.push_back(make("AG", {"MT1.i"}, 5, 2, single(),
                   [](const CheckInput& in) {
                     const Rational pb = Rational(Integer(in.p)) * bernoulli_exact(static_cast<int>(in.p - 1));
                     const Integer m = prime_power(in.p, 2);
                     return Sides{exact(pb, in.p, 2), Residue(-1 + Integer(in.p) * in.ctx->agoh_giuga(), m)};
                   },
                   true));
  r.push_back(make("WQ", {"MT1.i"}, 5, 2, single(), [](const CheckInput& in) {
    const Integer m = prime_power(in.p, 2);
    const Integer w = (factorial_mod(in.p, 3).value() + 1) / in.p;
    const auto [w0, w1] = wilson_quotient_digits_bernoulli(in.ctx->table());
    return Sides{Residue(w, m), Residue(w0 + Integer(in.p) * w1, m)};
  }));

  // Wilson's theorem mod p^2, p^3, p^4.
  r.push_back(make("GLAISHER", {"MT3"}, 5, 2, single(), [](const CheckInput& in) {
    return Sides{factorial_mod(in.p, 2), wilson_formula(*in.ctx, 2)};
  }));
  r.push_back(make("SUN", {"MT3"}, 5, 3, single(), [](const CheckInput& in) {
    return Sides{factorial_mod(in.p, 3), wilson_formula(*in.ctx, 3)};
  }));
  r.push_back(make("LADDER", {"MT3"}, 7, 3, span("from", at(3), at(4)), [](const CheckInput& in) {
    const int from = in.param.a;
    const Integer m = prime_power(in.p, from - 1);
    return Sides{wilson_formula(*in.ctx, from).reduce_to(m), wilson_formula(*in.ctx, from - 1)};
  }));
  r.push_back(make("MT3", {"MT3"}, 13, 4, single(), [](const CheckInput& in) {
    return Sides{factorial_mod(in.p, 4), wilson_formula(*in.ctx, 4)};
  }));
  r.push_back(derived("EQ89", 13, 4, single(), false, {"EQ89"}));

  r.push_back(make("MIKI", {"MIKI"}, 11, 4, even("n", at(6), [](long p) { return std::min(40L, p - 3); }),
                   [](const CheckInput& in) {
                     const IdentityReport m = miki_check(in.param.a);
                     return Sides{exact(m.lhs, in.p, 4), exact(m.rhs, in.p, 4)};
                   },
                   false, false));
  return r;
}

}  // namespace

const std::vector<CongruenceCheck>& registry() {
  static const std::vector<CongruenceCheck> r = build_registry();
  return r;
}

const CongruenceCheck& find_check(const std::string& id) {
  for (const auto& c : registry()) {
    if (c.id == id) return c;
  }
  throw UnknownCheck("unknown check id: " + id);
}

}  // namespace wilson4
