#include "wilson4/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "wilson4/errors.hpp"

namespace wilson4 {

std::shared_ptr<const PrimeContext> ContextCache::get(std::uint64_t p, int nmax) {
  std::shared_ptr<Slot> slot;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto& s = slots_[{p, nmax}];
    if (!s) s = std::make_shared<Slot>();
    slot = s;
  }
  std::call_once(slot->once, [&] {
    constexpr int e = PrimeContext::kTableExponent;
    std::optional<BernoulliTable> table;
    if (store_.load) table = store_.load(p, e, nmax);
    if (table) {
      slot->ctx = std::make_shared<const PrimeContext>(std::move(*table));
    } else {
      auto ctx = std::make_shared<const PrimeContext>(p, nmax);
      if (store_.save) store_.save(ctx->table());
      slot->ctx = std::move(ctx);
    }
  });
  return slot->ctx;
}

std::map<std::uint64_t, Integer> golden_table() {
  return {
      {19, Integer("93175")},
      {47, Integer("2266715")},
      {61, Integer("6504002")},
      {173, Integer("438178897")},
      {521, Integer("589386980")},
      {877, Integer("557572214137")},
      {1009, Integer("709347287962")},
      {10037, Integer("3241073122386671")},
      {120011, Integer("143693568124824551692")},
  };
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string case_id(const CongruenceCheck& c, const CaseParam& q) {
  return q.label.empty() ? c.id : c.id + "[" + q.label + "]";
}

CongruenceReport evaluate_case(const CongruenceCheck& c, std::uint64_t p, const PrimeContext* ctx,
                               const CaseParam& q) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    auto [lhs, rhs] = c.evaluate(CheckInput{p, ctx, q});
    const int e = valuation(lhs.modulus(), p);
    return make_report(case_id(c, q), p, e, std::move(lhs), std::move(rhs), elapsed_ms(t0));
  } catch (const wilson4::Error& err) {
    CongruenceReport r;
    r.id = case_id(c, q);
    r.p = p;
    r.e = c.modulus_exponent;
    r.status = CheckStatus::Error;
    r.detail = err.what();
    r.ms = elapsed_ms(t0);
    return r;
  }
}

CongruenceReport skipped_report(const CongruenceCheck& c, std::uint64_t p, const std::string& why) {
  CongruenceReport r;
  r.id = c.id;
  r.p = p;
  r.e = c.modulus_exponent;
  r.status = CheckStatus::Skipped;
  r.detail = why;
  return r;
}

}  // namespace

std::vector<CongruenceReport> Verifier::run_cases(const std::string& id, std::uint64_t p) {
  const CongruenceCheck& c = find_check(id);
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (p < c.min_prime) {
    throw PrimeTooSmall(id + " needs p >= " + std::to_string(c.min_prime) + ", got " + std::to_string(p));
  }
  if (c.max_prime != 0 && p > c.max_prime) {
    return {skipped_report(c, p, "oracle limited to p <= " + std::to_string(c.max_prime))};
  }
  std::shared_ptr<const PrimeContext> ctx;
  if (c.needs_context) ctx = cache_.get(p, context_nmax(p));
  std::vector<CongruenceReport> out;
  for (const CaseParam& q : c.cases(p)) out.push_back(evaluate_case(c, p, ctx.get(), q));
  return out;
}

CongruenceReport Verifier::run_check(const std::string& id, std::uint64_t p) {
  auto reports = run_cases(id, p);
  if (reports.empty()) return skipped_report(find_check(id), p, "no cases at this prime");
  for (auto& r : reports) {
    if (r.status == CheckStatus::Fail || r.status == CheckStatus::Error) return r;
  }
  return reports.back();
}

SuiteSummary Verifier::run_suite(const std::vector<std::uint64_t>& primes, const std::vector<std::string>& ids,
                                 int jobs) {
  std::vector<const CongruenceCheck*> checks;
  if (ids.empty()) {
    for (const auto& c : registry()) checks.push_back(&c);
  } else {
    for (const auto& id : ids) checks.push_back(&find_check(id));
  }
  for (std::uint64_t p : primes) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  }

  struct Task {
    const CongruenceCheck* check;
    std::uint64_t p;
    std::vector<CongruenceReport> reports;
    bool skipped = false;
  };
  std::vector<Task> tasks;
  for (const auto* c : checks) {
    for (std::uint64_t p : primes) tasks.push_back({c, p, {}, false});
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      Task& t = tasks[i];
      if (t.p < t.check->min_prime || (t.check->max_prime != 0 && t.p > t.check->max_prime)) {
        t.skipped = true;
        continue;
      }
      try {
        t.reports = run_cases(t.check->id, t.p);
        if (t.reports.empty()) t.skipped = true;
      } catch (const wilson4::Error& err) {
        CongruenceReport r;
        r.id = t.check->id;
        r.p = t.p;
        r.e = t.check->modulus_exponent;
        r.status = CheckStatus::Error;
        r.detail = err.what();
        t.reports = {r};
      }
    }
  };
  const int n = std::max(1, jobs);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SuiteSummary s;
  for (auto& t : tasks) {
    if (t.skipped) {
      s.skipped.emplace_back(t.check->id, t.p);
      continue;
    }
    for (auto& r : t.reports) {
      if (r.status == CheckStatus::Pass) {
        ++s.passed;
      } else {
        ++s.failed;
        s.failures.push_back(r);
      }
      s.reports.push_back(std::move(r));
    }
  }
  return s;
}

namespace {

Verifier& default_verifier() {
  static Verifier v;
  return v;
}

}  // namespace

CongruenceReport run_check(const std::string& id, std::uint64_t p) { return default_verifier().run_check(id, p); }

SuiteSummary run_suite(const std::vector<std::uint64_t>& primes, const std::vector<std::string>& ids, int jobs) {
  return default_verifier().run_suite(primes, ids, jobs);
}

}  // namespace wilson4
