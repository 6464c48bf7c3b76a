#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "table_cache.hpp"
#include "wilson4/bernoulli.hpp"
#include "wilson4/errors.hpp"
#include "wilson4/formulas.hpp"
#include "wilson4/padic.hpp"
#include "wilson4/sequences.hpp"
#include "wilson4/verifier.hpp"

#ifndef WILSON4_VERSION
#define WILSON4_VERSION "dev"
#endif

namespace wilson4::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_u64(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size() || s.front() == '-') throw UsageError("not a number: '" + s + "'");
  return v;
}

std::uint64_t checked_prime(std::uint64_t p) {
  if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
  return p;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fmt_ms(double ms) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << ms;
  return s.str();
}

// --- verify ---------------------------------------------------------------

struct VerifyOpts {
  std::string primes = "7..101";
  std::string checks = "all";
  std::string format = "table";
  int jobs = 1;
  std::string cache_dir;
};

std::vector<std::string> split_ids(const std::string& s) {
  std::vector<std::string> ids;
  if (s == "all" || s == "ALL") return ids;
  std::stringstream in(s);
  for (std::string id; std::getline(in, id, ',');) {
    if (!id.empty()) ids.push_back(id);
  }
  if (ids.empty()) throw UsageError("no checks given");
  return ids;
}

void print_table(std::ostream& out, const SuiteSummary& s) {
  std::size_t w = 5;
  for (const auto& r : s.reports) w = std::max(w, r.id.size());
  out << std::left << std::setw(static_cast<int>(w) + 2) << "check" << std::setw(8) << "p" << std::setw(3) << "e"
      << std::setw(7) << "status" << std::right << std::setw(12) << "ms" << "  lhs | rhs\n";
  for (const auto& r : s.reports) {
    out << std::left << std::setw(static_cast<int>(w) + 2) << r.id << std::setw(8) << r.p << std::setw(3) << r.e
        << std::setw(7) << to_string(r.status) << std::right << std::setw(12) << fmt_ms(r.ms) << "  "
        << r.lhs.value().get_str() << " | " << r.rhs.value().get_str();
    if (!r.detail.empty() && r.status != CheckStatus::Pass) out << "  (" << r.detail << ")";
    out << '\n';
  }
}

nlohmann::json record(const CongruenceReport& r, const std::string& stamp) {
  return {{"id", r.id},
          {"p", r.p},
          {"e", r.e},
          {"lhs", r.lhs.value().get_str()},
          {"rhs", r.rhs.value().get_str()},
          {"pass", r.pass},
          {"ms", r.ms},
          {"status", to_string(r.status)},
          {"version", WILSON4_VERSION},
          {"timestamp", stamp}};
}

void print_summary(std::ostream& out, const SuiteSummary& s) {
  out << "summary: " << s.passed << " passed, " << s.failed << " failed, " << s.skipped.size() << " skipped\n";
  for (const auto& r : s.failures) {
    out << "  " << to_string(r.status) << ' ' << r.id << " p=" << r.p << " e=" << r.e << ": "
        << r.lhs.value().get_str() << " vs " << r.rhs.value().get_str();
    if (!r.detail.empty()) out << " (" << r.detail << ')';
    out << '\n';
  }
}

int cmd_verify(const VerifyOpts& o, std::ostream& out, std::ostream& err) {
  const auto primes = parse_primes(o.primes);
  const auto ids = split_ids(o.checks);
  for (const auto& id : ids) find_check(id);  // UnknownCheck -> usage
  if (o.jobs < 1) throw UsageError("--jobs must be >= 1");

  Verifier v(file_table_store(resolve_cache_dir(o.cache_dir)));
  const SuiteSummary s = v.run_suite(primes, ids, o.jobs);

  if (o.format == "table") {
    print_table(out, s);
    print_summary(out, s);
  } else if (o.format == "jsonl") {
    const std::string stamp = utc_timestamp();
    for (const auto& r : s.reports) out << record(r, stamp).dump() << '\n';
    nlohmann::json sum = {{"summary", {{"passed", s.passed}, {"failed", s.failed}, {"skipped", s.skipped.size()}}}};
    out << sum.dump() << '\n';
  } else {
    out << "id,p,e,lhs,rhs,pass,ms\n";
    for (const auto& r : s.reports) {
      out << '"' << r.id << "\"," << r.p << ',' << r.e << ',' << r.lhs.value().get_str() << ','
          << r.rhs.value().get_str() << ',' << (r.pass ? "true" : "false") << ',' << fmt_ms(r.ms) << '\n';
    }
    print_summary(err, s);
  }
  return s.ok() ? kOk : kFailure;
}

// --- compute --------------------------------------------------------------

struct ComputeOpts {
  std::uint64_t p = 0;
  std::string quantity;
  int k = -1;
  int power = 4;
  std::string route = "direct";
  std::string cache_dir;
};

int need_k(const ComputeOpts& o) {
  if (o.k < 1 || static_cast<std::uint64_t>(o.k) > o.p - 1) {
    throw UsageError("--k must lie in [1, p-1] for " + o.quantity);
  }
  return o.k;
}

int cmd_compute(const ComputeOpts& o, std::ostream& out) {
  const std::uint64_t p = checked_prime(o.p);
  if (p == 2) throw UsageError("p must be odd");
  if (o.power < 1) throw UsageError("--power must be >= 1");
  const bool formula = o.route == "formula";
  auto context = [&] { return PrimeContext(p, context_nmax(p)); };
  const std::string& q = o.quantity;

  if (q == "factorial-mod") {
    out << (formula ? wilson_formula(context(), o.power) : factorial_mod(p, o.power)).value().get_str() << '\n';
  } else if (q == "stirling") {
    const int k = need_k(o);
    out << (formula ? stirling_formula(context(), k, o.power) : stirling_mod(p, k, o.power)).value().get_str() << '\n';
  } else if (q == "mhs") {
    const int k = need_k(o);
    out << (formula ? mhs_formula(context(), k, o.power) : mhs(p, k, o.power)).value().get_str() << '\n';
  } else if (q == "harmonic") {
    const int k = need_k(o);
    out << (formula ? harmonic_formula(context(), k, o.power) : harmonic(p, k, o.power)).value().get_str() << '\n';
  } else if (q == "wilson-quotient") {
    const auto [w0, w1] = wilson_quotient_residues(p);
    out << w0 << ' ' << w1 << '\n';
  } else if (q == "bernoulli-table") {
    const int e = o.power;
    const int nmax = o.k >= 0 ? o.k : context_nmax(p);
    if (e > kMaxTableExponent) throw UsageError("--power above " + std::to_string(kMaxTableExponent));
    const BernoulliTable t = p >= 7 ? build_table(p, nmax, e) : exact_table(p, nmax, e);
    const auto dir = resolve_cache_dir(o.cache_dir);
    const auto file = table_path(dir.empty() ? std::filesystem::path(".") : dir, p, e, nmax);
    write_table(file, t);
    out << file.string() << '\n';
  } else {
    throw UsageError("unknown quantity '" + q + "'");
  }
  return kOk;
}

// --- bench ----------------------------------------------------------------

struct BenchOpts {
  std::uint64_t p = 0;
  int power = 4;
  int repeat = 1;
};

int cmd_bench(const BenchOpts& o, std::ostream& out) {
  const std::uint64_t p = checked_prime(o.p);
  if (p < 5) throw UsageError("bench needs p >= 5");
  if (o.power < 2 || o.power > 4) throw UsageError("--power must be 2, 3 or 4");
  if (o.repeat < 1) throw UsageError("--repeat must be >= 1");

  using clock = std::chrono::steady_clock;
  auto ms_since = [](clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  };
  double direct_ms = 1e300, table_ms = 1e300, formula_ms = 1e300;
  Residue direct(0, 1), via_formula(0, 1);
  for (int i = 0; i < o.repeat; ++i) {
    auto t0 = clock::now();
    direct = factorial_mod(p, o.power);
    direct_ms = std::min(direct_ms, ms_since(t0));

    t0 = clock::now();
    PrimeContext ctx(p, context_nmax(p));
    table_ms = std::min(table_ms, ms_since(t0));

    t0 = clock::now();
    via_formula = wilson_formula(ctx, o.power);
    formula_ms = std::min(formula_ms, ms_since(t0));
  }
  out << "p=" << p << " e=" << o.power << " repeat=" << o.repeat << '\n';
  out << std::left << std::setw(16) << "direct" << std::right << std::setw(14) << fmt_ms(direct_ms) << " ms\n";
  out << std::left << std::setw(16) << "bernoulli-table" << std::right << std::setw(14) << fmt_ms(table_ms) << " ms\n";
  out << std::left << std::setw(16) << "wilson-formula" << std::right << std::setw(14) << fmt_ms(formula_ms)
      << " ms\n";
  const bool same = direct == via_formula;
  out << "(p-1)! mod p^" << o.power << " = " << direct.value().get_str() << ", formula "
      << (same ? "agrees" : "DISAGREES: " + via_formula.value().get_str()) << '\n';
  return same ? kOk : kFailure;
}

}  // namespace

std::vector<std::uint64_t> parse_primes(const std::string& spec) {
  std::vector<std::uint64_t> out;
  std::stringstream in(spec);
  for (std::string tok; std::getline(in, tok, ',');) {
    if (tok.empty()) continue;
    if (const auto dots = tok.find(".."); dots != std::string::npos) {
      const std::uint64_t lo = parse_u64(tok.substr(0, dots)), hi = parse_u64(tok.substr(dots + 2));
      if (lo > hi) throw UsageError("empty range " + tok);
      for (std::uint64_t n = lo; n <= hi; ++n) {
        if (is_prime(n)) out.push_back(n);
      }
    } else {
      out.push_back(checked_prime(parse_u64(tok)));
    }
  }
  if (out.empty()) throw UsageError("no primes in '" + spec + "'");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verify Wilson-type congruences modulo p^4", "wilson4"};
  app.set_version_flag("--version", WILSON4_VERSION);
  app.require_subcommand(1);

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "Check formula side against oracle side");
  verify->add_option("--primes", vo.primes, "List or range, e.g. 7..101 or 19,47")->capture_default_str();
  verify->add_option("--checks", vo.checks, "Comma-separated ids or 'all'")->capture_default_str();
  verify->add_option("--format", vo.format)->check(CLI::IsMember({"table", "jsonl", "csv"}))->capture_default_str();
  verify->add_option("--jobs", vo.jobs)->capture_default_str();
  verify->add_option("--cache-dir", vo.cache_dir, "Bernoulli table cache (default $WILSON4_CACHE_DIR)");

  ComputeOpts co;
  auto* compute = app.add_subcommand("compute", "Print one residue");
  compute->add_option("--prime", co.p)->required();
  compute->add_option("--quantity", co.quantity)
      ->required()
      ->check(CLI::IsMember({"factorial-mod", "stirling", "mhs", "harmonic", "bernoulli-table", "wilson-quotient"}));
  compute->add_option("--k", co.k, "Index (bernoulli-table: nmax)");
  compute->add_option("--power", co.power, "Exponent e of the modulus p^e")->capture_default_str();
  compute->add_option("--route", co.route)->check(CLI::IsMember({"direct", "formula"}))->capture_default_str();
  compute->add_option("--cache-dir", co.cache_dir);

  BenchOpts bo;
  auto* bench = app.add_subcommand("bench", "Time the direct product, table build and formula");
  bench->add_option("--prime", bo.p)->required();
  bench->add_option("--power", bo.power)->capture_default_str();
  bench->add_option("--repeat", bo.repeat)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return cmd_verify(vo, out, err);
    if (*compute) return cmd_compute(co, out);
    return cmd_bench(bo, out);
  } catch (const FormulaMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    // Bad prime, unknown id, unsupported exponent and friends.
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace wilson4::cli
