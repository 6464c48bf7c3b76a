#pragma once

#include <array>
#include <string>

#include "wilson4/report.hpp"
#include "wilson4/sequences.hpp"

namespace wilson4 {

enum class ConvolutionTag { FullCB, TripleBBB, TruncatedTCB };

/// FullCB(n), TripleBBB(n), or TruncatedTCB with order n = a + b and start a,
/// i.e. sum_{i=a}^{n-a} B_i/i * B_{n-i}/(n-i).
struct ConvolutionKind {
  ConvolutionTag tag;
  int order;
  int start = 0;
};

/// p-adic value over the context's table (may have negative valuation).
PAdic convolution_value(const ConvolutionKind& kind, const PrimeContext& ctx);
/// Same reduced mod p^e; ValuationTooLow when the value is not p-integral.
Residue convolution(const ConvolutionKind& kind, const PrimeContext& ctx, int e);
/// Exact rational value; no prime involved.
Rational convolution_exact(const ConvolutionKind& kind);

/// H_{p-1,k} mod p^e: e=2 all k, e=3 all k, e=4 for k <= p-5 and k in {p-3, p-1}.
Residue harmonic_formula(const PrimeContext& ctx, int k, int e);

/// A_k mod p^e: e=3 any k in [1, p-1]; e=4 even k.
Residue stirling_formula(const PrimeContext& ctx, int k, int e);

enum class MhsVariant { Auto, ModP3, ViaStirling, NewtonSum, Closed, TopMinus3, Top };

/// A*_k mod p^e. Auto picks the mod p^3 form at e <= 3 and, at e = 4, the
/// general even-index form for 2 <= k <= p-5 and the endpoint forms for
/// k = p-3 and k = p-1.
Residue mhs_formula(const PrimeContext& ctx, int k, int e, MhsVariant variant = MhsVariant::Auto);

enum class KummerFamily { K1, K2, K3, S2, S3, S4, EM, L1, EQ70, EQ73, WolstenholmeBinomial };

struct KummerParams {
  int b = 0;  // K1-K3
  int k = 0;  // K1-K3, S2-S4, L1
  int n = 0;  // EM
};

const char* to_string(KummerFamily f);
int modulus_exponent(KummerFamily f);

/// Both sides of a Kummer-type, Sun, Ernvall-Metsankyla, binomial-weighted Bernoulli or binomial
/// congruence: left from exact rationals / direct binomials, right from the table.
CongruenceReport kummer_family_check(const PrimeContext& ctx, KummerFamily family, const KummerParams& params);

/// Miki: CB(n) = sum_{i=2}^{n-2} C(n,i) B_i/i B_{n-i}/(n-i) + 2 H_n B_n/n, exactly.
IdentityReport miki_check(int n);

struct AppendixTerms {
  std::array<int, 7> o{};      // O_0..O_6
  std::array<int, 7> o_hat{};  // hatted terms; o_hat[2] = 0 (omitted)
  int o_sum = 0;               // O mod p
  int o_hat_sum = 0;           // O-hat mod p
  Residue o_prime{0, 1};       // O' mod p^4
};

/// Needs p >= 7 and a table through 3(p-1).
AppendixTerms appendix_terms(const PrimeContext& ctx);

/// (p-1)! mod p^e from Bernoulli data: e=2 Glaisher, e=3 Sun, e=4 the p^4 form
/// (valid for p >= 13).
Residue wilson_formula(const PrimeContext& ctx, int e);
/// The alternative p^4 form built from O and O' (p >= 13).
Residue wilson_formula_alt(const PrimeContext& ctx);

/// Remaining endpoint identities by id ("MT1.i", "MT1.ii", "R10.i", "R10.ii",
/// "R10.iii", "R11.i", "R11.ii", "R11.iii", "T6", "EQ60", "EQ89", "EQ90").
/// `param` is 2n for R10.i and i for EQ60.
CongruenceReport derived_identities(const PrimeContext& ctx, const std::string& id, int param = 0);

/// Closed forms as p-adic values, one per displayed congruence. Index
/// arguments are the usual k, j or 2n. Each is only meaningful inside the
/// range the check registry enforces.
namespace closed {

PAdic sums_of_powers(const PrimeContext& c, int k);  // S_k mod p^4, k >= 2
PAdic harmonic_p2(const PrimeContext& c, int k);     // H_k mod p^2
PAdic harmonic_p3(const PrimeContext& c, int k);     // H_k mod p^3
PAdic harmonic_p4(const PrimeContext& c, int k);     // H_k mod p^4, k <= p-5
PAdic harmonic_p3_top(const PrimeContext& c);        // H_{p-3} mod p^4
PAdic harmonic_p1_top(const PrimeContext& c);        // H_{p-1} mod p^4
PAdic stirling_p3(const PrimeContext& c, int j);     // A_j mod p^3
PAdic stirling_short(const PrimeContext& c, int j);  // A_j mod p^4, even j
PAdic stirling_convolution(const PrimeContext& c, int j);   // A_{2n} mod p^4, 6 <= 2n <= p-1
PAdic mhs_p3(const PrimeContext& c, int k);          // A*_k mod p^3
/// part 1..5 selects (i)..(v) explicitly; 0 dispatches on j.
PAdic mhs_via_stirling(const PrimeContext& c, int j, int part = 0);
PAdic mhs_newton_sum(const PrimeContext& c, int j);
PAdic mhs_closed(const PrimeContext& c, int j);
PAdic mhs_top_minus3(const PrimeContext& c);
PAdic mhs_top(const PrimeContext& c);
PAdic inverse_factorial_p3(const PrimeContext& c);
PAdic r10_i(const PrimeContext& c, int n2);  // p^2/2 TCB(p+1-2n, p-3) mod p^3
PAdic r10_ii(const PrimeContext& c);         // p^2 TCB(4, p-3) mod p^3
PAdic r10_iii(const PrimeContext& c);        // p^2 TCB(6, p-3) mod p^3
PAdic r11_i(const PrimeContext& c);          // p^2 CB(p-1) mod p^3
PAdic r11_ii(const PrimeContext& c);         // CB(p-3) mod p
PAdic r11_iii(const PrimeContext& c);        // CB(p-5) mod p
PAdic mt1_i(const PrimeContext& c);          // BBB(p-3) mod p
PAdic mt1_ii(const PrimeContext& c);         // BBB(p-5) mod p
PAdic quotient_square_sum(const PrimeContext& c);       // -p^3/2 sum B_i sum_a a^{-i} q_a^2 mod p^4
PAdic eq90(const PrimeContext& c);           // p^3 BBB(p-1) mod p^4

}  // namespace closed

}  // namespace wilson4
