#pragma once

#include <cstdint>
#include <string>

#include "wilson4/exact_arith.hpp"

namespace wilson4 {

enum class CheckStatus { Pass, Fail, Skipped, Error };

const char* to_string(CheckStatus s);

/// One evaluated congruence. `id` carries the case parameters when the check
/// is a family, e.g. "R5[k=3]".
struct CongruenceReport {
  std::string id;
  std::uint64_t p = 0;
  int e = 0;
  Residue lhs{0, 1};
  Residue rhs{0, 1};
  bool pass = false;
  CheckStatus status = CheckStatus::Fail;
  std::string detail;
  double ms = 0.0;

  Integer modulus() const { return lhs.modulus(); }
};

CongruenceReport make_report(std::string id, std::uint64_t p, int e, Residue lhs, Residue rhs,
                             double ms = 0.0);

/// Exact rational identities (no prime involved).
struct IdentityReport {
  std::string id;
  Rational lhs;
  Rational rhs;
  bool pass = false;
};

}  // namespace wilson4
