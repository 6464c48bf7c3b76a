#include "wilson4/report.hpp"

namespace wilson4 {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skipped: return "SKIP";
    case CheckStatus::Error: return "ERROR";
  }
  return "?";
}

CongruenceReport make_report(std::string id, std::uint64_t p, int e, Residue lhs, Residue rhs, double ms) {
  CongruenceReport r;
  r.id = std::move(id);
  r.p = p;
  r.e = e;
  r.pass = lhs == rhs;
  r.status = r.pass ? CheckStatus::Pass : CheckStatus::Fail;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.ms = ms;
  return r;
}

}  // namespace wilson4
