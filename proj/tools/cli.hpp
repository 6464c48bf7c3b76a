#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace wilson4::cli {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2 };

/// "7..101", "19,47", "5,11..13". Ranges keep their primes; an explicitly
/// listed composite is an error.
std::vector<std::uint64_t> parse_primes(const std::string& spec);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wilson4::cli
