#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "wilson4/verifier.hpp"

namespace wilson4::cli {

/// Flag first, then $WILSON4_CACHE_DIR; empty means no cache.
std::filesystem::path resolve_cache_dir(const std::string& flag);

std::filesystem::path table_path(const std::filesystem::path& dir, std::uint64_t p, int e, int nmax);

/// Header "p e nmax", then p*B_k mod p^e for k = 0..nmax, one per line.
void write_table(const std::filesystem::path& file, const BernoulliTable& t);
/// nullopt if the file is missing; Error if it exists but is malformed.
std::optional<BernoulliTable> read_table(const std::filesystem::path& file);

TableStore file_table_store(const std::filesystem::path& dir);

}  // namespace wilson4::cli
