#include "table_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "wilson4/errors.hpp"

namespace wilson4::cli {

namespace fs = std::filesystem;

fs::path resolve_cache_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("WILSON4_CACHE_DIR"); env && *env) return env;
  return {};
}

fs::path table_path(const fs::path& dir, std::uint64_t p, int e, int nmax) {
  return dir / ("bernoulli_p" + std::to_string(p) + "_e" + std::to_string(e) + "_n" + std::to_string(nmax) + ".txt");
}

void write_table(const fs::path& file, const BernoulliTable& t) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  // Write then rename, so a concurrent reader never sees half a table.
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write " + tmp.string());
    out << t.prime() << ' ' << t.exponent() << ' ' << t.nmax() << '\n';
    for (const Integer& v : t.entries()) out << v.get_str() << '\n';
    if (!out) throw Error("write failed: " + tmp.string());
  }
  fs::rename(tmp, file);
}

std::optional<BernoulliTable> read_table(const fs::path& file) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::uint64_t p = 0;
  int e = 0, nmax = -1;
  if (!(in >> p >> e >> nmax) || nmax < 0) throw Error("bad cache header in " + file.string());
  std::vector<Integer> entries;
  entries.reserve(static_cast<std::size_t>(nmax) + 1);
  std::string line;
  std::getline(in, line);
  const Integer m = prime_power(p, e);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Integer v;
    if (v.set_str(line, 10) != 0 || v < 0 || v >= m) throw Error("bad cache entry in " + file.string());
    entries.push_back(std::move(v));
  }
  if (entries.size() != static_cast<std::size_t>(nmax) + 1) throw Error("truncated cache file " + file.string());
  return BernoulliTable(p, e, std::move(entries));
}

TableStore file_table_store(const fs::path& dir) {
  if (dir.empty()) return {};
  TableStore s;
  s.load = [dir](std::uint64_t p, int e, int nmax) { return read_table(table_path(dir, p, e, nmax)); };
  s.save = [dir](const BernoulliTable& t) { write_table(table_path(dir, t.prime(), t.exponent(), t.nmax()), t); };
  return s;
}

}  // namespace wilson4::cli
