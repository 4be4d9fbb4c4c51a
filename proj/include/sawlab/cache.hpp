#pragma once
// Result cache for expensive enumerations.  An entry is keyed by the full
// tuple (quantity, lattice, n, lambda, domain, engine version); the filename
// is the FNV-1a hash of that tuple, and the stored document repeats the full
// key, so a hash collision reads as a miss rather than a wrong answer.
// Loads touch the file mtime; gc evicts oldest-mtime entries first until the
// directory fits the byte budget.  gc only runs as its own subcommand, never
// concurrently with a computing run, so it cannot evict an entry a job is
// holding.

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace sawlab::cache {

using Json = nlohmann::ordered_json;

struct Key {
  std::string quantity;  // e.g. "count", "bridge"
  std::string lattice;   // canonical lattice token
  int n = 0;
  std::string lambda;    // exact rational text, "" when not applicable
  std::string domain;    // restriction hash/text, "" for free enumeration
  std::string engine;    // kEngineVersion; a new engine never reuses entries
};

// $SAWLAB_CACHE, else $XDG_CACHE_HOME/sawlab, else $HOME/.cache/sawlab,
// else <tmp>/sawlab-cache
std::filesystem::path default_dir();

std::string key_string(const Key& k);
std::uint64_t fnv1a64(std::string_view s);

// nullopt on miss, parse failure, or key mismatch
std::optional<Json> load(const std::filesystem::path& dir, const Key& k);
void store(const std::filesystem::path& dir, const Key& k,
           const Json& payload);

struct GcSummary {
  std::size_t entries_before = 0;
  std::size_t entries_after = 0;
  std::size_t evicted = 0;
  std::uintmax_t bytes_before = 0;
  std::uintmax_t bytes_after = 0;
  std::uintmax_t max_bytes = 0;
};
GcSummary gc(const std::filesystem::path& dir, std::uintmax_t max_bytes);
Json to_json(const GcSummary& s);

}  // namespace sawlab::cache
