#include "sawlab/cache.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <vector>

namespace sawlab::cache {

namespace fs = std::filesystem;

fs::path default_dir() {
  if (const char* env = std::getenv("SAWLAB_CACHE")) return fs::path(env);
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"))
    return fs::path(xdg) / "sawlab";
  if (const char* home = std::getenv("HOME"))
    return fs::path(home) / ".cache" / "sawlab";
  return fs::temp_directory_path() / "sawlab-cache";
}

std::string key_string(const Key& k) {
  return k.quantity + "|" + k.lattice + "|" + std::to_string(k.n) + "|" +
         k.lambda + "|" + k.domain + "|" + k.engine;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

fs::path entry_path(const fs::path& dir, const Key& k) {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json",
                static_cast<unsigned long long>(fnv1a64(key_string(k))));
  return dir / name;
}

Json key_json(const Key& k) {
  Json j;
  j["quantity"] = k.quantity;
  j["lattice"] = k.lattice;
  j["n"] = k.n;
  j["lambda"] = k.lambda;
  j["domain"] = k.domain;
  j["engine"] = k.engine;
  return j;
}

}  // namespace

std::optional<Json> load(const fs::path& dir, const Key& k) {
  fs::path p = entry_path(dir, k);
  std::ifstream in(p);
  if (!in) return std::nullopt;
  Json doc = Json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.contains("key") || !doc.contains("payload"))
    return std::nullopt;
  if (doc["key"] != key_json(k)) return std::nullopt;  // hash collision
  std::error_code ec;
  fs::last_write_time(p, fs::file_time_type::clock::now(), ec);  // LRU touch
  return doc["payload"];
}

void store(const fs::path& dir, const Key& k, const Json& payload) {
  fs::create_directories(dir);
  Json doc;
  doc["key"] = key_json(k);
  doc["payload"] = payload;
  fs::path p = entry_path(dir, k);
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << doc.dump();
    if (!out) throw std::runtime_error("cache write failed: " + tmp.string());
  }
  fs::rename(tmp, p);
}

GcSummary gc(const fs::path& dir, std::uintmax_t max_bytes) {
  GcSummary s;
  s.max_bytes = max_bytes;
  if (!fs::exists(dir)) return s;
  struct Entry {
    fs::path p;
    fs::file_time_type mtime;
    std::uintmax_t size;
  };
  std::vector<Entry> entries;
  for (const auto& de : fs::directory_iterator(dir)) {
    if (!de.is_regular_file() || de.path().extension() != ".json") continue;
    entries.push_back({de.path(), de.last_write_time(), de.file_size()});
    s.bytes_before += entries.back().size;
  }
  s.entries_before = entries.size();
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.mtime < b.mtime; });
  s.bytes_after = s.bytes_before;
  std::size_t kept = entries.size();
  for (const auto& e : entries) {
    if (s.bytes_after <= max_bytes) break;
    fs::remove(e.p);
    s.bytes_after -= e.size;
    --kept;
    ++s.evicted;
  }
  s.entries_after = kept;
  return s;
}

Json to_json(const GcSummary& s) {
  Json j;
  j["entries_before"] = s.entries_before;
  j["entries_after"] = s.entries_after;
  j["evicted"] = s.evicted;
  j["bytes_before"] = s.bytes_before;
  j["bytes_after"] = s.bytes_after;
  j["max_bytes"] = s.max_bytes;
  return j;
}

}  // namespace sawlab::cache
