#pragma once

// Record export (CSV, JSON lines) and the scan cache: an append-only CSV
// with a trailing checksum line, inspectable and diffable. The checksum is
// FNV-1a 64 over the header and record lines (newlines included); the file
// is valid only if the last line is "#fnv1a,<16 hex digits>" matching the
// content and the record p column is strictly increasing.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cubicspin/errors.hpp"
#include "cubicspin/records.hpp"

namespace cubicspin {

enum class ExportFormat { Csv, JsonLines };

inline ExportFormat parse_format(const std::string& s) {
  if (s == "csv") return ExportFormat::Csv;
  if (s == "jsonl" || s == "json-lines") return ExportFormat::JsonLines;
  throw ConfigError("unknown export format: " + s);
}

inline nlohmann::ordered_json record_to_json(const SpinRecord& r) {
  nlohmann::ordered_json j;
  j["p"] = r.p;
  j["d"] = r.d;
  j["f"] = r.f;
  j["a"] = r.a;
  j["b"] = r.b;
  if (r.ap)
    j["ap"] = *r.ap;
  else
    j["ap"] = nullptr;
  j["cube"] = r.flag;
  if (r.spin_k)
    j["spin_k"] = *r.spin_k;
  else
    j["spin_k"] = nullptr;
  return j;
}

inline void export_records(const std::vector<SpinRecord>& records, ExportFormat format,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  if (format == ExportFormat::Csv) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) out << to_csv_row(r) << '\n';
  } else {
    for (const auto& r : records) out << record_to_json(r).dump() << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

// ---------------------------------------------------------------------------
// cache
// ---------------------------------------------------------------------------

namespace detail {

inline u64 fnv1a64(const std::string& data, u64 h = 14695981039346656037ull) {
  for (const unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string checksum_hex(u64 h) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

inline constexpr const char* kChecksumPrefix = "#fnv1a,";

}  // namespace detail

// Reads and fully validates a cache file. Missing file = empty cache.
inline std::vector<SpinRecord> load_cache(const std::string& path) {
  std::vector<SpinRecord> records;
  if (!std::filesystem::exists(path)) return records;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open cache: " + path);

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  if (lines.empty()) return records;

  if (lines.back().rfind(detail::kChecksumPrefix, 0) != 0)
    throw CacheCorrupt("cache has no trailing checksum line: " + path);
  const std::string stated = lines.back().substr(std::string(detail::kChecksumPrefix).size());
  lines.pop_back();

  std::string body;
  for (const auto& l : lines) {
    body += l;
    body += '\n';
  }
  if (detail::checksum_hex(detail::fnv1a64(body)) != stated)
    throw CacheCorrupt("cache checksum mismatch: " + path);

  if (lines.empty() || lines.front() != kCsvHeader)
    throw CacheCorrupt("cache header missing: " + path);
  u64 prev_p = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    SpinRecord r = from_csv_row(lines[i]);
    if (r.p <= prev_p) throw CacheCorrupt("cache p column not strictly increasing");
    prev_p = r.p;
    records.push_back(std::move(r));
  }
  return records;
}

// Rewrites the cache as header + records + checksum.
inline void write_cache(const std::string& path, const std::vector<SpinRecord>& records) {
  std::string body = std::string(kCsvHeader) + '\n';
  for (const auto& r : records) {
    body += to_csv_row(r);
    body += '\n';
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open cache for writing: " + path);
  out << body << detail::kChecksumPrefix << detail::checksum_hex(detail::fnv1a64(body))
      << '\n';
  out.flush();
  if (!out) throw IoError("cache write failed: " + path);
}

// Largest scanned prime recorded in the cache; 0 for a fresh cache.
inline u64 resume(const std::string& cache_path) {
  const auto records = load_cache(cache_path);
  return records.empty() ? 0 : records.back().p;
}

}  // namespace cubicspin
