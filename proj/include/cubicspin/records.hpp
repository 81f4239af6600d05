#pragma once

// The per-prime record emitted by scans, and its fixed serialization:
// CSV columns p,d,f,a,b,ap,cube,spin_k (ap and spin_k may be empty),
// booleans as 0/1.

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>

#include "cubicspin/arith.hpp"
#include "cubicspin/errors.hpp"

namespace cubicspin {

struct SpinRecord {
  u64 p = 0;
  u64 d = 1;
  u64 f = 1;
  u64 a = 0;  // kappa = a + b sqrt(-f^2 d), canonical quadrant
  u64 b = 0;
  std::optional<i64> ap;       // exact trace when the sign is pinned (d = 1)
  bool flag = false;           // a_p is an m-th power residue (cube when m = 3)
  std::optional<unsigned> spin_k;  // spin exponent; present only for m = 3

  friend bool operator==(const SpinRecord&, const SpinRecord&) = default;
};

inline constexpr const char* kCsvHeader = "p,d,f,a,b,ap,cube,spin_k";

inline std::string to_csv_row(const SpinRecord& r) {
  std::string out;
  out += std::to_string(r.p);
  out += ',';
  out += std::to_string(r.d);
  out += ',';
  out += std::to_string(r.f);
  out += ',';
  out += std::to_string(r.a);
  out += ',';
  out += std::to_string(r.b);
  out += ',';
  if (r.ap) out += std::to_string(*r.ap);
  out += ',';
  out += r.flag ? '1' : '0';
  out += ',';
  if (r.spin_k) out += std::to_string(*r.spin_k);
  return out;
}

namespace detail {

inline bool split_fields(const std::string& line, std::string (&fields)[8]) {
  std::size_t field = 0, start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      if (field >= 8) return false;
      fields[field++] = line.substr(start, i - start);
      start = i + 1;
    }
  }
  return field == 8;
}

template <typename T>
inline bool parse_int(const std::string& s, T& out) {
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

}  // namespace detail

inline SpinRecord from_csv_row(const std::string& line) {
  std::string fields[8];
  if (!detail::split_fields(line, fields))
    throw CacheCorrupt("record row does not have 8 fields: " + line);
  SpinRecord r;
  u64 cube = 0;
  if (!detail::parse_int(fields[0], r.p) || !detail::parse_int(fields[1], r.d) ||
      !detail::parse_int(fields[2], r.f) || !detail::parse_int(fields[3], r.a) ||
      !detail::parse_int(fields[4], r.b) || !detail::parse_int(fields[6], cube) ||
      cube > 1)
    throw CacheCorrupt("unparsable record row: " + line);
  r.flag = cube == 1;
  if (!fields[5].empty()) {
    i64 ap = 0;
    if (!detail::parse_int(fields[5], ap)) throw CacheCorrupt("bad ap field: " + line);
    r.ap = ap;
  }
  if (!fields[7].empty()) {
    unsigned k = 0;
    if (!detail::parse_int(fields[7], k) || k > 2)
      throw CacheCorrupt("bad spin_k field: " + line);
    r.spin_k = k;
  }
  return r;
}

}  // namespace cubicspin
