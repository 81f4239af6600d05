#pragma once

// Prime-scan harness: walks primes p <= x_max in fixed blocks, applies the
// congruence and splitting filters, and emits one SpinRecord per qualifying
// prime. Blocks are processed by independent workers and merged in block
// order, so output is deterministic regardless of worker count; all
// aggregation is exact integer arithmetic.
//
// Built-in filters: p = 1 mod 3, p coprime to 6 d f, p = 1 mod 4 when
// d = 1, and p = 1 mod m when m != 3 (the spin path is cubic only, so for
// other m the residue test on the trace is what the scan measures).

#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cubicspin/arith.hpp"
#include "cubicspin/cm_ap.hpp"
#include "cubicspin/errors.hpp"
#include "cubicspin/io.hpp"
#include "cubicspin/quad_order.hpp"
#include "cubicspin/records.hpp"
#include "cubicspin/spin.hpp"

namespace cubicspin {

enum class ScanMode { Spin, Ap, Both };

inline ScanMode parse_mode(const std::string& s) {
  if (s == "spin") return ScanMode::Spin;
  if (s == "ap") return ScanMode::Ap;
  if (s == "both") return ScanMode::Both;
  throw ConfigError("unknown mode: " + s);
}

struct ScanConfig {
  u64 d = 1;
  u64 f = 1;
  u64 x_max = 1000;
  std::vector<std::pair<u64, u64>> residue_filters;  // (modulus, residue)
  unsigned m = 3;
  ScanMode mode = ScanMode::Both;
  std::vector<u64> checkpoints;  // ascending, <= x_max; defaults to {x_max}
  u64 seed = 0;                  // for randomized verify suites
  std::string cache_path;
  unsigned workers = 1;
  bool full_orbit = true;  // spin-sum accounting over all four conjugates
};

inline void validate_config(const ScanConfig& cfg) {
  if (cfg.d == 0 || cfg.d == 3 || !is_squarefree(cfg.d))
    throw ConfigError("d must be squarefree, positive and != 3");
  if (cfg.f == 0) throw ConfigError("f must be >= 1");
  if (u128(cfg.f) * cfg.f * cfg.d >= (u128(1) << 62))
    throw ConfigError("f^2 d out of range");
  if (cfg.m < 2) throw ConfigError("m must be >= 2");
  if (cfg.m != 3 && cfg.mode == ScanMode::Spin)
    throw ConfigError("the spin path is cubic; m != 3 requires the ap path");
  for (const auto& [mod, res] : cfg.residue_filters) {
    if (mod < 2) throw ConfigError("filter modulus must be >= 2");
    if (res >= mod) throw ConfigError("filter residue must be < modulus");
  }
  u64 prev = 0;
  for (const u64 x : cfg.checkpoints) {
    if (x <= prev) throw ConfigError("checkpoints must be strictly ascending");
    if (x > cfg.x_max) throw ConfigError("checkpoints must be <= x_max");
    prev = x;
  }
  if (cfg.workers == 0) throw ConfigError("workers must be >= 1");
}

inline std::vector<u64> effective_checkpoints(const ScanConfig& cfg) {
  return cfg.checkpoints.empty() ? std::vector<u64>{cfg.x_max} : cfg.checkpoints;
}

// Congruence-level filters only; splitting is decided by scan_prime.
inline bool prime_qualifies(const ScanConfig& cfg, u64 p) {
  if (p < 5 || p % 3 != 1) return false;
  if (cfg.d % p == 0 || cfg.f % p == 0) return false;
  if (cfg.d == 1 && p % 4 != 1) return false;
  if (cfg.m != 3 && p % cfg.m != 1) return false;
  for (const auto& [mod, res] : cfg.residue_filters) {
    if (p % mod != res) return false;
  }
  return true;
}

// Full pipeline for one prime; nullopt when a filter or the splitting test
// rejects it.
inline std::optional<SpinRecord> scan_prime(const ScanConfig& cfg, u64 p) {
  if (!prime_qualifies(cfg, p)) return std::nullopt;
  const auto split = try_split_prime(p, cfg.d, cfg.f);
  if (!split) return std::nullopt;

  SpinRecord rec;
  rec.p = p;
  rec.d = cfg.d;
  rec.f = cfg.f;
  rec.a = static_cast<u64>(split->kappa.a);
  rec.b = static_cast<u64>(split->kappa.b);
  if (cfg.d == 1 && cfg.f == 1) rec.ap = ap_exact_d1(p);

  bool spin_flag = false;
  if (cfg.m == 3) {
    const SpinEmbedding e = embed_from_kappa(p, cfg.d, cfg.f, split->kappa);
    const SpinValue k = spin_symbol(e);
    rec.spin_k = k.exponent();
    spin_flag = k.exponent() == 0;
  }

  const i64 trace = rec.ap ? *rec.ap : 2 * split->kappa.a;
  const bool ap_flag = is_mth_power_residue(trace, p, cfg.m);

  switch (cfg.mode) {
    case ScanMode::Spin:
      rec.flag = spin_flag;
      break;
    case ScanMode::Ap:
      rec.flag = ap_flag;
      break;
    case ScanMode::Both:
      if (cfg.m == 3 && spin_flag != ap_flag)
        throw InternalInconsistency("scan_prime: spin and ap paths disagree at p = " +
                                    std::to_string(p));
      rec.flag = cfg.m == 3 ? spin_flag : ap_flag;
      break;
  }
  return rec;
}

namespace detail {

constexpr u64 kScanBlock = u64(1) << 16;

inline std::vector<SpinRecord> scan_block(const ScanConfig& cfg, u64 lo, u64 hi) {
  std::vector<SpinRecord> out;
  for (const u64 p : primes_in_range(lo, hi)) {
    if (auto rec = scan_prime(cfg, p)) out.push_back(std::move(*rec));
  }
  return out;
}

}  // namespace detail

// All qualifying primes <= x_max, ascending. With a cache configured, the
// previously scanned prefix is loaded and only the remainder is computed;
// new records are appended and the checksum rewritten.
inline std::vector<SpinRecord> run_scan(const ScanConfig& cfg) {
  validate_config(cfg);

  std::vector<SpinRecord> records;
  u64 start = 2;
  if (!cfg.cache_path.empty()) {
    records = load_cache(cfg.cache_path);
    for (const auto& r : records) {
      if (r.d != cfg.d || r.f != cfg.f)
        throw ConfigError("cache was produced with different d or f");
    }
    if (!records.empty()) start = records.back().p + 1;
  }
  const std::size_t cached = records.size();

  if (start <= cfg.x_max) {
    const u64 span = cfg.x_max + 1 - start;
    const std::size_t nblocks =
        static_cast<std::size_t>((span + detail::kScanBlock - 1) / detail::kScanBlock);
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(cfg.workers, nblocks));

    if (workers <= 1) {
      for (std::size_t i = 0; i < nblocks; ++i) {
        const u64 lo = start + u64(i) * detail::kScanBlock;
        const u64 hi = std::min(cfg.x_max + 1, lo + detail::kScanBlock);
        auto part = detail::scan_block(cfg, lo, hi);
        records.insert(records.end(), part.begin(), part.end());
      }
    } else {
      std::vector<std::vector<SpinRecord>> parts(nblocks);
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= nblocks) return;
            const u64 lo = start + u64(i) * detail::kScanBlock;
            const u64 hi = std::min(cfg.x_max + 1, lo + detail::kScanBlock);
            parts[i] = detail::scan_block(cfg, lo, hi);
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& part : parts) records.insert(records.end(), part.begin(), part.end());
    }
  }

  if (!cfg.cache_path.empty() && records.size() != cached)
    write_cache(cfg.cache_path, records);
  // the cache may extend beyond a smaller x_max; the result never does
  while (!records.empty() && records.back().p > cfg.x_max) records.pop_back();
  return records;
}

// ---------------------------------------------------------------------------
// density
// ---------------------------------------------------------------------------

struct DensityRow {
  u64 X = 0;
  u64 Q = 0;  // qualifying primes <= X
  u64 C = 0;  // of those, flagged (m-th power residue trace)
  double fraction = 0.0;
};

struct DensityReport {
  ScanConfig config;
  std::vector<DensityRow> rows;
};

inline DensityReport run_density(const ScanConfig& cfg) {
  DensityReport report;
  report.config = cfg;
  const auto records = run_scan(cfg);
  const auto checkpoints = effective_checkpoints(cfg);
  std::size_t i = 0;
  u64 Q = 0, C = 0;
  for (const u64 X : checkpoints) {
    while (i < records.size() && records[i].p <= X) {
      ++Q;
      if (records[i].flag) ++C;
      ++i;
    }
    report.rows.push_back(
        DensityRow{X, Q, C, Q == 0 ? 0.0 : static_cast<double>(C) / static_cast<double>(Q)});
  }
  return report;
}

// ---------------------------------------------------------------------------
// spin-sum cancellation
// ---------------------------------------------------------------------------

struct SpinSumRow {
  u64 X = 0;
  u64 Q = 0;
  u64 C = 0;
  u64 n0 = 0, n1 = 0, n2 = 0;  // class counts
  i64 A = 0, B = 0;            // S = A + B zeta as an algebraic integer
  u64 s_norm_sq = 0;           // |S|^2 = A^2 - AB + B^2, exact
  double exponent_estimate = 0.0;  // log |S| / log X; display only
};

struct SpinSumReport {
  ScanConfig config;
  bool full_orbit = true;
  std::vector<SpinSumRow> rows;
};

// Class counts of the spin symbol at checkpoints. Full-orbit mode counts
// all four Galois conjugates of every scanned prime (each orbit computed
// through its four homomorphisms, not inferred), and checks the exact
// identity S(X) = 6 C(X) - 2 Q(X). Single mode counts one canonical prime
// per p.
inline SpinSumReport run_spinsum(const ScanConfig& cfg) {
  if (cfg.m != 3) throw ConfigError("spinsum requires m = 3");
  SpinSumReport report;
  report.config = cfg;
  report.full_orbit = cfg.full_orbit;

  const auto records = run_scan(cfg);
  const auto checkpoints = effective_checkpoints(cfg);
  std::size_t i = 0;
  u64 Q = 0, C = 0, n0 = 0, n1 = 0, n2 = 0;
  for (const u64 X : checkpoints) {
    for (; i < records.size() && records[i].p <= X; ++i) {
      const SpinRecord& rec = records[i];
      ++Q;
      if (rec.spin_k && *rec.spin_k == 0) ++C;
      if (cfg.full_orbit) {
        const SpinEmbedding e = embed(rec.p, rec.d, rec.f);
        for (const SpinValue& v : galois_orbit(e)) {
          const unsigned k = v.exponent();
          if (k == 0)
            ++n0;
          else if (k == 1)
            ++n1;
          else
            ++n2;
        }
      } else {
        const unsigned k = rec.spin_k.value();
        if (k == 0)
          ++n0;
        else if (k == 1)
          ++n1;
        else
          ++n2;
      }
    }
    SpinSumRow row;
    row.X = X;
    row.Q = Q;
    row.C = C;
    row.n0 = n0;
    row.n1 = n1;
    row.n2 = n2;
    row.A = static_cast<i64>(n0) - static_cast<i64>(n2);
    row.B = static_cast<i64>(n1) - static_cast<i64>(n2);
    const i128 nsq = i128(row.A) * row.A - i128(row.A) * row.B + i128(row.B) * row.B;
    row.s_norm_sq = static_cast<u64>(nsq);
    if (cfg.full_orbit) {
      // the orbit sum collapses to an integer: 4 per trivial class, -2 otherwise
      const i64 expected = 6 * static_cast<i64>(C) - 2 * static_cast<i64>(Q);
      if (row.B != 0 || row.A != expected)
        throw InternalInconsistency("spinsum: full-orbit identity S = 6C - 2Q violated");
    }
    row.exponent_estimate =
        row.s_norm_sq == 0 || X < 2
            ? 0.0
            : 0.5 * std::log(static_cast<double>(row.s_norm_sq)) /
                  std::log(static_cast<double>(X));
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace cubicspin
