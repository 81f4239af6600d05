// cubicspin -- scans of cubic spin symbols and CM traces in imaginary
// quadratic orders, with density and cancellation reports and the
// property-verification suites.
//
// Subcommands: scan, density, spinsum, verify, ap.
// Exit codes: 0 success, 1 suite/property failure, 2 config or IO error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cubicspin/cubicspin.hpp"

namespace {

using namespace cubicspin;

struct CommonOpts {
  std::uint64_t d = 1;
  std::uint64_t f = 1;
  std::uint64_t xmax = 100000;
  std::vector<std::string> filters;
  unsigned m = 3;
  std::string mode = "both";
  std::string checkpoints;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  std::string cache;
  unsigned workers = 1;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool with_scan_flags) {
  cmd->add_option("--d", o.d, "squarefree d > 0, d != 3 (field Q(sqrt(-d), zeta_3))");
  cmd->add_option("--f", o.f, "conductor of the order Z[f sqrt(-d)]");
  if (with_scan_flags) {
    cmd->add_option("--xmax", o.xmax, "scan bound X");
    cmd->add_option("--filter", o.filters,
                    "extra congruence condition MOD:RES on p (repeatable)");
    cmd->add_option("--m", o.m, "power-residue degree (default 3 = cubes)");
    cmd->add_option("--mode", o.mode, "cube-flag path: spin|ap|both");
    cmd->add_option("--checkpoints", o.checkpoints, "comma-separated X values");
    cmd->add_option("--out", o.out, "write records/report to PATH");
    cmd->add_option("--format", o.format, "output format: csv|jsonl");
    cmd->add_option("--cache", o.cache, "append-only scan cache PATH");
    cmd->add_option("--workers", o.workers, "worker threads (output is order-independent)");
  }
  cmd->add_option("--seed", o.seed, "seed for randomized suites");
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> parse_filters(
    const std::vector<std::string>& specs) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& s : specs) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ConfigError("--filter wants MOD:RES, got " + s);
    out.emplace_back(std::stoull(s.substr(0, colon)), std::stoull(s.substr(colon + 1)));
  }
  return out;
}

std::vector<std::uint64_t> parse_checkpoints(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start < s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string::npos ? s.size() : comma;
    out.push_back(std::stoull(s.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

ScanConfig make_config(const CommonOpts& o) {
  ScanConfig cfg;
  cfg.d = o.d;
  cfg.f = o.f;
  cfg.x_max = o.xmax;
  cfg.residue_filters = parse_filters(o.filters);
  cfg.m = o.m;
  cfg.mode = parse_mode(o.mode);
  if (!o.checkpoints.empty()) cfg.checkpoints = parse_checkpoints(o.checkpoints);
  cfg.seed = o.seed;
  cfg.cache_path = o.cache;
  cfg.workers = o.workers;
  return cfg;
}

int cmd_scan(const CommonOpts& o) {
  const ScanConfig cfg = make_config(o);
  const auto records = run_scan(cfg);
  if (!o.out.empty()) {
    export_records(records, parse_format(o.format), o.out);
    std::cout << records.size() << " records -> " << o.out << "\n";
  } else {
    std::cout << kCsvHeader << "\n";
    for (const auto& r : records) std::cout << to_csv_row(r) << "\n";
  }
  return 0;
}

int cmd_density(const CommonOpts& o) {
  const ScanConfig cfg = make_config(o);
  const DensityReport report = run_density(cfg);
  std::printf("# density of m-th power traces, d=%llu f=%llu m=%u\n",
              (unsigned long long)cfg.d, (unsigned long long)cfg.f, cfg.m);
  std::printf("%12s %10s %10s %12s %12s\n", "X", "Q", "C", "C/Q", "|C/Q-1/m|");
  for (const auto& row : report.rows) {
    std::printf("%12llu %10llu %10llu %12.6f %12.6f\n", (unsigned long long)row.X,
                (unsigned long long)row.Q, (unsigned long long)row.C, row.fraction,
                std::abs(row.fraction - 1.0 / cfg.m));
  }
  if (!o.out.empty()) {
    const auto records = run_scan(cfg);
    export_records(records, parse_format(o.format), o.out);
    std::cout << "# " << records.size() << " records -> " << o.out << "\n";
  }
  return 0;
}

int cmd_spinsum(const CommonOpts& o, bool single) {
  ScanConfig cfg = make_config(o);
  cfg.full_orbit = !single;
  const SpinSumReport report = run_spinsum(cfg);
  std::printf("# spin-sum cancellation, d=%llu f=%llu, %s mode\n",
              (unsigned long long)cfg.d, (unsigned long long)cfg.f,
              report.full_orbit ? "full-orbit" : "single-prime");
  std::printf("%12s %10s %10s %10s %10s %10s %14s %10s\n", "X", "Q", "C", "n0", "n1", "n2",
              "|S|^2", "log|S|/logX");
  for (const auto& row : report.rows) {
    std::printf("%12llu %10llu %10llu %10llu %10llu %10llu %14llu %10.4f\n",
                (unsigned long long)row.X, (unsigned long long)row.Q,
                (unsigned long long)row.C, (unsigned long long)row.n0,
                (unsigned long long)row.n1, (unsigned long long)row.n2,
                (unsigned long long)row.s_norm_sq, row.exponent_estimate);
  }
  return 0;
}

int cmd_verify(const CommonOpts& o, const std::string& suite, std::uint64_t n) {
  const VerifyReport rep = run_verify(suite, o.seed, n, o.d);
  std::printf("suite %-18s samples %8llu failures %llu\n", rep.suite.c_str(),
              (unsigned long long)rep.samples, (unsigned long long)rep.failures);
  if (rep.failures > 0) {
    std::printf("first counterexample: %s\n", rep.first_counterexample.c_str());
    return 1;
  }
  return 0;
}

int cmd_ap(const CommonOpts& o, std::uint64_t p) {
  if (!is_prime(p)) throw ConfigError("ap: " + std::to_string(p) + " is not prime");
  const SpinEmbedding e = embed(p, o.d, o.f);
  const SpinValue k = spin_symbol(e);

  ApRecord rec;
  rec.p = p;
  rec.candidates = ap_cm_candidates(p, o.d, o.f);
  if (o.d == 1 && o.f == 1) rec.ap = ap_exact_d1(p);
  rec.cube = is_mth_power_residue(2 * e.kappa.a, p, 3);
  if (o.m != 3 && p % o.m == 1)
    rec.m_power[o.m] = is_mth_power_residue(rec.ap ? *rec.ap : 2 * e.kappa.a, p, o.m);

  const std::uint64_t D = e.kappa.D;
  std::cout << "p      = " << p << "  (d = " << o.d << ", f = " << o.f << ", D = " << D
            << ")\n";
  std::cout << "kappa  = " << e.kappa.a << " + " << e.kappa.b
            << (D == 1 ? "i" : "*sqrt(-" + std::to_string(D) + ")") << "   [norm " << p
            << "]\n";
  std::cout << "r      = " << e.r.value << "   (image of sqrt(-" << D << "))\n";
  std::cout << "omega  = " << e.omega.value << "   (image of zeta_3)\n";
  std::cout << "spin_k = " << k.exponent() << "\n";
  std::cout << "candidates = {";
  for (std::size_t i = 0; i < rec.candidates.size(); ++i)
    std::cout << (i ? ", " : "") << rec.candidates[i];
  std::cout << "}\n";
  if (rec.ap) std::cout << "ap     = " << *rec.ap << "\n";
  std::cout << "cube   = " << (rec.cube ? "true" : "false") << "\n";
  if (o.m != 3) {
    if (const auto it = rec.m_power.find(o.m); it != rec.m_power.end())
      std::cout << "m_power[" << o.m << "] = " << (it->second ? "true" : "false") << "\n";
    else
      std::cout << "m_power[" << o.m << "] = n/a (p != 1 mod m)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubic spin symbols and CM traces in imaginary quadratic orders"};
  app.require_subcommand(1);

  CommonOpts scan_o, density_o, spinsum_o, verify_o, ap_o;

  auto* scan = app.add_subcommand("scan", "emit one record per qualifying prime");
  add_common_flags(scan, scan_o, true);

  auto* density = app.add_subcommand("density", "fraction of m-th power traces");
  add_common_flags(density, density_o, true);

  auto* spinsum = app.add_subcommand("spinsum", "spin-sum class counts and |S(X)|");
  bool spinsum_single = false;
  add_common_flags(spinsum, spinsum_o, true);
  spinsum->add_flag("--single", spinsum_single,
                    "count one canonical prime per p instead of the full orbit");

  auto* verify = app.add_subcommand("verify", "run a property suite");
  std::string suite;
  std::uint64_t verify_n = 0;
  verify->add_option("suite", suite, "one of: reciprocity, lowering-split, lowering-inert, "
                                     "galois-orbit, unit-independence, spin-ap, lsplit2, "
                                     "magic-crosscheck")
      ->required();
  add_common_flags(verify, verify_o, false);
  verify->add_option("--xmax", verify_n,
                     "suite size (prime bound for exhaustive suites, sample count for "
                     "randomized ones; 0 = suite default)");

  auto* ap = app.add_subcommand("ap", "single-prime pipeline query");
  std::uint64_t ap_p = 0;
  ap->add_option("p", ap_p, "prime to query")->required();
  add_common_flags(ap, ap_o, false);
  ap->add_option("--m", ap_o.m, "also report the m-th power residue flag");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help exits 0, anything else is a config error
  }

  try {
    if (scan->parsed()) return cmd_scan(scan_o);
    if (density->parsed()) return cmd_density(density_o);
    if (spinsum->parsed()) return cmd_spinsum(spinsum_o, spinsum_single);
    if (verify->parsed()) return cmd_verify(verify_o, suite, verify_n);
    if (ap->parsed()) return cmd_ap(ap_o, ap_p);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const CacheCorrupt& e) {
    std::cerr << "cache corrupt: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    // precondition violations on query arguments (wrong congruence class,
    // p | d, ...) are configuration mistakes
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NonSplit& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const SuiteFailure& e) {
    std::cerr << "suite failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
