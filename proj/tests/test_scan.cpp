#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "cubicspin/scan.hpp"
#include "cubicspin/spin.hpp"

using namespace cubicspin;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("cubicspin_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_CASE("config validation", "[scan]") {
  ScanConfig cfg;
  cfg.d = 3;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg.d = 12;  // not squarefree
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg.d = 1;
  cfg.residue_filters = {{1, 0}};
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg.residue_filters = {{5, 5}};
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg.residue_filters = {{5, 1}};
  cfg.checkpoints = {10, 10};
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg.checkpoints = {10, 2000};  // beyond x_max = 1000
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg.checkpoints = {10, 1000};
  CHECK_NOTHROW(validate_config(cfg));
  cfg.m = 5;
  cfg.mode = ScanMode::Spin;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg.mode = ScanMode::Ap;
  CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("scan d = 1 up to 100", "[scan]") {
  ScanConfig cfg;
  cfg.d = 1;
  cfg.x_max = 100;
  const auto records = run_scan(cfg);
  REQUIRE(records.size() == 5);
  const std::vector<u64> ps{13, 37, 61, 73, 97};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(records[i].p == ps[i]);
    CHECK(records[i].spin_k.has_value());
    CHECK(records[i].ap.has_value());
    // the only cube-flagged prime below 100 is 97
    CHECK(records[i].flag == (records[i].p == 97));
  }
  // p = 13 row serializes exactly
  CHECK(to_csv_row(records[0]) == "13,1,1,3,2,6,0,2");
}

TEST_CASE("residue filters restrict the scan", "[scan]") {
  ScanConfig cfg;
  cfg.d = 1;
  cfg.x_max = 200;
  cfg.residue_filters = {{5, 1}};
  const auto records = run_scan(cfg);
  REQUIRE(records.size() == 2);
  CHECK(records[0].p == 61);
  CHECK(records[1].p == 181);
  for (const auto& r : records) CHECK(r.p % 60 == 1);

  // adding a filter never increases the qualifying count
  ScanConfig unfiltered = cfg;
  unfiltered.residue_filters.clear();
  CHECK(run_scan(unfiltered).size() >= records.size());
}

TEST_CASE("filter monotonicity and equivalence under filters", "[scan]") {
  ScanConfig base;
  base.d = 1;
  base.x_max = 30000;
  base.mode = ScanMode::Both;  // any spin/ap disagreement throws
  const auto all = run_scan(base);
  for (const auto& filt :
       std::vector<std::pair<u64, u64>>{{5, 1}, {7, 3}, {8, 1}, {11, 10}}) {
    ScanConfig cfg = base;
    cfg.residue_filters = {filt};
    const auto sub = run_scan(cfg);
    CHECK(sub.size() <= all.size());
    for (const auto& r : sub) CHECK(r.p % filt.first == filt.second);
    // stacking a second filter only shrinks further
    cfg.residue_filters.push_back({3, 1});
    CHECK(run_scan(cfg).size() <= sub.size());
  }
}

TEST_CASE("scan with m = 5 uses the ap path and drops spin_k", "[scan]") {
  ScanConfig cfg;
  cfg.d = 1;
  cfg.x_max = 2000;
  cfg.m = 5;
  const auto records = run_scan(cfg);
  REQUIRE(!records.empty());
  for (const auto& r : records) {
    CHECK(r.p % 5 == 1);  // auto-added congruence
    CHECK(r.p % 12 == 1);
    CHECK_FALSE(r.spin_k.has_value());
    REQUIRE(r.ap.has_value());
    CHECK(r.flag == is_mth_power_residue(*r.ap, r.p, 5));
  }
}

TEST_CASE("spin and ap paths agree in both mode", "[scan]") {
  ScanConfig cfg;
  cfg.d = 1;
  cfg.x_max = 20000;
  cfg.mode = ScanMode::Both;  // scan_prime throws on any disagreement
  const auto records = run_scan(cfg);
  CHECK(records.size() > 100);
  ScanConfig spin_only = cfg;
  spin_only.mode = ScanMode::Spin;
  ScanConfig ap_only = cfg;
  ap_only.mode = ScanMode::Ap;
  CHECK(run_scan(spin_only) == records);
  CHECK(run_scan(ap_only) == records);
}

TEST_CASE("worker count does not change the output", "[scan]") {
  ScanConfig cfg;
  cfg.d = 2;
  cfg.x_max = 300000;  // several blocks
  const auto serial = run_scan(cfg);
  cfg.workers = 8;
  const auto parallel = run_scan(cfg);
  CHECK(serial == parallel);
}

TEST_CASE("export formats", "[scan]") {
  TempDir tmp;
  ScanConfig cfg;
  cfg.d = 1;
  cfg.x_max = 100;
  const auto records = run_scan(cfg);

  const auto csv_path = tmp.path / "out.csv";
  export_records(records, ExportFormat::Csv, csv_path.string());
  const std::string csv = slurp(csv_path);
  CHECK(csv.rfind("p,d,f,a,b,ap,cube,spin_k\n", 0) == 0);
  CHECK(csv.find("13,1,1,3,2,6,0,2\n") != std::string::npos);
  CHECK(csv.find("97,1,1,9,4,18,1,0\n") != std::string::npos);

  const auto jsonl_path = tmp.path / "out.jsonl";
  export_records(records, ExportFormat::JsonLines, jsonl_path.string());
  const std::string jsonl = slurp(jsonl_path);
  CHECK(jsonl.find("{\"p\":13,\"d\":1,\"f\":1,\"a\":3,\"b\":2,\"ap\":6,\"cube\":false,"
                   "\"spin_k\":2}") != std::string::npos);

  // unresolved trace serializes as an empty CSV field and a JSON null
  ScanConfig d2;
  d2.d = 2;
  d2.x_max = 100;
  const auto recs2 = run_scan(d2);
  REQUIRE(!recs2.empty());
  const auto d2_jsonl = tmp.path / "d2.jsonl";
  export_records(recs2, ExportFormat::JsonLines, d2_jsonl.string());
  CHECK(slurp(d2_jsonl).find("\"ap\":null") != std::string::npos);
  CHECK(to_csv_row(recs2.front()).find(",,") != std::string::npos);

  // empty scan: header-only CSV
  const auto empty_path = tmp.path / "empty.csv";
  export_records({}, ExportFormat::Csv, empty_path.string());
  CHECK(slurp(empty_path) == "p,d,f,a,b,ap,cube,spin_k\n");
}

TEST_CASE("csv row round trip", "[scan]") {
  ScanConfig cfg;
  cfg.d = 2;
  cfg.x_max = 5000;
  for (const auto& rec : run_scan(cfg)) {
    CHECK(from_csv_row(to_csv_row(rec)) == rec);
    CHECK_FALSE(rec.ap.has_value());  // unresolved sign for d != 1
  }
}

TEST_CASE("cache write, resume, and corruption detection", "[scan]") {
  TempDir tmp;
  const auto cache = (tmp.path / "scan.cache").string();
  CHECK(resume(cache) == 0);  // fresh cache

  ScanConfig cfg;
  cfg.d = 1;
  cfg.x_max = 3000;
  cfg.cache_path = cache;
  const auto first = run_scan(cfg);
  REQUIRE(!first.empty());
  CHECK(resume(cache) == first.back().p);

  // extending the bound reuses the prefix and appends; the result is
  // indistinguishable from a fresh uncached scan
  cfg.x_max = 6000;
  const auto extended = run_scan(cfg);
  CHECK(extended.size() > first.size());
  for (std::size_t i = 0; i < first.size(); ++i) CHECK(extended[i] == first[i]);
  CHECK(resume(cache) == extended.back().p);
  ScanConfig fresh = cfg;
  fresh.cache_path.clear();
  CHECK(run_scan(fresh) == extended);

  // rescanning with the same bound is a no-op read
  const auto again = run_scan(cfg);
  CHECK(again == extended);

  // a smaller bound returns the prefix; the cache keeps its full extent
  cfg.x_max = 3000;
  CHECK(run_scan(cfg) == first);
  CHECK(resume(cache) == extended.back().p);
  cfg.x_max = 6000;

  // a flipped byte breaks the checksum
  std::string blob = slurp(cache);
  const auto pos = blob.find("13,1,1");
  REQUIRE(pos != std::string::npos);
  blob[pos] = '7';
  std::ofstream(cache, std::ios::binary | std::ios::trunc) << blob;
  CHECK_THROWS_AS(resume(cache), CacheCorrupt);

  // wrong d is a config error
  TempDir tmp2;
  ScanConfig other = cfg;
  other.cache_path = (tmp2.path / "scan.cache").string();
  other.x_max = 3000;
  run_scan(other);
  other.d = 2;
  CHECK_THROWS_AS(run_scan(other), ConfigError);
}

TEST_CASE("density report", "[scan]") {
  ScanConfig cfg;
  cfg.d = 1;
  cfg.x_max = 100;
  cfg.checkpoints = {50, 100};
  const auto report = run_density(cfg);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].X == 50);
  CHECK(report.rows[0].Q == 2);  // 13, 37
  CHECK(report.rows[0].C == 0);
  CHECK(report.rows[1].Q == 5);
  CHECK(report.rows[1].C == 1);  // 97
  CHECK(report.rows[1].fraction == Catch::Approx(0.2));
}

TEST_CASE("spinsum report and the full-orbit identity", "[scan]") {
  ScanConfig cfg;
  cfg.d = 1;
  cfg.x_max = 100;
  const auto report = run_spinsum(cfg);
  REQUIRE(report.rows.size() == 1);
  const auto& row = report.rows[0];
  CHECK(row.Q == 5);
  CHECK(row.C == 1);
  CHECK(row.n0 + row.n1 + row.n2 == 4 * row.Q);
  CHECK(row.A == 6 * i64(row.C) - 2 * i64(row.Q));  // = -4
  CHECK(row.B == 0);
  CHECK(row.s_norm_sq == 16);

  // the identity holds at every checkpoint of a longer scan
  ScanConfig cfg2;
  cfg2.d = 1;
  cfg2.x_max = 50000;
  cfg2.checkpoints = {1000, 10000, 50000};
  const auto rep2 = run_spinsum(cfg2);  // run_spinsum itself asserts the identity
  REQUIRE(rep2.rows.size() == 3);
  for (const auto& r : rep2.rows) {
    CHECK(r.n1 == r.n2);
    CHECK(r.n0 + r.n1 + r.n2 == 4 * r.Q);
  }

  // single-prime mode counts each scanned prime once
  ScanConfig cfg3 = cfg2;
  cfg3.full_orbit = false;
  const auto rep3 = run_spinsum(cfg3);
  for (std::size_t i = 0; i < rep3.rows.size(); ++i) {
    CHECK(rep3.rows[i].n0 + rep3.rows[i].n1 + rep3.rows[i].n2 == rep3.rows[i].Q);
    CHECK(rep3.rows[i].n0 == rep3.rows[i].C);
  }

  CHECK_THROWS_AS(
      [] {
        ScanConfig bad;
        bad.m = 5;
        bad.mode = ScanMode::Ap;
        return run_spinsum(bad);
      }(),
      ConfigError);
}

TEST_CASE("trivial-class primes contribute orbit sum 4 apiece", "[scan]") {
  // the degenerate composition: a scan made only of k = 0 primes has
  // S(X) = 4 Q(X), because each full orbit lands entirely in class 0
  ScanConfig cfg;
  cfg.d = 1;
  cfg.x_max = 5000;
  u64 trivial = 0, n0 = 0;
  for (const auto& r : run_scan(cfg)) {
    if (*r.spin_k != 0) continue;
    ++trivial;
    for (const auto& v : galois_orbit(embed(r.p, r.d, r.f))) {
      REQUIRE(v == CubeClass::root(0));
      ++n0;
    }
  }
  REQUIRE(trivial > 0);
  CHECK(n0 == 4 * trivial);
}
