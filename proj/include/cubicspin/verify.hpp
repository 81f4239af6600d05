#pragma once

// Named property suites, runnable from the CLI and reused verbatim by the
// acceptance tests. Every suite counts failures and keeps the first
// counterexample it saw; exhaustive suites walk primes in ascending order,
// so the counterexample is minimal in p. Randomized suites draw from
// mt19937_64 with the given seed and are reproducible by construction.

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cubicspin/cm_ap.hpp"
#include "cubicspin/eisenstein.hpp"
#include "cubicspin/errors.hpp"
#include "cubicspin/scan.hpp"
#include "cubicspin/spin.hpp"

namespace cubicspin {

struct VerifyReport {
  std::string suite;
  u64 samples = 0;
  u64 failures = 0;
  std::string first_counterexample;
};

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{
      "reciprocity",    "lowering-split", "lowering-inert",    "galois-orbit",
      "unit-independence", "spin-ap",     "lsplit2",           "magic-crosscheck"};
  return names;
}

namespace detail {

inline void note_failure(VerifyReport& rep, const std::string& what) {
  if (rep.failures == 0) rep.first_counterexample = what;
  ++rep.failures;
}

inline std::string show(const EisensteinInt& x) {
  std::ostringstream os;
  os << "(" << x.a << (x.b >= 0 ? " + " : " - ") << (x.b >= 0 ? x.b : -x.b) << " zeta)";
  return os.str();
}

inline EisensteinInt random_nonzero(std::mt19937_64& rng, i64 radius) {
  std::uniform_int_distribution<i64> coord(-radius, radius);
  for (;;) {
    const EisensteinInt x{coord(rng), coord(rng)};
    if (!e_is_zero(x)) return x;
  }
}

inline EisensteinInt random_coprime_to_three(std::mt19937_64& rng, i64 radius) {
  for (;;) {
    const EisensteinInt x = random_nonzero(rng, radius);
    if (e_norm(x) % 3 != 0) return x;
  }
}

inline VerifyReport verify_reciprocity(u64 seed, u64 n) {
  VerifyReport rep;
  rep.suite = "reciprocity";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<i64> gamma_coord(-2, 2);
  for (u64 i = 0; i < n; ++i) {
    const EisensteinInt alpha = random_nonzero(rng, 15);
    const EisensteinInt beta1 = random_coprime_to_three(rng, 40);
    const EisensteinInt gamma{gamma_coord(rng), gamma_coord(rng)};
    const EisensteinInt beta2 = e_add(beta1, e_mul(e_scale(alpha, 27), gamma));
    ++rep.samples;
    if (!reciprocity_invariance_check(alpha, beta1, beta2)) {
      note_failure(rep, "alpha=" + show(alpha) + " beta1=" + show(beta1) +
                            " beta2=" + show(beta2));
    }
  }
  return rep;
}

// Sampling helper shared by the two lowering suites: primes p = 1 mod 3 up
// to the bound whose quadratic character of -d matches `want_square`.
inline VerifyReport verify_lowering(u64 seed, u64 n, u64 d, bool want_square) {
  VerifyReport rep;
  rep.suite = want_square ? "lowering-split" : "lowering-inert";
  std::mt19937_64 rng(seed);
  std::vector<u64> pool;
  for (const u64 p : primes_in_range(5, 10000)) {
    if (p % 3 != 1 || d % p == 0) continue;
    const bool square = pow_mod(p - d % p, (p - 1) / 2, p) == 1;
    if (square == want_square) pool.push_back(p);
  }
  if (pool.empty()) throw ConfigError("lowering suite: no primes in the sample pool");
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (u64 i = 0; i < n; ++i) {
    const u64 p = pool[pick(rng)];
    const u64 omega = primitive_cube_root(p);
    EisensteinInt alpha{0, 0};
    for (;;) {
      alpha = random_nonzero(rng, 30);
      if (linear_mod(alpha.a, alpha.b, omega, p) != 0 &&
          linear_mod(alpha.a, alpha.b, mul_mod(omega, omega, p), p) != 0)
        break;
    }
    ++rep.samples;
    const bool ok = want_square ? lowering_split_check(p, d, alpha)
                                : lowering_inert_check(p, d, alpha);
    if (!ok) {
      note_failure(rep, "p=" + std::to_string(p) + " d=" + std::to_string(d) +
                            " alpha=" + show(alpha));
    }
  }
  return rep;
}

inline ScanConfig suite_scan_config(u64 d, u64 x_max) {
  ScanConfig cfg;
  cfg.d = d;
  cfg.f = 1;
  cfg.x_max = x_max;
  cfg.m = 3;
  cfg.mode = ScanMode::Both;
  return cfg;
}

inline VerifyReport verify_galois_orbit(u64 n, u64 d) {
  VerifyReport rep;
  rep.suite = "galois-orbit";
  for (const SpinRecord& rec : run_scan(suite_scan_config(d, n))) {
    ++rep.samples;
    const SpinEmbedding e = embed(rec.p, rec.d, rec.f);
    const auto orbit = galois_orbit(e);
    const unsigned k = rec.spin_k.value();
    unsigned counts[3] = {0, 0, 0};
    for (const auto& v : orbit) ++counts[v.exponent()];
    const bool multiset_ok =
        k == 0 ? counts[0] == 4
               : counts[0] == 0 && counts[k] == 2 && counts[3 - k] == 2;
    // orbit sum as an algebraic integer: 4 when trivial, -2 otherwise
    const i64 A = i64(counts[0]) - i64(counts[2]);
    const i64 B = i64(counts[1]) - i64(counts[2]);
    const bool sum_ok = B == 0 && A == (k == 0 ? 4 : -2);
    if (!multiset_ok || !sum_ok)
      note_failure(rep, "p=" + std::to_string(rec.p) + " k=" + std::to_string(k) +
                            " counts=(" + std::to_string(counts[0]) + "," +
                            std::to_string(counts[1]) + "," + std::to_string(counts[2]) +
                            ")");
  }
  return rep;
}

inline VerifyReport verify_unit_independence(u64 n, u64 d) {
  VerifyReport rep;
  rep.suite = "unit-independence";
  for (const SpinRecord& rec : run_scan(suite_scan_config(d, n))) {
    ++rep.samples;
    const SpinEmbedding canonical = embed(rec.p, rec.d, rec.f);
    const unsigned k = spin_symbol(canonical).exponent();
    for (const OrderElement& u : unit_orbit(canonical.kappa)) {
      const SpinEmbedding e = embed_from_kappa(rec.p, rec.d, rec.f, u);
      if (spin_symbol(e).exponent() != k) {
        note_failure(rep, "p=" + std::to_string(rec.p) + " kappa=(" + std::to_string(u.a) +
                              "," + std::to_string(u.b) + ")");
        break;
      }
    }
  }
  return rep;
}

inline VerifyReport verify_spin_ap(u64 n, u64 d) {
  VerifyReport rep;
  rep.suite = "spin-ap";
  const auto curve = cm_reference_curve(d);
  for (const SpinRecord& rec : run_scan(suite_scan_config(d, n))) {
    ++rep.samples;
    const bool spin_trivial = rec.spin_k.value() == 0;
    const auto candidates = ap_cm_candidates(rec.p, rec.d, rec.f);
    bool ok = true;
    for (const i64 t : candidates) {
      if (is_mth_power_residue(t, rec.p, 3) != spin_trivial) ok = false;
    }
    if (rec.p <= 10000 && curve) {
      const i64 naive = ap_naive(*curve, rec.p);
      bool in_orbit = false;
      for (const i64 t : candidates) in_orbit |= (t == naive);
      if (!in_orbit) ok = false;
      if (rec.ap && *rec.ap != naive) ok = false;
    }
    if (!ok) note_failure(rep, "p=" + std::to_string(rec.p));
  }
  return rep;
}

inline VerifyReport verify_lsplit2(u64 n, u64 d) {
  VerifyReport rep;
  rep.suite = "lsplit2";
  for (const SpinRecord& rec : run_scan(suite_scan_config(d, n))) {
    ++rep.samples;
    const SpinEmbedding e = embed(rec.p, rec.d, rec.f);
    const bool cube = kappa_cube_mod_conjugate(e);
    if (cube != (rec.spin_k.value() == 0))
      note_failure(rep, "p=" + std::to_string(rec.p));
  }
  return rep;
}

inline VerifyReport verify_magic_crosscheck(u64 n, u64 d) {
  VerifyReport rep;
  rep.suite = "magic-crosscheck";
  const auto curve = cm_reference_curve(d);
  if (!curve) throw ConfigError("magic-crosscheck: no reference curve for d");
  for (const u64 p : primes_in_range(5, n + 1)) {
    if (d % p == 0 || p % 3 == 0) continue;
    const auto split = try_split_prime(p, d, 1);
    if (!split) continue;
    // skip bad reduction of the reference model
    const u64 A = mod_i64(curve->A, p), B = mod_i64(curve->B, p);
    const u64 disc = add_mod(mul_mod(4, mul_mod(A, mul_mod(A, A, p), p), p),
                             mul_mod(27, mul_mod(B, B, p), p), p);
    if (disc == 0) continue;
    ++rep.samples;
    const i64 naive = ap_naive(*curve, p);
    bool in_orbit = false;
    for (const i64 t : ap_cm_candidates(p, d, 1)) in_orbit |= (t == naive);
    bool ok = in_orbit;
    if (d == 1 && ap_exact_d1(p) != naive) ok = false;
    if (!ok)
      note_failure(rep, "p=" + std::to_string(p) + " ap_naive=" + std::to_string(naive));
  }
  return rep;
}

}  // namespace detail

// Runs one named suite. n = 0 picks the suite's default size (sample count
// for the randomized suites, prime bound for the exhaustive ones).
inline VerifyReport run_verify(const std::string& suite, u64 seed, u64 n, u64 d = 1) {
  if (suite == "reciprocity") return detail::verify_reciprocity(seed, n ? n : 1000);
  if (suite == "lowering-split") return detail::verify_lowering(seed, n ? n : 200, d, true);
  if (suite == "lowering-inert") return detail::verify_lowering(seed, n ? n : 200, d, false);
  if (suite == "galois-orbit") return detail::verify_galois_orbit(n ? n : 100000, d);
  if (suite == "unit-independence")
    return detail::verify_unit_independence(n ? n : 100000, d);
  if (suite == "spin-ap") return detail::verify_spin_ap(n ? n : 100000, d);
  if (suite == "lsplit2") return detail::verify_lsplit2(n ? n : 100000, d);
  if (suite == "magic-crosscheck") return detail::verify_magic_crosscheck(n ? n : 10000, d);
  throw ConfigError("unknown verify suite: " + suite);
}

}  // namespace cubicspin
