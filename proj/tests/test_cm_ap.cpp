#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "cubicspin/cm_ap.hpp"

using namespace cubicspin;

namespace {

// independent oracle: double loop over (x, y), O(p^2); small p only
i64 ap_double_loop(const CurveShort& c, u64 p) {
  u64 affine = 0;
  for (u64 x = 0; x < p; ++x) {
    const u64 fx = add_mod(mul_mod(x, add_mod(mul_mod(x, x, p), mod_i64(c.A, p), p), p),
                           mod_i64(c.B, p), p);
    for (u64 y = 0; y < p; ++y) {
      if (mul_mod(y, y, p) == fx) ++affine;
    }
  }
  return static_cast<i64>(p) - static_cast<i64>(affine);
}

// the formula a_p = -sum_x legendre(x^3 + Ax + B)
i64 ap_legendre_sum(const CurveShort& c, u64 p) {
  i64 sum = 0;
  for (u64 x = 0; x < p; ++x) {
    const u64 fx = add_mod(mul_mod(x, add_mod(mul_mod(x, x, p), mod_i64(c.A, p), p), p),
                           mod_i64(c.B, p), p);
    if (fx == 0) continue;
    sum += pow_mod(fx, (p - 1) / 2, p) == 1 ? 1 : -1;
  }
  return -sum;
}

}  // namespace

TEST_CASE("ap_naive fixtures", "[cm_ap]") {
  CHECK(ap_naive(curve_d1(), 5) == -2);   // 7 affine points + infinity
  CHECK(ap_naive(curve_d1(), 7) == 0);    // supersingular at p = 3 mod 4
  CHECK(ap_naive(curve_d1(), 13) == 6);   // 13 = 3^2 + 2^2, trace set contains 6
  CHECK_THROWS_AS(ap_naive(curve_d1(), 3), BadReduction);
  CHECK_THROWS_AS(ap_naive(CurveShort{0, 0}, 5), BadReduction);  // singular
}

TEST_CASE("ap_naive agrees with the double-loop count and the character sum", "[cm_ap]") {
  for (u64 p : primes_in_range(5, 200)) {
    const i64 got = ap_naive(curve_d1(), p);
    CHECK(got == ap_double_loop(curve_d1(), p));
    CHECK(got == ap_legendre_sum(curve_d1(), p));
  }
  for (u64 p : primes_in_range(5, 120)) {
    for (const CurveShort c : {CurveShort{1, 1}, CurveShort{-3, 5}, curve_from_j(8000)}) {
      const u64 A = mod_i64(c.A, p), B = mod_i64(c.B, p);
      const u64 disc = add_mod(mul_mod(4, mul_mod(A, mul_mod(A, A, p), p), p),
                               mul_mod(27, mul_mod(B, B, p), p), p);
      if (disc == 0) continue;
      CHECK(ap_naive(c, p) == ap_double_loop(c, p));
    }
  }
}

TEST_CASE("Hasse bound", "[cm_ap]") {
  for (u64 p : primes_in_range(5, 3000)) {
    const i64 ap = ap_naive(curve_d1(), p);
    CHECK(i128(ap) * ap <= i128(4) * p);
  }
}

TEST_CASE("supersingular primes of x^3 - x have trace zero", "[cm_ap]") {
  for (u64 p : primes_in_range(5, 3000)) {
    if (p % 4 == 3) CHECK(ap_naive(curve_d1(), p) == 0);
  }
}

TEST_CASE("ap_cm_candidates", "[cm_ap]") {
  CHECK(ap_cm_candidates(13, 1, 1) == std::vector<i64>{6, -6, 4, -4});
  CHECK(ap_cm_candidates(97, 1, 1) == std::vector<i64>{18, -18, 8, -8});
  CHECK_THROWS_AS(ap_cm_candidates(11, 1, 1), NonSplit);
  // D != 1: only the +-2a pair
  const auto c = ap_cm_candidates(11, 2, 1);  // 11 = 9 + 2
  CHECK(c == std::vector<i64>{6, -6});
}

TEST_CASE("trace candidates square-consistency", "[cm_ap]") {
  for (u64 p : primes_in_range(5, 5000)) {
    if (p % 4 != 1) continue;
    const auto cands = ap_cm_candidates(p, 1, 1);
    REQUIRE(cands.size() == 4);
    // (2a)^2 + (2b)^2 = 4p
    CHECK(cands[0] * cands[0] + cands[2] * cands[2] == i64(4 * p));
    CHECK(cands[0] == -cands[1]);
    CHECK(cands[2] == -cands[3]);
  }
}

TEST_CASE("ap_exact_d1 fixtures and validation against point counting", "[cm_ap]") {
  CHECK(ap_exact_d1(5) == -2);
  CHECK(ap_exact_d1(13) == 6);
  CHECK(ap_exact_d1(97) == 18);
  CHECK_THROWS_AS(ap_exact_d1(7), NonSplit);

  // the normalization rule must reproduce point counting everywhere it is used
  for (u64 p : primes_in_range(5, 10000)) {
    if (p % 4 != 1) continue;
    CHECK(ap_exact_d1(p) == ap_naive(curve_d1(), p));
  }
}

TEST_CASE("ap_naive lands in the CM candidate set for split primes", "[cm_ap]") {
  // executable splitting law for the reference curves of each order
  for (u64 d : {u64(1), u64(2), u64(7), u64(11)}) {
    const auto curve = cm_reference_curve(d);
    REQUIRE(curve.has_value());
    int split_seen = 0;
    for (u64 p : primes_in_range(5, 2500)) {
      if (d % p == 0 || p % 3 == 0) continue;
      const u64 A = mod_i64(curve->A, p), B = mod_i64(curve->B, p);
      const u64 disc = add_mod(mul_mod(4, mul_mod(A, mul_mod(A, A, p), p), p),
                               mul_mod(27, mul_mod(B, B, p), p), p);
      if (disc == 0) continue;
      const auto split = try_split_prime(p, d, 1);
      if (!split) continue;
      ++split_seen;
      const i64 naive = ap_naive(*curve, p);
      const auto cands = ap_cm_candidates(p, d, 1);
      CHECK(std::find(cands.begin(), cands.end(), naive) != cands.end());
    }
    CHECK(split_seen > 20);
  }
}

TEST_CASE("is_mth_power_residue", "[cm_ap]") {
  CHECK_FALSE(is_mth_power_residue(6, 13, 3));  // cubes mod 13 are {0,1,5,8,12}
  CHECK(is_mth_power_residue(0, 13, 3));
  CHECK(is_mth_power_residue(18, 97, 3));  // 18^32 = 1 mod 97
  CHECK_THROWS_AS(is_mth_power_residue(2, 13, 5), BadCongruence);
  CHECK_THROWS_AS(is_mth_power_residue(2, 13, 1), BadCongruence);

  // brute-force enumeration oracle, m in {3, 5}, small p
  for (u64 p : primes_in_range(7, 400)) {
    for (unsigned m : {3u, 5u}) {
      if (p % m != 1) continue;
      std::set<u64> powers;
      for (u64 x = 0; x < p; ++x) powers.insert(pow_mod(x, m, p));
      for (u64 x = 0; x < p; ++x) {
        CHECK(is_mth_power_residue(static_cast<i64>(x), p, m) == (powers.count(x) > 0));
      }
    }
  }

  // negative arguments reduce mod p first
  CHECK(is_mth_power_residue(-1, 13, 3) == is_mth_power_residue(12, 13, 3));
}

TEST_CASE("residuosity is constant on the candidate set", "[cm_ap]") {
  for (u64 p : primes_in_range(13, 20000)) {
    if (p % 12 != 1) continue;
    const auto cands = ap_cm_candidates(p, 1, 1);
    const bool first = is_mth_power_residue(cands[0], p, 3);
    for (const i64 t : cands) CHECK(is_mth_power_residue(t, p, 3) == first);
  }
  for (u64 p : primes_in_range(5, 20000)) {
    if (p % 3 != 1) continue;
    const auto split = try_split_prime(p, 2, 1);
    if (!split) continue;
    const auto cands = ap_cm_candidates(p, 2, 1);
    const bool first = is_mth_power_residue(cands[0], p, 3);
    for (const i64 t : cands) CHECK(is_mth_power_residue(t, p, 3) == first);
  }
}
