#pragma once

// Frobenius traces of CM elliptic curves, two ways: brute-force point
// counting over F_p (the ground-truth oracle, O(p) per prime) and the
// unit orbit of kappa + conj(kappa) coming from the splitting p = a^2 + D b^2.
//
// For y^2 = x^3 - x the trace is pinned exactly: p = a^2 + b^2 with a odd,
// b even and the sign of a fixed by a + b = 1 mod 4 gives a_p = 2a. That
// normalization is classical and is cross-validated against point counting
// in the test suites before being trusted at scale.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cubicspin/arith.hpp"
#include "cubicspin/errors.hpp"
#include "cubicspin/quad_order.hpp"

namespace cubicspin {

// y^2 = x^3 + A x + B
struct CurveShort {
  i64 A = 0;
  i64 B = 0;
};

// y^2 = x^3 - x, CM by Z[i]
constexpr CurveShort curve_d1() { return CurveShort{-1, 0}; }

// Short Weierstrass model with j-invariant j (j != 0, 1728):
// y^2 = x^3 + 3j(1728-j) x + 2j(1728-j)^2; any twist works since the
// consumers only need traces up to sign.
constexpr CurveShort curve_from_j(i64 j) {
  const i64 c = 1728 - j;
  return CurveShort{3 * j * c, 2 * j * c * c};
}

// Reference curve with CM by Z[sqrt(-d)], for the d with class number 1
// in that order. Traces of these curves are candidates for the a_p checks.
inline std::optional<CurveShort> cm_reference_curve(u64 d) {
  switch (d) {
    case 1:
      return curve_d1();
    case 2:
      return curve_from_j(8000);
    case 7:
      return curve_from_j(-3375);
    case 11:
      return curve_from_j(-32768);
    default:
      return std::nullopt;
  }
}

// p + 1 - #E(F_p) by counting points: tabulate the number of square roots
// of every residue, then sweep x. Exact and O(p) time and memory.
inline i64 ap_naive(const CurveShort& c, u64 p) {
  if (p <= 3) throw BadReduction("ap_naive: need p > 3");
  const u64 A = mod_i64(c.A, p);
  const u64 B = mod_i64(c.B, p);
  // discriminant 4A^3 + 27B^2 mod p
  const u64 disc =
      add_mod(mul_mod(4, mul_mod(A, mul_mod(A, A, p), p), p),
              mul_mod(27, mul_mod(B, B, p), p), p);
  if (disc == 0) throw BadReduction("ap_naive: p divides the discriminant");

  std::vector<std::uint8_t> roots(p, 0);
  for (u64 y = 0; y < p; ++y) ++roots[mul_mod(y, y, p)];
  u64 affine = 0;
  for (u64 x = 0; x < p; ++x) {
    const u64 fx = add_mod(mul_mod(x, add_mod(mul_mod(x, x, p), A, p), p), B, p);
    affine += roots[fx];
  }
  // #E = affine + 1 (infinity); a_p = p + 1 - #E
  return static_cast<i64>(p) - static_cast<i64>(affine);
}

// {u kappa + conj(u kappa) : u a unit} = {+-2a}, plus {+-2b} when D = 1.
inline std::vector<i64> ap_cm_candidates(u64 p, u64 d, u64 f) {
  const SplitResult s = split_prime(p, d, f);
  std::vector<i64> out{2 * s.kappa.a, -2 * s.kappa.a};
  if (s.kappa.D == 1) {
    out.push_back(2 * s.kappa.b);
    out.push_back(-2 * s.kappa.b);
  }
  return out;
}

// Exact trace of y^2 = x^3 - x at p = 1 mod 4: a_p = 2a for p = a^2 + b^2,
// a odd, b even, sign of a such that a + b = 1 mod 4.
inline i64 ap_exact_d1(u64 p) {
  if (p <= 3 || p % 4 != 1) throw NonSplit("ap_exact_d1: need p = 1 mod 4, p > 3");
  const SplitResult s = split_prime(p, 1, 1);
  i64 a = s.kappa.a;
  const i64 b = s.kappa.b;  // sign of b is irrelevant mod 4 since b is even
  if ((((a + b) % 4) + 4) % 4 != 1) a = -a;
  return 2 * a;
}

// x = 0 or x^((p-1)/m) = 1 mod p; requires p = 1 mod m.
inline bool is_mth_power_residue(i64 x, u64 p, unsigned m) {
  if (m < 2) throw BadCongruence("is_mth_power_residue: m must be >= 2");
  if (p % m != 1) throw BadCongruence("is_mth_power_residue: p != 1 mod m");
  const u64 v = mod_i64(x, p);
  if (v == 0) return true;
  return pow_mod(v, (p - 1) / m, p) == 1;
}

// Trace data for one prime as the ap-path sees it.
struct ApRecord {
  u64 p = 0;
  std::optional<i64> ap;        // exact value when the sign is pinned (d = 1)
  std::vector<i64> candidates;  // the full unit orbit of traces
  bool cube = false;
  std::map<unsigned, bool> m_power;
};

}  // namespace cubicspin
