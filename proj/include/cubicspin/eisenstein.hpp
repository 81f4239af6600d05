#pragma once

// Arithmetic in Z[zeta_3] and cubic residue symbols at arbitrary moduli
// coprime to 3.
//
// Conventions, fixed once and used everywhere:
//   * elements are a + b*zeta with zeta^2 = -1 - zeta;
//   * norm(a + b zeta) = a^2 - a b + b^2, conjugation (a, b) -> (a - b, -b);
//   * the six units are +-1, +-zeta, +-zeta^2; zeta_6 = 1 + zeta generates
//     them, multiplication by zeta_6 is (a, b) -> (a - b, a);
//   * the primary associate of an element coprime to 3 is the unique
//     associate congruent to 1 mod 3 (the six units are distinct mod 3);
//   * the ramified prime above 3 is lambda = 1 - zeta.
//
// The cubic symbol (alpha / beta) for beta coprime to 3 is evaluated by
// factoring the norm of beta (trial division, then rho), splitting beta into
// primes of Z[zeta]:
//   * at a degree-1 prime pi of norm p = 1 mod 3, reduce alpha through the
//     residue map zeta -> w (w the root of x^2+x+1 killed by pi) and read
//     off alpha^((p-1)/3) against powers of w;
//   * at an inert rational prime q = 2 mod 3, exponentiate alpha to
//     (q^2-1)/3 in F_q(zeta) directly on the (1, zeta) basis;
// and the classes multiply over the factorization.

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "cubicspin/arith.hpp"
#include "cubicspin/errors.hpp"

namespace cubicspin {

struct EisensteinInt {
  i64 a = 0;
  i64 b = 0;  // a + b*zeta
  friend constexpr bool operator==(const EisensteinInt&, const EisensteinInt&) = default;
};

namespace detail {

constexpr i64 checked_i64(i128 v, const char* what) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN)) throw std::overflow_error(what);
  return static_cast<i64>(v);
}

}  // namespace detail

constexpr EisensteinInt e_add(const EisensteinInt& x, const EisensteinInt& y) {
  return {x.a + y.a, x.b + y.b};
}

constexpr EisensteinInt e_sub(const EisensteinInt& x, const EisensteinInt& y) {
  return {x.a - y.a, x.b - y.b};
}

constexpr EisensteinInt e_neg(const EisensteinInt& x) { return {-x.a, -x.b}; }

constexpr EisensteinInt e_conj(const EisensteinInt& x) { return {x.a - x.b, -x.b}; }

constexpr EisensteinInt e_mul(const EisensteinInt& x, const EisensteinInt& y) {
  // (a1 + b1 z)(a2 + b2 z) = (a1 a2 - b1 b2) + (a1 b2 + a2 b1 - b1 b2) z
  const i128 a = i128(x.a) * y.a - i128(x.b) * y.b;
  const i128 b = i128(x.a) * y.b + i128(x.b) * y.a - i128(x.b) * y.b;
  return {detail::checked_i64(a, "e_mul: coordinate overflow"),
          detail::checked_i64(b, "e_mul: coordinate overflow")};
}

constexpr EisensteinInt e_scale(const EisensteinInt& x, i64 c) {
  return {detail::checked_i64(i128(x.a) * c, "e_scale: overflow"),
          detail::checked_i64(i128(x.b) * c, "e_scale: overflow")};
}

// a^2 - a b + b^2 >= 0, exact in 128 bits
constexpr u128 e_norm(const EisensteinInt& x) {
  const i128 n = i128(x.a) * x.a - i128(x.a) * x.b + i128(x.b) * x.b;
  return static_cast<u128>(n);
}

constexpr bool e_is_zero(const EisensteinInt& x) { return x.a == 0 && x.b == 0; }

constexpr bool e_is_unit(const EisensteinInt& x) { return e_norm(x) == 1; }

constexpr std::array<EisensteinInt, 6> eisenstein_units() {
  return {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {-1, -1}, {1, 1}}};
}

// Quotient and remainder with norm(r) < norm(y): round each coordinate of
// x * conj(y) / norm(y) to the nearest integer. The fractional parts are at
// most 1/2 each, so norm(r) <= (3/4) norm(y).
inline std::pair<EisensteinInt, EisensteinInt> e_divrem(const EisensteinInt& x,
                                                        const EisensteinInt& y) {
  if (e_is_zero(y)) throw DivisionByZero("e_divrem: division by zero");
  // x * conj(y) on the (1, zeta) basis
  const i128 na = i128(x.a) * (y.a - y.b) + i128(x.b) * y.b;
  const i128 nb = i128(x.b) * y.a - i128(x.a) * y.b;
  const i128 N = i128(e_norm(y));
  auto round_div = [](i128 num, i128 den) -> i64 {
    // nearest integer, den > 0
    const i128 two = 2;
    i128 q = (two * num + (num >= 0 ? den : -den)) / (two * den);
    return detail::checked_i64(q, "e_divrem: quotient overflow");
  };
  const EisensteinInt q{round_div(na, N), round_div(nb, N)};
  const EisensteinInt r = e_sub(x, e_mul(q, y));
  if (e_norm(r) >= e_norm(y))
    throw InternalInconsistency("e_divrem: remainder norm did not shrink");
  return {q, r};
}

inline bool e_divides(const EisensteinInt& d, const EisensteinInt& x) {
  return e_is_zero(e_divrem(x, d).second);
}

// Unique associate congruent to 1 mod 3; requires norm(x) coprime to 3.
inline EisensteinInt primary_associate(const EisensteinInt& x) {
  if (e_norm(x) % 3 == 0) throw NotCoprimeToThree("primary_associate: 3 | norm");
  for (const auto& u : eisenstein_units()) {
    const EisensteinInt c = e_mul(u, x);
    if (((c.a % 3) + 3) % 3 == 1 && c.b % 3 == 0) return c;
  }
  throw InternalInconsistency("primary_associate: no associate = 1 mod 3");
}

// Deterministic associate for elements not coprime to 3: the one in the
// sextant 0 <= b < a (rotate by zeta_6 until it lands there).
inline EisensteinInt canonical_associate(EisensteinInt x) {
  if (e_is_zero(x)) return x;
  for (int i = 0; i < 6; ++i) {
    if (x.b >= 0 && x.b < x.a) return x;
    x = EisensteinInt{x.a - x.b, x.a};  // multiply by zeta_6 = 1 + zeta
  }
  throw InternalInconsistency("canonical_associate: no sextant hit");
}

// Euclidean gcd, normalized to the primary associate when coprime to 3 and
// to the canonical sextant associate otherwise. e_gcd(x, 0) normalizes x.
inline EisensteinInt e_gcd(EisensteinInt x, EisensteinInt y) {
  while (!e_is_zero(y)) {
    const auto [q, r] = e_divrem(x, y);
    (void)q;
    x = y;
    y = r;
  }
  if (e_is_zero(x)) return x;
  return e_norm(x) % 3 == 0 ? canonical_associate(x) : primary_associate(x);
}

// ---------------------------------------------------------------------------
// factorization
// ---------------------------------------------------------------------------

struct EisensteinFactorization {
  EisensteinInt unit{1, 0};
  // primes with positive exponent: lambda as {1,-1}; inert rationals as
  // {q, 0}; degree-1 primes as primary associates
  std::vector<std::pair<EisensteinInt, unsigned>> factors;
};

namespace detail {

// exact division assuming d | x
inline EisensteinInt e_exact_div(const EisensteinInt& x, const EisensteinInt& d) {
  const auto [q, r] = e_divrem(x, d);
  if (!e_is_zero(r)) throw InternalInconsistency("e_exact_div: not divisible");
  return q;
}

}  // namespace detail

// Deterministic prime factorization; product of unit and factors
// reconstructs the input. Norm must stay below 2^63.
inline EisensteinFactorization e_factor(EisensteinInt x) {
  if (e_is_zero(x)) throw BadInput("e_factor: zero has no factorization");
  const u128 nw = e_norm(x);
  if (nw >= (u128(1) << 63)) throw std::overflow_error("e_factor: norm too large");
  EisensteinFactorization out;
  for (const auto& [ell, e_norm_exp] : factor_u64(static_cast<u64>(nw))) {
    if (ell == 3) {
      const EisensteinInt lambda{1, -1};
      unsigned e = 0;
      while (e_divides(lambda, x)) {
        x = detail::e_exact_div(x, lambda);
        ++e;
      }
      if (e != e_norm_exp)
        throw InternalInconsistency("e_factor: lambda valuation mismatch");
      out.factors.emplace_back(lambda, e);
    } else if (ell % 3 == 2) {
      // inert rational prime, each division removes ell^2 from the norm
      if (e_norm_exp % 2 != 0)
        throw InternalInconsistency("e_factor: odd inert valuation");
      const unsigned e = e_norm_exp / 2;
      const EisensteinInt q{static_cast<i64>(ell), 0};
      for (unsigned i = 0; i < e; ++i) x = detail::e_exact_div(x, q);
      out.factors.emplace_back(q, e);
    } else {
      // split: ell = pi * conj(pi) with pi = gcd(ell, zeta - w)
      const u64 w = primitive_cube_root(ell);
      const EisensteinInt pi =
          e_gcd(EisensteinInt{static_cast<i64>(ell), 0},
                EisensteinInt{-static_cast<i64>(w), 1});
      if (e_norm(pi) != u128(ell))
        throw InternalInconsistency("e_factor: gcd did not isolate a prime above ell");
      const EisensteinInt pib = primary_associate(e_conj(pi));
      unsigned e1 = 0, e2 = 0;
      while (e_divides(pi, x)) {
        x = detail::e_exact_div(x, pi);
        ++e1;
      }
      while (e_divides(pib, x)) {
        x = detail::e_exact_div(x, pib);
        ++e2;
      }
      if (e1 + e2 != e_norm_exp)
        throw InternalInconsistency("e_factor: split valuation mismatch");
      if (e1 > 0) out.factors.emplace_back(pi, e1);
      if (e2 > 0) out.factors.emplace_back(pib, e2);
    }
  }
  if (!e_is_unit(x)) throw InternalInconsistency("e_factor: non-unit cofactor left");
  out.unit = x;
  return out;
}

// ---------------------------------------------------------------------------
// cubic residue symbols
// ---------------------------------------------------------------------------

namespace detail {

// Class of alpha at the degree-1 prime pi (norm p = 1 mod 3): reduce through
// zeta -> w with w = -pi.a / pi.b mod p, then match alpha^((p-1)/3) against
// powers of w.
inline CubeClass cubic_class_at_degree1(const EisensteinInt& alpha, const EisensteinInt& pi,
                                        u64 p) {
  const u64 vb = mod_i64(pi.b, p);
  const u64 va = mod_i64(pi.a, p);
  if (vb == 0) throw InternalInconsistency("degree-1 prime with b = 0 mod p");
  const u64 w = mul_mod(sub_mod(0, va, p), inv_mod(vb, p), p);
  const u64 x = linear_mod(alpha.a, alpha.b, w, p);
  return cube_class(x, p, w);
}

// (x + y zeta)^exp in F_q(zeta), q = 2 mod 3 inert; zeta^2 = -1 - zeta.
struct FqZeta {
  u64 x, y;
};

inline FqZeta fqzeta_mul(const FqZeta& u, const FqZeta& v, u64 q) {
  const u64 bb = mul_mod(u.y, v.y, q);
  const u64 x = sub_mod(mul_mod(u.x, v.x, q), bb, q);
  const u64 y = sub_mod(add_mod(mul_mod(u.x, v.y, q), mul_mod(u.y, v.x, q), q), bb, q);
  return {x, y};
}

inline CubeClass cubic_class_at_inert(const EisensteinInt& alpha, u64 q) {
  FqZeta base{mod_i64(alpha.a, q), mod_i64(alpha.b, q)};
  if (base.x == 0 && base.y == 0) return CubeClass::zero();
  FqZeta r{1, 0};
  u128 exp = (u128(q) * q - 1) / 3;
  while (exp > 0) {
    if (exp & 1) r = fqzeta_mul(r, base, q);
    base = fqzeta_mul(base, base, q);
    exp >>= 1;
  }
  if (r.x == 1 && r.y == 0) return CubeClass::root(0);
  if (r.x == 0 && r.y == 1) return CubeClass::root(1);
  if (r.x == q - 1 && r.y == q - 1) return CubeClass::root(2);  // zeta^2 = -1 - zeta
  throw InternalInconsistency("inert symbol value is not a cube root of unity");
}

}  // namespace detail

// The cubic residue symbol (alpha / beta), multiplicative over the prime
// factorization of (beta); Zero when alpha shares a factor with beta.
// Requires beta coprime to 3.
inline CubeClass cubic_symbol(const EisensteinInt& alpha, const EisensteinInt& beta) {
  if (e_is_zero(beta)) throw BadModulus("cubic_symbol: zero modulus");
  if (e_norm(beta) % 3 == 0) throw BadModulus("cubic_symbol: 3 | norm(beta)");
  CubeClass acc = CubeClass::root(0);
  const EisensteinFactorization fact = e_factor(beta);
  for (const auto& [pi, e] : fact.factors) {
    CubeClass cls = CubeClass::root(0);
    if (pi.b == 0) {
      cls = detail::cubic_class_at_inert(alpha, static_cast<u64>(pi.a));
    } else {
      const u128 np = e_norm(pi);
      cls = detail::cubic_class_at_degree1(alpha, pi, static_cast<u64>(np));
    }
    if (cls.is_zero()) return CubeClass::zero();
    for (unsigned i = 0; i < e; ++i) acc = acc * cls;
  }
  return acc;
}

// True when the symbols (alpha / beta1) and (alpha / beta2) agree; the two
// moduli must be congruent mod 27 alpha and coprime to 3.
inline bool reciprocity_invariance_check(const EisensteinInt& alpha,
                                         const EisensteinInt& beta1,
                                         const EisensteinInt& beta2) {
  if (e_norm(beta1) % 3 == 0 || e_norm(beta2) % 3 == 0)
    throw PreconditionViolated("reciprocity check: beta not coprime to 3");
  const EisensteinInt delta = e_sub(beta1, beta2);
  const EisensteinInt mod = e_scale(alpha, 27);
  if (e_is_zero(mod)) {
    if (!e_is_zero(delta))
      throw PreconditionViolated("reciprocity check: beta1 != beta2 with alpha = 0");
  } else if (!e_divides(mod, delta)) {
    throw PreconditionViolated("reciprocity check: beta1 != beta2 mod 27 alpha");
  }
  return cubic_symbol(alpha, beta1) == cubic_symbol(alpha, beta2);
}

}  // namespace cubicspin
