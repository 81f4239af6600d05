#pragma once

// Degree-1 primes of the biquadratic field Q(sqrt(-d), zeta_3) realized as
// residue homomorphisms into F_p, and the cubic spin symbol evaluated
// through them.
//
// A prime p = 1 mod 3, coprime to 6 d f and represented as p = a^2 + D b^2
// (D = f^2 d) determines kappa = a + b sqrt(-D). A prime of the biquadratic
// field above (kappa) corresponds to a ring homomorphism fixed by two
// images: sqrt(-D) -> r with a + b r = 0 mod p (so the map kills kappa),
// and zeta_3 -> omega. The spin symbol of that prime is the cubic class of
// the image of conj(kappa) = a - b sqrt(-D).
//
// The four Galois conjugates of the prime are the homomorphisms
// (r, omega), (-r, omega), (r, omega^2), (-r, omega^2); the ones sending
// sqrt(-D) to -r lie above (conj(kappa)) and take kappa as the symbol
// argument instead.

#include <array>
#include <cstdint>

#include "cubicspin/arith.hpp"
#include "cubicspin/eisenstein.hpp"
#include "cubicspin/errors.hpp"
#include "cubicspin/quad_order.hpp"

namespace cubicspin {

struct SpinEmbedding {
  u64 p = 0;
  u64 d = 1;
  u64 f = 1;
  OrderElement kappa;  // norm p
  Residue r;           // image of sqrt(-D); a + b r = 0 mod p
  Residue omega;       // image of zeta_3, the least primitive cube root
};

using SpinValue = CubeClass;  // never Zero for a valid embedding

namespace detail {

inline void check_embed_filters(u64 p, u64 d, u64 f) {
  if (p % 3 != 1) throw PreconditionViolated("embed: p != 1 mod 3");
  if (p < 5 || p % 2 == 0 || d % p == 0 || f % p == 0)
    throw PreconditionViolated("embed: p must be coprime to 6 d f");
  if (d == 1 && p % 4 != 1) throw PreconditionViolated("embed: d = 1 requires p = 1 mod 12");
}

}  // namespace detail

// Embedding built from an explicit generator kappa (norm must be p). Used
// to check that unit multiples of kappa produce the same symbol.
inline SpinEmbedding embed_from_kappa(u64 p, u64 d, u64 f, const OrderElement& kappa) {
  detail::check_embed_filters(p, d, f);
  if (norm(kappa) != u128(p)) throw BadInput("embed_from_kappa: norm(kappa) != p");
  const u64 D = kappa.D;
  const auto root = sqrt_mod(p - D % p, p);
  if (!root) throw NoRoot("embed: -D is not a square mod p");
  u64 r = *root;
  if (linear_mod(kappa.a, kappa.b, r, p) != 0) r = p - r;
  if (linear_mod(kappa.a, kappa.b, r, p) != 0)
    throw InternalInconsistency("embed: no root of -D kills kappa");
  return SpinEmbedding{p, d, f, kappa, Residue{r, p}, Residue{primitive_cube_root(p), p}};
}

// Canonical embedding for p: kappa from the canonical-quadrant splitting,
// r the root killing it, omega the least primitive cube root.
inline SpinEmbedding embed(u64 p, u64 d, u64 f) {
  detail::check_embed_filters(p, d, f);
  return embed_from_kappa(p, d, f, split_prime(p, d, f).kappa);
}

// [p-frak] = cubic class of the image of conj(kappa); in {1, zeta, zeta^2}.
inline SpinValue spin_symbol(const SpinEmbedding& e) {
  const u64 t = linear_mod(e.kappa.a, -e.kappa.b, e.r.value, e.p);
  const CubeClass k = cube_class(t, e.p, e.omega.value);
  if (k.is_zero()) throw InternalInconsistency("spin_symbol: symbol vanished");
  return k;
}

// The four conjugate symbol values, computed independently through the four
// homomorphisms in the order (r, w), (-r, w), (r, w^2), (-r, w^2). Each
// homomorphism takes the generator it kills and evaluates the conjugate
// generator; the class is read against that homomorphism's own zeta-image.
// The resulting multiset is {k, k, -k, -k}.
inline std::array<SpinValue, 4> galois_orbit(const SpinEmbedding& e) {
  const u64 p = e.p;
  const u64 w2 = mul_mod(e.omega.value, e.omega.value, p);
  const std::array<std::pair<u64, u64>, 4> homs{{
      {e.r.value, e.omega.value},
      {p - e.r.value, e.omega.value},
      {e.r.value, w2},
      {p - e.r.value, w2},
  }};
  std::array<SpinValue, 4> out{CubeClass::root(0), CubeClass::root(0), CubeClass::root(0),
                               CubeClass::root(0)};
  for (std::size_t i = 0; i < homs.size(); ++i) {
    const auto [s, w] = homs[i];
    u64 t;
    if (linear_mod(e.kappa.a, e.kappa.b, s, p) == 0) {
      t = linear_mod(e.kappa.a, -e.kappa.b, s, p);  // above (kappa): evaluate conj
    } else if (linear_mod(e.kappa.a, -e.kappa.b, s, p) == 0) {
      t = linear_mod(e.kappa.a, e.kappa.b, s, p);  // above (conj kappa): evaluate kappa
    } else {
      throw InternalInconsistency("galois_orbit: homomorphism kills neither generator");
    }
    const u64 v = pow_mod(t, (p - 1) / 3, p);
    if (v == 1)
      out[i] = CubeClass::root(0);
    else if (v == w)
      out[i] = CubeClass::root(1);
    else if (v == mul_mod(w, w, p))
      out[i] = CubeClass::root(2);
    else
      throw InternalInconsistency("galois_orbit: value is not a power of the zeta-image");
  }
  return out;
}

// Whether kappa maps to a cube under the homomorphism above the conjugate
// ideal (sqrt(-D) -> -r). Equivalent to spin_symbol(e) being trivial.
inline bool kappa_cube_mod_conjugate(const SpinEmbedding& e) {
  const u64 t = linear_mod(e.kappa.a, e.kappa.b, e.p - e.r.value, e.p);
  if (t == 0) throw InternalInconsistency("kappa_cube_mod_conjugate: image vanished");
  return pow_mod(t, (e.p - 1) / 3, e.p) == 1;
}

namespace detail {

// Degree-1 prime of Z[zeta] above p with zeta-image w0, via gcd(p, zeta - w0).
inline EisensteinInt eisenstein_prime_above(u64 p, u64 w0) {
  const EisensteinInt pi =
      e_gcd(EisensteinInt{static_cast<i64>(p), 0}, EisensteinInt{-static_cast<i64>(w0), 1});
  if (e_norm(pi) != u128(p))
    throw InternalInconsistency("eisenstein_prime_above: gcd norm != p");
  return pi;
}

// Class j with value = w0^j among {1, w0, w0^2}.
inline unsigned match_power(u64 value, u64 w0, u64 p, const char* what) {
  if (value == 1) return 0;
  if (value == w0) return 1;
  if (value == mul_mod(w0, w0, p)) return 2;
  throw InternalInconsistency(what);
}

}  // namespace detail

// Split field-lowering identity. For p = 1 mod 3 with -d a square mod p,
// the prime of Q(zeta_3) above p with zeta-image w0 splits into the two
// degree-1 primes of the biquadratic field with homomorphisms (r, w0) and
// (-r, w0). The product of the two conjugate symbols of alpha must equal
// the square of the symbol one floor down. Checked for both choices of w0.
inline bool lowering_split_check(u64 p, u64 d, const EisensteinInt& alpha) {
  if (p % 3 != 1) throw PreconditionViolated("lowering_split_check: p != 1 mod 3");
  const auto rq = sqrt_mod(p - d % p, p);
  if (!rq) throw PreconditionViolated("lowering_split_check: -d is not a square mod p");
  const u64 omega = primitive_cube_root(p);
  for (const u64 w0 : {omega, mul_mod(omega, omega, p)}) {
    const u64 x = linear_mod(alpha.a, alpha.b, w0, p);
    if (x == 0) throw PreconditionViolated("lowering_split_check: alpha not coprime to p");
    // upstairs: the two conjugate primes share the zeta-image w0 and differ
    // only in the sqrt(-d) image, which alpha does not involve; accumulate
    // the product of their symbol classes
    unsigned lhs = 0;
    for (int side = 0; side < 2; ++side) {
      const u64 v = pow_mod(x, (p - 1) / 3, p);
      lhs += detail::match_power(v, w0, p, "lowering_split_check: bad upstairs value");
    }
    // downstairs: the honest symbol at the prime of Z[zeta] above p
    const EisensteinInt pi = detail::eisenstein_prime_above(p, w0);
    const CubeClass down = cubic_symbol(alpha, pi);
    if (down.is_zero())
      throw InternalInconsistency("lowering_split_check: downstairs symbol vanished");
    if (lhs % 3 != (2 * down.exponent()) % 3) return false;
  }
  return true;
}

// Inert field-lowering identity. For p = 1 mod 3 with -d a nonresidue mod
// p, the prime of Q(zeta_3) above p stays inert upstairs with residue field
// F_p^2 = F_p(sqrt(-d)); alpha^((p^2-1)/3) computed there must equal the
// square of the downstairs symbol.
inline bool lowering_inert_check(u64 p, u64 d, const EisensteinInt& alpha) {
  if (p % 3 != 1) throw PreconditionViolated("lowering_inert_check: p != 1 mod 3");
  const u64 n = sub_mod(0, d % p, p);
  if (n == 0 || pow_mod(n, (p - 1) / 2, p) == 1)
    throw PreconditionViolated("lowering_inert_check: -d is a square mod p");
  const u64 omega = primitive_cube_root(p);
  for (const u64 w0 : {omega, mul_mod(omega, omega, p)}) {
    const u64 x = linear_mod(alpha.a, alpha.b, w0, p);
    if (x == 0) throw PreconditionViolated("lowering_inert_check: alpha not coprime to p");
    const Fp2Element big = fp2_pow(fp2_make(x, 0, p, n), (u128(p) * p - 1) / 3);
    if (big.y != 0)
      throw InternalInconsistency("lowering_inert_check: value left the base field");
    const unsigned lhs = detail::match_power(big.x, w0, p, "lowering_inert_check: bad value");
    const EisensteinInt pi = detail::eisenstein_prime_above(p, w0);
    const CubeClass down = cubic_symbol(alpha, pi);
    if (down.is_zero())
      throw InternalInconsistency("lowering_inert_check: downstairs symbol vanished");
    if (lhs != (2 * down.exponent()) % 3) return false;
  }
  return true;
}

}  // namespace cubicspin
