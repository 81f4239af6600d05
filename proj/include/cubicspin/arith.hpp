#pragma once

// Exact arithmetic over F_p and F_p^2 for odd primes p < 2^63, plus
// deterministic primality, segmented prime generation and 64-bit integer
// factorization.
//
// Every value-bearing computation is integer-exact: 128-bit intermediates
// throughout, floating point only as a seed for isqrt (corrected exactly
// afterwards).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "cubicspin/errors.hpp"

namespace cubicspin {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// ---------------------------------------------------------------------------
// modular primitives
// ---------------------------------------------------------------------------

constexpr u64 add_mod(u64 a, u64 b, u64 m) {
  // operands < m < 2^63, the sum cannot wrap
  u64 s = a + b;
  return s >= m ? s - m : s;
}

constexpr u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(u128(a) * b % m);
}

constexpr u64 pow_mod(u64 base, u128 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// inverse modulo a prime p
constexpr u64 inv_mod(u64 a, u64 p) { return pow_mod(a % p, p - 2, p); }

// (a + b*s) mod p for signed a, b; |a|, |b|*s must fit in 127 bits
constexpr u64 linear_mod(i64 a, i64 b, u64 s, u64 p) {
  i128 t = i128(a) + i128(b) * i128(s);
  i128 r = t % i128(p);
  if (r < 0) r += i128(p);
  return static_cast<u64>(r);
}

constexpr u64 mod_i64(i64 a, u64 m) {
  i128 r = i128(a) % i128(m);
  if (r < 0) r += i128(m);
  return static_cast<u64>(r);
}

inline u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && u128(r) * r > n) --r;
  while (u128(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// A canonical residue: value in [0, p).
struct Residue {
  u64 value = 0;
  u64 modulus = 0;
  friend constexpr bool operator==(const Residue&, const Residue&) = default;
};

inline Residue mod_pow(u64 base, u64 exp, u64 p) {
  if (p < 2) throw BadInput("mod_pow: modulus must be >= 2");
  return Residue{pow_mod(base, exp, p), p};
}

// ---------------------------------------------------------------------------
// primality and prime generation
// ---------------------------------------------------------------------------

namespace detail {

inline bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
  u64 x = pow_mod(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

// Deterministic for all n < 2^64: the first twelve primes form a proven
// witness set up to 3.3 * 10^24.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {u64(2), u64(3), u64(5), u64(7), u64(11), u64(13), u64(17),
                u64(19), u64(23), u64(29), u64(31), u64(37)}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {u64(2), u64(3), u64(5), u64(7), u64(11), u64(13), u64(17),
                u64(19), u64(23), u64(29), u64(31), u64(37)}) {
    if (!detail::miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

// Ascending primes in [lo, hi). Segmented: memory O(sqrt(hi) + segment).
inline std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi <= lo) return out;
  if (lo < 2) lo = 2;
  if (hi <= 2) return out;

  const u64 root = isqrt(hi - 1);
  std::vector<bool> small_composite(root + 1, false);
  std::vector<u64> base;
  for (u64 i = 2; i <= root; ++i) {
    if (small_composite[i]) continue;
    base.push_back(i);
    for (u64 j = i * i; j <= root; j += i) small_composite[j] = true;
  }

  constexpr u64 kSegment = u64(1) << 18;
  std::vector<bool> seg;
  for (u64 s = lo; s < hi; s += kSegment) {
    const u64 e = std::min(hi, s + kSegment);
    seg.assign(e - s, false);
    for (u64 q : base) {
      u64 start = ((s + q - 1) / q) * q;
      if (start < q * q) start = q * q;  // q itself stays prime
      for (u64 j = start; j < e; j += q) seg[j - s] = true;
    }
    for (u64 i = s; i < e; ++i) {
      if (!seg[i - s]) out.push_back(i);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// 64-bit factorization: trial division then Brent's cycle rho
// ---------------------------------------------------------------------------

namespace detail {

inline u64 brent_rho(u64 n) {
  // n odd composite, no factor <= 37
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    u64 q = 1;
    u64 ys = 0;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return add_mod(mul_mod(v, v, n), c % n, n); };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      while (k < r && d == 1) {
        ys = y;
        const u64 lim = std::min(m, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
        k += m;
      }
      r <<= 1;
    } while (d == 1);
    if (d == n) {
      d = 1;
      do {
        ys = f(ys);
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

inline void factor_rec(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const u64 d = brent_rho(n);
  factor_rec(d, primes);
  factor_rec(n / d, primes);
}

}  // namespace detail

// Prime factorization of n >= 1, factors ascending with multiplicities.
inline std::vector<std::pair<u64, unsigned>> factor_u64(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  if (n <= 1) return out;
  constexpr u64 kTrialBound = 1000000;
  for (u64 q = 2; q <= kTrialBound && u128(q) * q <= n; q == 2 ? q = 3 : q += 2) {
    if (n % q) continue;
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (n > 1) {
    std::vector<u64> rest;
    detail::factor_rec(n, rest);
    std::sort(rest.begin(), rest.end());
    for (std::size_t i = 0; i < rest.size();) {
      std::size_t j = i;
      while (j < rest.size() && rest[j] == rest[i]) ++j;
      out.emplace_back(rest[i], static_cast<unsigned>(j - i));
      i = j;
    }
  }
  return out;
}

inline bool is_squarefree(u64 n) {
  if (n == 0) return false;
  for (const auto& [q, e] : factor_u64(n)) {
    (void)q;
    if (e > 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// square roots and cube roots of unity mod p
// ---------------------------------------------------------------------------

// Least square root of a mod an odd prime p, if a is a square.
// Tonelli-Shanks; absence is a value, not an error.
inline std::optional<u64> sqrt_mod(u64 a, u64 p) {
  a %= p;
  if (a == 0) return u64(0);
  if (pow_mod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  u64 r;
  if (p % 4 == 3) {
    r = pow_mod(a, (p + 1) / 4, p);
  } else {
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    u64 z = 2;
    while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = static_cast<u64>(s);
    u64 c = pow_mod(z, q, p);
    u64 t = pow_mod(a, q, p);
    r = pow_mod(a, (q + 1) / 2, p);
    while (t != 1) {
      u64 i = 0;
      u64 t2 = t;
      while (t2 != 1) {
        t2 = mul_mod(t2, t2, p);
        ++i;
      }
      u64 b = c;
      for (u64 j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
      m = i;
      c = mul_mod(b, b, p);
      t = mul_mod(t, c, p);
      r = mul_mod(r, b, p);
    }
  }
  return std::min(r, p - r);
}

// Least w != 1 with w^3 = 1 mod p; requires p = 1 mod 3 (p prime).
inline u64 primitive_cube_root(u64 p) {
  if (p % 3 != 1) throw NotOneModThree("primitive_cube_root: p != 1 mod 3");
  const u64 e = (p - 1) / 3;
  for (u64 z = 2;; ++z) {
    const u64 w = pow_mod(z, e, p);
    if (w != 1) return std::min(w, mul_mod(w, w, p));
  }
}

// ---------------------------------------------------------------------------
// cubic residue classes
// ---------------------------------------------------------------------------

// Value of a cubic character: zeta_3^k for k in {0,1,2}, or Zero when the
// argument is not coprime to the modulus.
class CubeClass {
 public:
  static constexpr CubeClass zero() { return CubeClass(-1); }
  static constexpr CubeClass root(unsigned k) { return CubeClass(static_cast<int>(k % 3)); }

  constexpr bool is_zero() const { return k_ < 0; }
  constexpr unsigned exponent() const {
    return is_zero() ? throw InternalInconsistency("CubeClass: exponent of zero")
                     : static_cast<unsigned>(k_);
  }

  friend constexpr CubeClass operator*(CubeClass a, CubeClass b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return root(static_cast<unsigned>(a.k_ + b.k_));
  }
  friend constexpr bool operator==(const CubeClass&, const CubeClass&) = default;

 private:
  constexpr explicit CubeClass(int k) : k_(k) {}
  int k_;  // -1 encodes zero
};

// Cubic residue class of x relative to the primitive cube root omega:
// Zero if p | x, else the unique k with x^((p-1)/3) = omega^k.
inline CubeClass cube_class(u64 x, u64 p, u64 omega) {
  x %= p;
  if (x == 0) return CubeClass::zero();
  const u64 t = pow_mod(x, (p - 1) / 3, p);
  if (t == 1) return CubeClass::root(0);
  if (t == omega) return CubeClass::root(1);
  if (t == mul_mod(omega, omega, p)) return CubeClass::root(2);
  throw InternalInconsistency("cube_class: value matches no power of omega");
}

// ---------------------------------------------------------------------------
// the quadratic extension F_p(s), s^2 = n with n a nonresidue
// ---------------------------------------------------------------------------

inline u64 least_nonresidue(u64 p) {
  for (u64 n = 2;; ++n) {
    if (pow_mod(n, (p - 1) / 2, p) == p - 1) return n;
  }
}

struct Fp2Element {
  u64 x = 0, y = 0;  // x + y*s
  u64 p = 0, n = 0;  // s^2 = n, n a quadratic nonresidue mod p
  friend constexpr bool operator==(const Fp2Element&, const Fp2Element&) = default;
};

// Validates that n has no square root mod p (Euler criterion).
inline Fp2Element fp2_make(u64 x, u64 y, u64 p, u64 n) {
  n %= p;
  if (n == 0 || pow_mod(n, (p - 1) / 2, p) != p - 1)
    throw BadInput("fp2_make: n is a square mod p");
  return Fp2Element{x % p, y % p, p, n};
}

inline Fp2Element fp2_make(u64 x, u64 y, u64 p) {
  return fp2_make(x, y, p, least_nonresidue(p));
}

inline Fp2Element fp2_mul(const Fp2Element& a, const Fp2Element& b) {
  const u64 p = a.p;
  // (x1 + y1 s)(x2 + y2 s) = (x1 x2 + n y1 y2) + (x1 y2 + x2 y1) s
  const u64 x = add_mod(mul_mod(a.x, b.x, p), mul_mod(a.n, mul_mod(a.y, b.y, p), p), p);
  const u64 y = add_mod(mul_mod(a.x, b.y, p), mul_mod(a.y, b.x, p), p);
  return Fp2Element{x, y, p, a.n};
}

inline Fp2Element fp2_pow(Fp2Element e, u128 exp) {
  Fp2Element r{1 % e.p, 0, e.p, e.n};
  while (exp > 0) {
    if (exp & 1) r = fp2_mul(r, e);
    e = fp2_mul(e, e);
    exp >>= 1;
  }
  return r;
}

}  // namespace cubicspin
