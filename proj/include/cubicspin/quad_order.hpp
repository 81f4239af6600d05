#pragma once

// Splitting of rational primes in imaginary quadratic orders of the shape
// Z[sqrt(-D)], D = f^2 d with d squarefree. An odd prime p coprime to 2D
// splits as a principal ideal of the order exactly when p = a^2 + D b^2 has
// a solution, which Cornacchia's algorithm finds or refutes.
//
// Half-integer maximal orders for d = 3 mod 4 are deliberately not modeled:
// representability by the principal form is the membership test every
// consumer needs, and it is decided here exactly.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cubicspin/arith.hpp"
#include "cubicspin/errors.hpp"

namespace cubicspin {

// a + b * sqrt(-D)
struct OrderElement {
  i64 a = 0;
  i64 b = 0;
  u64 D = 1;
  friend constexpr bool operator==(const OrderElement&, const OrderElement&) = default;
};

constexpr OrderElement conjugate(const OrderElement& k) { return {k.a, -k.b, k.D}; }

// a^2 + D b^2, exact
constexpr u128 norm(const OrderElement& k) {
  const i128 a2 = i128(k.a) * k.a;
  const i128 b2 = i128(k.b) * k.b;
  return static_cast<u128>(a2 + i128(k.D) * b2);
}

// Positive (a, b) with a^2 + D b^2 = p, if any; for D = 1 normalized to
// a odd, b even. Absence certifies that p is not represented.
inline std::optional<std::pair<u64, u64>> cornacchia(u64 p, u64 D) {
  if (p == 2) throw BadInput("cornacchia: p = 2 is degenerate");
  if (D == 0 || D >= p) throw BadInput("cornacchia: need 1 <= D < p");

  const auto root = sqrt_mod(p - D % p, p);  // t^2 = -D mod p
  if (!root) return std::nullopt;
  u64 t = *root;
  if (t < p - t) t = p - t;  // seed above p/2

  u64 r0 = p, r1 = t;
  const u64 lim = isqrt(p);
  while (r1 > lim) {
    const u64 r2 = r0 % r1;
    r0 = r1;
    r1 = r2;
  }
  const u64 a = r1;
  const u64 rem = p - a * a;
  if (rem % D != 0) return std::nullopt;
  const u64 b2 = rem / D;
  const u64 b = isqrt(b2);
  if (b * b != b2 || a == 0 || b == 0) return std::nullopt;

  u64 x = a, y = b;
  if (D == 1 && x % 2 == 0) std::swap(x, y);
  return std::make_pair(x, y);
}

struct SplitResult {
  u64 p = 0;
  OrderElement kappa;  // norm exactly p, canonical quadrant a, b > 0
};

// kappa with norm p in Z[sqrt(-D)], D = f^2 d, or nullopt when p is not
// represented by the principal form.
inline std::optional<SplitResult> try_split_prime(u64 p, u64 d, u64 f) {
  if (p < 3 || p % 2 == 0) throw BadInput("split_prime: p must be an odd prime");
  if (d == 0 || f == 0) throw BadInput("split_prime: d, f must be positive");
  if (p % 3 == 0 || d % p == 0 || f % p == 0)
    throw BadInput("split_prime: p must be coprime to 3 d f");
  const u128 D_wide = u128(f) * f * d;
  if (D_wide >= (u128(1) << 62)) throw BadInput("split_prime: f^2 d out of range");
  const u64 D = static_cast<u64>(D_wide);
  if (D >= p) return std::nullopt;  // b >= 1 forces D < p

  const auto ab = cornacchia(p, D);
  if (!ab) return std::nullopt;
  SplitResult res;
  res.p = p;
  res.kappa = OrderElement{static_cast<i64>(ab->first), static_cast<i64>(ab->second), D};
  if (norm(res.kappa) != u128(p))
    throw InternalInconsistency("split_prime: norm(kappa) != p");
  return res;
}

inline SplitResult split_prime(u64 p, u64 d, u64 f) {
  auto res = try_split_prime(p, d, f);
  if (!res) throw NonSplit("split_prime: p is not of the form a^2 + f^2 d b^2");
  return *res;
}

// Orbit of k under the unit group of the order: {+-1} except for
// Z[sqrt(-1)] where it is {+-1, +-i}, i * (a + b i) = -b + a i.
inline std::vector<OrderElement> unit_orbit(const OrderElement& k) {
  std::vector<OrderElement> orbit{k, {-k.a, -k.b, k.D}};
  if (k.D == 1) {
    orbit.push_back({-k.b, k.a, k.D});
    orbit.push_back({k.b, -k.a, k.D});
  }
  return orbit;
}

}  // namespace cubicspin
