// Copyright 2026 The gapforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAPFORGE_ANALYTIC_HPP
#define GAPFORGE_ANALYTIC_HPP

#include <span>
#include <vector>

#include <gmpxx.h>

#include "gapforge/primes.hpp"

namespace gapforge {

using Rational = mpq_class;

inline constexpr long double kEulerGamma = 0.57721566490153286061L;

struct AnalyticConstants {
  long double euler_gamma = kEulerGamma;
  u64 product_truncation = 1'000'000;
};

// prod_{p <= y, p !| M, p !| m} (p - 2)/(p - 1). Zero exactly when p = 2
// takes part, i.e. when M and m are both odd.
Rational mertens_ratio(u64 y, u64 M, u64 m);

// #{z < p <= V : p prime, gcd(m p - 1, P_M(y)) = 1}.
u64 count_Rm_exact(u64 V, u64 m, u64 y, u64 z, u64 M);

// Main term (V - z)/log x * mertens_ratio(y, M, m) of the count above.
double survivor_main_term(u64 V, u64 z, u64 x, u64 y, u64 M, u64 m);

// prod_{2 < p <= truncation, p !| M} p(p - 2)/(p - 1)^2, multiplied from the
// largest prime down.
long double twin_prime_type_product(u64 M, u64 truncation);

// 2 e^{-gamma} U / (m log x log y) * M/phi(M) * prod_{p>2, p!|M} p(p-2)/(p-1)^2
//   * prod_{p>2, p!|M, p|m} (p-1)/(p-2)
double predicted_Rm(u64 U, u64 m, u64 x, u64 y, u64 M, const AnalyticConstants& constants = {});

// #{m <= U : m y-smooth, gcd(m - 1, P_M(y)) = 1}, with gcd(0, n) = n.
u64 count_R0_exact(u64 U, u64 y, u64 M);

// Whether m satisfies the parity restriction: M odd forces m even.
bool parity_compliant(u64 m, u64 M);

struct RmSum {
  double K = 2.0;
  u64 m_lo = 0;       // smallest m with m >= U/(zK)
  u64 m_hi = 0;       // largest m with m < U/z
  u64 measured = 0;   // sum of |R_m| over compliant m in [m_lo, m_hi]
  double bound = 0;   // U M log K / (log x log y phi(M))
};

// |R_m| = #{z < p <= U/m : gcd(m p - 1, P_M(y)) = 1} summed over
// U/(zK) <= m < U/z.
RmSum sum_Rm_measured(double K, u64 U, u64 z, u64 y, u64 M, u64 x);

// --------------------------------------------------------------------------
// Admissible tuples and the local densities attached to them.

struct Tuple {
  u32 k = 0;
  double w = 0.0;
  std::vector<u64> H;  // ascending, distinct
};

// |{h mod p}| < p for every prime p <= k (larger primes cannot be filled).
bool is_admissible(std::span<const u64> H);

// h_i = p_{pi(k)+i} P(w) for i = 1..k, with P(w) = 1 when w < 2.
Tuple admissible_tuple(u32 k, double w);

struct WeightContext {
  u64 m = 1;
  u64 q = 1;
  u64 p0 = 1;
  Tuple H;
  u64 y = 0;
  double w = 0.0;
  u64 M = 1;
};

// #{n mod p : n + h_i q == 0 or m(n + h_i q) == 1 (mod p) for some i}.
u32 omega_mq(u64 p, const WeightContext& ctx);

// p - omega_mq(p).
u64 phi_mq(u64 p, const WeightContext& ctx);

// #{n mod p : p0 + (h_i - h) n == 0 or m(p0 + (h_i - h) n) == 1 (mod p)
// for some i}. A term with h_i == h (mod p) covers every n when its constant
// congruence holds and none otherwise.
u32 omega_prime(u64 p, const WeightContext& ctx, u64 h);

// prod_{p<=y, p!|M} (1 - omega/p)(1 - 1/p)^{-2k} * prod_{p<=y, p|M} (1 - 1/p)^{-k}
//   * prod_{p<=w, p|M} (1 - 1/p)^{1-k}
Rational singular_series_mq(const WeightContext& ctx);

// 2^{-(2k-1)} (phi(M)/M)^k prod_{p>2, p!|M, p|m} (p-2)/(p-1)
//   * prod_{2<p<=w, p!|M} (1 - 1/p)^{2k} (1 - 2/p)^{-1}
Rational singular_series_m(u64 m, u32 k, double w, u64 M);

double to_double(const Rational& q);

}  // namespace gapforge

#endif  // GAPFORGE_ANALYTIC_HPP
