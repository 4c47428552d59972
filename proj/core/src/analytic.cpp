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

#include "gapforge/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gapforge {

namespace {

__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

u64 floor_w(double w) { return w < 2.0 ? 0 : static_cast<u64>(std::floor(w)); }

u64 inverse_mod_small(u64 a, u64 p) {
  // extended Euclid on signed 128-bit
  i128 t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    const i128 quotient = r / new_r;
    t -= quotient * new_t;
    std::swap(t, new_t);
    r -= quotient * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw std::invalid_argument("inverse_mod_small: not invertible");
  if (t < 0) t += p;
  return static_cast<u64>(t);
}

Rational pow_q(const Rational& base, u32 e) {
  Rational out{1};
  for (u32 i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

double to_double(const Rational& q) { return q.get_d(); }

bool parity_compliant(u64 m, u64 M) { return (M % 2 == 0) || (m % 2 == 0); }

Rational mertens_ratio(u64 y, u64 M, u64 m) {
  Rational out{1};
  for (u64 p : primes_in_range(0, y)) {
    if (M % p == 0 || (m != 0 && m % p == 0)) continue;
    out *= Rational(static_cast<unsigned long>(p - 2), static_cast<unsigned long>(p - 1));
  }
  out.canonicalize();
  return out;
}

u64 count_Rm_exact(u64 V, u64 m, u64 y, u64 z, u64 M) {
  if (V <= z) return 0;
  const auto small = primes_coprime_to(y, M);
  u64 count = 0;
  for (u64 p : primes_in_range(z, V)) {
    const u128 value = static_cast<u128>(m) * p - 1;
    bool coprime = true;
    for (u64 q : small)
      if (value % q == 0) {
        coprime = false;
        break;
      }
    if (coprime) ++count;
  }
  return count;
}

double survivor_main_term(u64 V, u64 z, u64 x, u64 y, u64 M, u64 m) {
  if (V <= z) return 0.0;
  return static_cast<double>(V - z) / std::log(static_cast<double>(x)) * to_double(mertens_ratio(y, M, m));
}

long double twin_prime_type_product(u64 M, u64 truncation) {
  const auto primes = primes_in_range(2, truncation);
  long double out = 1.0L;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
    const long double p = static_cast<long double>(*it);
    if (M % *it == 0) continue;
    out *= p * (p - 2.0L) / ((p - 1.0L) * (p - 1.0L));
  }
  return out;
}

double predicted_Rm(u64 U, u64 m, u64 x, u64 y, u64 M, const AnalyticConstants& constants) {
  const auto [phi, omega] = totient_and_omega(M);
  (void)omega;
  long double value = 2.0L * std::exp(-constants.euler_gamma) * static_cast<long double>(U) /
                      (static_cast<long double>(m) * std::log(static_cast<long double>(x)) *
                       std::log(static_cast<long double>(y)));
  value *= static_cast<long double>(M) / static_cast<long double>(phi);
  value *= twin_prime_type_product(M, constants.product_truncation);
  if (m > 0)
    for (const auto& f : factorize(m)) {
      if (f.prime == 2 || M % f.prime == 0) continue;
      const long double p = static_cast<long double>(f.prime);
      value *= (p - 1.0L) / (p - 2.0L);
    }
  return static_cast<double>(value);
}

u64 count_R0_exact(u64 U, u64 y, u64 M) {
  const auto small = primes_coprime_to(y, M);
  u64 count = 0;
  for (u64 n : smooth_numbers_up_to(U, y)) {
    const u64 prev = n - 1;
    // gcd(prev, P_M(y)) == 1 iff no listed prime divides prev; gcd(0, P) = P.
    bool coprime = true;
    for (u64 q : small)
      if (prev % q == 0) {
        coprime = false;
        break;
      }
    if (coprime) ++count;
  }
  return count;
}

RmSum sum_Rm_measured(double K, u64 U, u64 z, u64 y, u64 M, u64 x) {
  if (!(K >= 2.0)) throw std::invalid_argument("sum_Rm_measured: K must be >= 2");
  if (z == 0) throw std::invalid_argument("sum_Rm_measured: z must be positive");
  RmSum out;
  out.K = K;
  const long double lo = static_cast<long double>(U) / (static_cast<long double>(z) * K);
  out.m_lo = std::max<u64>(1, static_cast<u64>(std::ceil(lo)));
  // m < U/z  <=>  m z < U
  out.m_hi = U == 0 ? 0 : (U - 1) / z;
  for (u64 m = out.m_lo; m <= out.m_hi; ++m) {
    if (!parity_compliant(m, M)) continue;
    out.measured += count_Rm_exact(U / m, m, y, z, M);
  }
  const auto phi = totient_and_omega(M).phi;
  out.bound = static_cast<double>(U) * static_cast<double>(M) * std::log(K) /
              (std::log(static_cast<double>(x)) * std::log(static_cast<double>(y)) * static_cast<double>(phi));
  return out;
}

// --------------------------------------------------------------------------

bool is_admissible(std::span<const u64> H) {
  const u64 k = H.size();
  for (u64 p : primes_in_range(0, k)) {
    std::vector<bool> seen(p, false);
    u64 distinct = 0;
    for (u64 h : H)
      if (!seen[h % p]) {
        seen[h % p] = true;
        ++distinct;
      }
    if (distinct >= p) return false;
  }
  return true;
}

Tuple admissible_tuple(u32 k, double w) {
  if (k == 0) throw std::invalid_argument("admissible_tuple: k must be >= 1");
  Tuple t;
  t.k = k;
  t.w = w;
  const u64 pi_k = prime_count(k);
  // Enough primes to reach index pi(k) + k.
  u64 bound = 32;
  std::vector<u64> primes;
  while ((primes = primes_in_range(0, bound)).size() < pi_k + k) bound *= 2;

  u64 Pw = 1;
  for (u64 p : primes_in_range(0, floor_w(w))) {
    if (Pw > std::numeric_limits<u64>::max() / p) throw std::overflow_error("admissible_tuple: P(w) overflows");
    Pw *= p;
  }
  for (u32 i = 1; i <= k; ++i) {
    const u64 p = primes[pi_k + i - 1];
    if (p > std::numeric_limits<u64>::max() / Pw) throw std::overflow_error("admissible_tuple: h_i overflows");
    t.H.push_back(p * Pw);
  }
  return t;
}

u32 omega_mq(u64 p, const WeightContext& ctx) {
  std::vector<u64> residues;
  residues.reserve(2 * ctx.H.H.size());
  const u64 q = ctx.q % p;
  const u64 m = ctx.m % p;
  const bool m_invertible = m != 0;
  const u64 m_inv = m_invertible ? inverse_mod_small(m, p) : 0;
  for (u64 h : ctx.H.H) {
    const u64 shift = static_cast<u64>(static_cast<u128>(h % p) * q % p);  // h_i q mod p
    residues.push_back((p - shift) % p);                                    // n == -h_i q
    if (m_invertible) residues.push_back((m_inv + p - shift) % p);          // n == m^{-1} - h_i q
  }
  std::sort(residues.begin(), residues.end());
  return static_cast<u32>(std::unique(residues.begin(), residues.end()) - residues.begin());
}

u64 phi_mq(u64 p, const WeightContext& ctx) { return p - omega_mq(p, ctx); }

u32 omega_prime(u64 p, const WeightContext& ctx, u64 h) {
  std::vector<u64> residues;
  const u64 m = ctx.m % p;
  const u64 p0 = ctx.p0 % p;
  const bool m_invertible = m != 0;
  const u64 m_inv = m_invertible ? inverse_mod_small(m, p) : 0;
  for (u64 hi : ctx.H.H) {
    const u64 d = (hi % p + p - h % p) % p;  // h_i - h mod p
    if (d == 0) {
      if (p0 == 0 || static_cast<u128>(m) * p0 % p == 1 % p) return static_cast<u32>(p);
      continue;
    }
    const u64 d_inv = inverse_mod_small(d, p);
    // p0 + d n == 0  =>  n == -p0 / d
    residues.push_back(static_cast<u64>(static_cast<u128>((p - p0) % p) * d_inv % p));
    // m (p0 + d n) == 1  =>  n == (m^{-1} - p0) / d
    if (m_invertible) residues.push_back(static_cast<u64>(static_cast<u128>((m_inv + p - p0) % p) * d_inv % p));
  }
  std::sort(residues.begin(), residues.end());
  return static_cast<u32>(std::unique(residues.begin(), residues.end()) - residues.begin());
}

Rational singular_series_mq(const WeightContext& ctx) {
  const u32 k = static_cast<u32>(ctx.H.H.size());
  Rational out{1};
  for (u64 p : primes_in_range(0, ctx.y)) {
    const Rational keep{static_cast<unsigned long>(p - 1), static_cast<unsigned long>(p)};  // 1 - 1/p
    if (ctx.M % p != 0) {
      const u32 omega = omega_mq(p, ctx);
      if (omega >= p) return Rational{0};
      out *= Rational(static_cast<unsigned long>(p - omega), static_cast<unsigned long>(p));
      out /= pow_q(keep, 2 * k);
    } else {
      out /= pow_q(keep, k);
    }
  }
  if (k >= 1)
    for (u64 p : primes_in_range(0, floor_w(ctx.w))) {
      if (ctx.M % p != 0) continue;
      const Rational keep{static_cast<unsigned long>(p - 1), static_cast<unsigned long>(p)};
      out /= pow_q(keep, k - 1);  // (1 - 1/p)^{1-k}
    }
  out.canonicalize();
  return out;
}

Rational singular_series_m(u64 m, u32 k, double w, u64 M) {
  if (k == 0) throw std::invalid_argument("singular_series_m: k must be >= 1");
  Rational out{1, 1};
  out /= pow_q(Rational{2}, 2 * k - 1);
  const auto phi = totient_and_omega(M).phi;
  Rational density(static_cast<unsigned long>(phi), static_cast<unsigned long>(M));
  density.canonicalize();
  out *= pow_q(density, k);
  if (m > 0)
    for (const auto& f : factorize(m)) {
      if (f.prime == 2 || M % f.prime == 0) continue;
      out *= Rational(static_cast<unsigned long>(f.prime - 2), static_cast<unsigned long>(f.prime - 1));
    }
  for (u64 p : primes_in_range(2, floor_w(w))) {
    if (M % p == 0) continue;
    const Rational keep{static_cast<unsigned long>(p - 1), static_cast<unsigned long>(p)};
    out *= pow_q(keep, 2 * k);
    out /= Rational(static_cast<unsigned long>(p - 2), static_cast<unsigned long>(p));
  }
  out.canonicalize();
  return out;
}

}  // namespace gapforge
