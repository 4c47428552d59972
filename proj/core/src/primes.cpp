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

#include "gapforge/primes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>

namespace gapforge {

namespace {

__extension__ using u128 = unsigned __int128;

u64 isqrt(u64 n) {
  auto r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) <= std::numeric_limits<u32>::max() && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

std::vector<u64> primes_up_to_simple(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (u64 i = 2; i * i <= n; ++i)
    if (!composite[i])
      for (u64 j = i * i; j <= n; j += i) composite[j] = true;
  for (u64 i = 2; i <= n; ++i)
    if (!composite[i]) out.push_back(i);
  return out;
}

std::vector<u64> primes_in_range(u64 lo, u64 hi, std::size_t segment_size) {
  std::vector<u64> out;
  if (hi < 2 || lo >= hi) return out;
  if (segment_size == 0) segment_size = kDefaultSegmentSize;

  const u64 root = isqrt(hi);
  const std::vector<u64> base = primes_up_to_simple(root);

  // Sieve (lo, hi] in windows [low, high].
  std::vector<char> flags(segment_size);
  for (u64 low = std::max<u64>(lo + 1, 2); low <= hi;) {
    const u64 high = std::min<u64>(hi, low + segment_size - 1);
    const std::size_t len = static_cast<std::size_t>(high - low + 1);
    std::fill(flags.begin(), flags.begin() + len, 1);
    for (u64 p : base) {
      if (p * p > high) break;
      u64 start = std::max(p * p, (low + p - 1) / p * p);
      for (u64 j = start; j <= high; j += p) flags[j - low] = 0;
    }
    for (std::size_t i = 0; i < len; ++i)
      if (flags[i]) out.push_back(low + i);
    if (high == hi) break;
    low = high + 1;
  }
  return out;
}

u64 prime_count(u64 n) { return primes_in_range(0, n).size(); }

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

std::vector<u64> primes_coprime_to(u64 limit, u64 M) {
  std::vector<u64> out;
  for (u64 p : primes_in_range(0, limit))
    if (M % p != 0) out.push_back(p);
  return out;
}

BigInt product_tree(std::span<const u64> values) {
  if (values.empty()) return BigInt{1};
  std::vector<BigInt> level;
  level.reserve(values.size());
  for (u64 v : values) {
    BigInt b;
    mpz_import(b.get_mpz_t(), 1, -1, sizeof(u64), 0, 0, &v);
    level.push_back(std::move(b));
  }
  while (level.size() > 1) {
    std::vector<BigInt> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] * level[i + 1]);
    if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
    level = std::move(next);
  }
  return level.front();
}

PrimorialValue primorial_excluding(u64 limit, u64 M) {
  if (M == 0) throw std::invalid_argument("primorial_excluding: M must be >= 1");
  const auto primes = primes_coprime_to(limit, M);
  return PrimorialValue{product_tree(primes), limit, M};
}

namespace {

void smooth_recurse(u64 current, std::size_t index, u64 U, std::span<const u64> primes,
                    std::vector<u64>& out) {
  out.push_back(current);
  for (std::size_t i = index; i < primes.size(); ++i) {
    const u64 p = primes[i];
    if (current > U / p) break;
    u64 v = current * p;
    while (true) {
      smooth_recurse(v, i + 1, U, primes, out);
      if (v > U / p) break;
      v *= p;
    }
  }
}

}  // namespace

std::vector<u64> smooth_numbers_up_to(u64 U, u64 y) {
  std::vector<u64> out;
  if (U == 0) return out;
  const auto primes = primes_in_range(0, std::min(y, U));
  smooth_recurse(1, 0, U, primes, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PrimeFactor> factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
  std::vector<PrimeFactor> out;
  auto strip = [&](u64 p) {
    if (n % p != 0) return;
    u32 e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  };
  strip(2);
  strip(3);
  for (u64 p = 5; p <= n / p; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

TotientOmega totient_and_omega(u64 M) {
  if (M == 0) throw std::invalid_argument("totient_and_omega: M must be >= 1");
  u64 phi = M;
  u32 omega = 0;
  for (const auto& f : factorize(M)) {
    phi = phi / f.prime * (f.prime - 1);
    ++omega;
  }
  return {phi, omega};
}

u64 largest_prime_factor(u64 n) {
  const auto f = factorize(n);
  return f.empty() ? 1 : f.back().prime;
}

// --------------------------------------------------------------------------

namespace {

const std::vector<u64>& screening_primes(u64 depth) {
  static std::mutex mu;
  static std::map<u64, std::vector<u64>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(depth);
  if (it == cache.end()) it = cache.emplace(depth, primes_in_range(0, depth)).first;
  return it->second;
}

}  // namespace

std::vector<bool> presieve_progression(const BigInt& first, const BigInt& step,
                                       std::size_t count, u64 depth) {
  std::vector<bool> hit(count, false);
  if (count == 0) return hit;
  const BigInt last = first + step * static_cast<unsigned long>(count - 1);
  const bool all_positive = first > 0 && last > 0;
  for (u64 p : screening_primes(depth)) {
    const u64 s = mpz_fdiv_ui(step.get_mpz_t(), p);
    if (s == 0) continue;  // p | M never divides a candidate while gcd(a, M) = 1
    const u64 f = mpz_fdiv_ui(first.get_mpz_t(), p);
    // first + i*s == 0 (mod p)  =>  i == -f * s^{-1}
    BigInt inv;
    BigInt sp{static_cast<unsigned long>(s)}, pp{static_cast<unsigned long>(p)};
    mpz_invert(inv.get_mpz_t(), sp.get_mpz_t(), pp.get_mpz_t());
    const u64 inv_s = inv.get_ui();
    const u64 start = static_cast<u64>((static_cast<u128>(p - f) % p * inv_s) % p);
    for (u64 i = start; i < count; i += p) {
      if (!all_positive) {
        const BigInt c = first + step * static_cast<unsigned long>(i);
        if (c <= 1 || c == static_cast<unsigned long>(p)) continue;
      } else if (mpz_cmp_ui(first.get_mpz_t(), p) <= 0 || mpz_cmp_ui(last.get_mpz_t(), p) <= 0) {
        const BigInt c = first + step * static_cast<unsigned long>(i);
        if (c == static_cast<unsigned long>(p)) continue;
      }
      hit[i] = true;
    }
  }
  return hit;
}

ApPrime next_prime_in_ap(const BigInt& start, u64 M, u64 a, Direction direction,
                         const ApSearchOptions& options) {
  if (M == 0) throw std::invalid_argument("next_prime_in_ap: M must be >= 1");
  if (std::gcd(M, a) != 1)
    throw std::invalid_argument("next_prime_in_ap: gcd(M, a) must be 1");

  // First candidate strictly beyond start that is == a (mod M).
  const BigInt Mb{static_cast<unsigned long>(M)};
  const u64 ar = a % M;
  const u64 sr = mpz_fdiv_ui(start.get_mpz_t(), M);
  BigInt first;
  if (direction == Direction::forward) {
    u64 delta = (ar + M - sr) % M;
    if (delta == 0) delta = M;
    first = start + static_cast<unsigned long>(delta);
  } else {
    u64 delta = (sr + M - ar) % M;
    if (delta == 0) delta = M;
    first = start - static_cast<unsigned long>(delta);
  }
  const BigInt step = direction == Direction::forward ? BigInt(Mb) : BigInt(-Mb);
  const std::size_t window = std::max<std::size_t>(options.window, 1);

  u64 examined = 0;
  BigInt base = first;
  while (examined < options.step_budget) {
    std::size_t count = window;
    if (options.step_budget - examined < count) count = static_cast<std::size_t>(options.step_budget - examined);
    const auto screened = presieve_progression(base, step, count, options.presieve_depth);
    for (std::size_t i = 0; i < count; ++i) {
      const BigInt c = base + step * static_cast<unsigned long>(i);
      if (c < 2) throw SearchExhausted("next_prime_in_ap: no prime in progression below start");
      if (screened[i]) continue;
      const Primality verdict = is_prime(c);
      if (verdict != Primality::composite) return ApPrime{c, verdict};
    }
    examined += count;
    base += step * static_cast<unsigned long>(count);
  }
  throw SearchExhausted("next_prime_in_ap: step budget of " + std::to_string(options.step_budget) +
                        " candidates exhausted");
}

}  // namespace gapforge
