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

// Independent reference implementations used by the tests. Everything here is
// deliberately naive and shares no code with the library.

#ifndef GAPFORGE_TESTS_ORACLES_HPP
#define GAPFORGE_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using u64 = std::uint64_t;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<u64> primes_upto(u64 n) {
  std::vector<u64> out;
  for (u64 k = 2; k <= n; ++k)
    if (is_prime(k)) out.push_back(k);
  return out;
}

inline u64 largest_factor(u64 n) {
  u64 best = 1;
  for (u64 d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      best = d;
      n /= d;
    }
  return n > 1 ? n : best;
}

inline bool smooth(u64 n, u64 y) { return largest_factor(n) <= y; }

inline u64 phi(u64 n) {
  u64 count = 0;
  for (u64 k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++count;
  return count;
}

inline u64 omega(u64 n) {
  u64 count = 0;
  for (u64 d = 2; d <= n; ++d)
    if (n % d == 0 && is_prime(d)) ++count;
  return count;
}

// n in [1,U] avoiding 1 mod p for p <= y and 0 mod p for y < p <= z, p not dividing M.
inline std::vector<u64> survivors(u64 U, u64 y, u64 z, u64 M) {
  std::vector<u64> out;
  for (u64 n = 1; n <= U; ++n) {
    bool alive = true;
    for (u64 p = 2; p <= z && alive; ++p) {
      if (!is_prime(p) || M % p == 0) continue;
      if (p <= y && n % p == 1 % p) alive = false;
      if (p > y && n % p == 0) alive = false;
    }
    if (alive) out.push_back(n);
  }
  return out;
}

namespace detail {
inline bool cover_dfs(const std::vector<u64>& values, std::vector<bool>& covered, const std::vector<u64>& primes,
                      std::vector<bool>& used) {
  std::size_t first = 0;
  while (first < values.size() && covered[first]) ++first;
  if (first == values.size()) return true;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (used[i]) continue;
    const u64 q = primes[i], c = values[first] % q;
    std::vector<std::size_t> newly;
    for (std::size_t j = first; j < values.size(); ++j)
      if (!covered[j] && values[j] % q == c) {
        covered[j] = true;
        newly.push_back(j);
      }
    used[i] = true;
    if (cover_dfs(values, covered, primes, used)) return true;
    used[i] = false;
    for (auto j : newly) covered[j] = false;
  }
  return false;
}
}  // namespace detail

// Exhaustive: can the values be covered using each prime at most once?
inline bool coverable(const std::vector<u64>& values, const std::vector<u64>& primes) {
  std::vector<bool> covered(values.size(), false), used(primes.size(), false);
  return detail::cover_dfs(values, covered, primes, used);
}

// Largest U <= limit whose survivors admit an exact cover by primes in (z, x], p not dividing M.
inline u64 exhaustive_U_max(u64 x, u64 y, u64 z, u64 M, u64 limit) {
  std::vector<u64> primes;
  for (u64 p = z + 1; p <= x; ++p)
    if (is_prime(p) && M % p != 0) primes.push_back(p);
  // coverability of [1, U] implies coverability of every shorter prefix
  u64 best = 0;
  for (u64 U = 1; U <= limit && coverable(survivors(U, y, z, M), primes); ++U) best = U;
  return best;
}

// Eager max-coverage greedy: (count desc, q asc, residue asc).
inline std::set<u64> eager_greedy_uncovered(std::vector<u64> values, std::vector<u64> primes,
                                            std::vector<std::pair<u64, u64>>* picks = nullptr) {
  std::set<u64> left(values.begin(), values.end());
  std::sort(primes.begin(), primes.end());
  std::vector<bool> used(primes.size(), false);
  while (!left.empty()) {
    u64 best_count = 0, best_q = 0, best_c = 0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (used[i]) continue;
      const u64 q = primes[i];
      std::vector<u64> tally;
      for (u64 v : left) tally.push_back(v % q);
      std::sort(tally.begin(), tally.end());
      for (std::size_t s = 0; s < tally.size();) {
        std::size_t e = s;
        while (e < tally.size() && tally[e] == tally[s]) ++e;
        if (e - s > best_count) {
          best_count = e - s;
          best_q = q;
          best_c = tally[s];
          best_i = i;
        }
        s = e;
      }
    }
    if (best_count == 0) break;
    used[best_i] = true;
    if (picks) picks->push_back({best_q, best_c});
    for (auto it = left.begin(); it != left.end();) it = (*it % best_q == best_c) ? left.erase(it) : std::next(it);
  }
  return left;
}

// Least u in [low, low + P) with u = target_p (mod p) for every listed pair; P is the product.
inline mpz_class brute_crt(const std::vector<std::pair<u64, u64>>& residues, const mpz_class& low) {
  u64 P = 1;
  for (auto [p, r] : residues) P *= p;
  for (u64 k = 0; k < P; ++k) {
    const mpz_class u = low + k;
    bool ok = true;
    for (auto [p, r] : residues) {
      mpz_class rem = u % p;
      if (rem != r) {
        ok = false;
        break;
      }
    }
    if (ok) return u;
  }
  return -1;
}

inline bool gmp_probable_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

}  // namespace oracle

#endif  // GAPFORGE_TESTS_ORACLES_HPP
