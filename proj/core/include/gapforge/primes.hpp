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

#ifndef GAPFORGE_PRIMES_HPP
#define GAPFORGE_PRIMES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gapforge {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using BigInt = mpz_class;

// Default number of flags per sieve segment (fits comfortably in L2).
inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 18;

// Primes p with lo < p <= hi, ascending. Segmented sieve of Eratosthenes.
std::vector<u64> primes_in_range(u64 lo, u64 hi,
                                 std::size_t segment_size = kDefaultSegmentSize);

// Primes up to n from a single unsegmented sieve. Kept as the reference the
// segmented sieve must match bit-for-bit.
std::vector<u64> primes_up_to_simple(u64 n);

// Number of primes <= n.
u64 prime_count(u64 n);

// --------------------------------------------------------------------------
// Primality

enum class Primality { composite, prime, probable_prime };

const char* to_string(Primality p);

// Deterministic for n < 2^64 (Miller-Rabin with the first twelve prime bases).
bool is_prime_u64(u64 n);

// Exact below 2^64; BPSW (strong base-2 PRP plus strong Lucas) above, where a
// positive answer is reported as probable_prime.
Primality is_prime(const BigInt& n);

// Individual BPSW ingredients, exposed for testing. n must be odd and > 2.
bool is_strong_probable_prime_base2(const BigInt& n);
bool is_strong_lucas_probable_prime(const BigInt& n);

// --------------------------------------------------------------------------
// Primorials and arithmetic functions

struct PrimorialValue {
  BigInt value{1};
  u64 limit = 0;             // x in P(x)
  u64 excluded_modulus = 1;  // M in P_M(x); 1 excludes nothing
};

// Product of primes p <= limit with p not dividing M.
PrimorialValue primorial_excluding(u64 limit, u64 M);

// Primes p <= limit with p not dividing M (the prime set behind the primorial).
std::vector<u64> primes_coprime_to(u64 limit, u64 M);

// Product of a list of values through a balanced product tree.
BigInt product_tree(std::span<const u64> values);

// All n <= U whose prime factors are all <= y, ascending. Enumerated by
// recursive prime-power products so sparse smooth sets stay cheap for large U.
std::vector<u64> smooth_numbers_up_to(u64 U, u64 y);

struct PrimeFactor {
  u64 prime;
  u32 exponent;
};

// Trial-division factorization of a 64-bit integer (n >= 1).
std::vector<PrimeFactor> factorize(u64 n);

struct TotientOmega {
  u64 phi;
  u32 omega;
};

TotientOmega totient_and_omega(u64 M);

// Largest prime factor of n; 1 for n == 1.
u64 largest_prime_factor(u64 n);

u64 gcd_u64(u64 a, u64 b);

// --------------------------------------------------------------------------
// Primes in arithmetic progressions

enum class Direction { forward, backward };

struct ApSearchOptions {
  u64 presieve_depth = 1'000'000;  // trial-division screen before PRP tests
  u64 step_budget = u64{1} << 26;  // candidates examined before giving up
  std::size_t window = 4096;       // candidates screened per sieve window
};

class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ApPrime {
  BigInt value;
  Primality grade = Primality::composite;
};

// Nearest prime congruent to a mod M strictly beyond start in the given
// direction. Candidates are screened by a windowed sieve over the primes up
// to options.presieve_depth before any probable-prime test.
ApPrime next_prime_in_ap(const BigInt& start, u64 M, u64 a, Direction direction,
                         const ApSearchOptions& options = {});

// Sieve flags for the candidates first + i*step (i in [0, count)); true when a
// prime <= depth not dividing the candidate's own value divides it. step may
// be negative. Candidates equal to a screening prime are never flagged.
std::vector<bool> presieve_progression(const BigInt& first, const BigInt& step,
                                       std::size_t count, u64 depth);

}  // namespace gapforge

#endif  // GAPFORGE_PRIMES_HPP
