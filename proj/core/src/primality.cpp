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

#include <array>

#include "gapforge/primes.hpp"

namespace gapforge {

namespace {

__extension__ using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 e, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

bool miller_rabin_witness(u64 n, u64 d, unsigned s, u64 a) {
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

constexpr std::array<u64, 12> kMrBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Small primes used to reject big candidates before BPSW.
constexpr std::array<unsigned long, 25> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                                        29, 31, 37, 41, 43, 47, 53, 59, 61,
                                                        67, 71, 73, 79, 83, 89, 97};

bool fits_u64(const BigInt& n) { return mpz_sgn(n.get_mpz_t()) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

u64 to_u64(const BigInt& n) {
  u64 v = 0;
  mpz_export(&v, nullptr, -1, sizeof(u64), 0, 0, n.get_mpz_t());
  return v;
}

// x / 2 mod n for odd n.
void halve_mod(BigInt& x, const BigInt& n) {
  if (mpz_odd_p(x.get_mpz_t())) x += n;
  mpz_fdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
}

}  // namespace

const char* to_string(Primality p) {
  switch (p) {
    case Primality::composite: return "composite";
    case Primality::prime: return "prime";
    case Primality::probable_prime: return "probable_prime";
  }
  return "composite";
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : kMrBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kMrBases)
    if (!miller_rabin_witness(n, d, s, a)) return false;
  return true;
}

bool is_strong_probable_prime_base2(const BigInt& n) {
  const BigInt n_minus_1 = n - 1;
  BigInt d = n_minus_1;
  const mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  BigInt x;
  const BigInt two{2};
  mpz_powm(x.get_mpz_t(), two.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

bool is_strong_lucas_probable_prime(const BigInt& n) {
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;

  // Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
  long D = 5;
  while (true) {
    const BigInt Db{D};
    const int j = mpz_jacobi(Db.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0) {
      BigInt absD{D < 0 ? -D : D};
      if (absD != n) return false;
    }
    D = D > 0 ? -(D + 2) : -(D - 2);
  }
  const long P = 1;
  const long Q = (1 - D) / 4;

  BigInt d = n + 1;
  const mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  BigInt U{1}, V{P}, Qk{Q};
  const BigInt Db{D}, Qb{Q};
  Qk %= n;
  if (Qk < 0) Qk += n;
  const std::size_t bits = mpz_sizeinbase(d.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    U = U * V % n;
    V = (V * V - 2 * Qk) % n;
    Qk = Qk * Qk % n;
    if (mpz_tstbit(d.get_mpz_t(), i)) {
      BigInt u_next = P * U + V;
      BigInt v_next = Db * U + P * V;
      halve_mod(u_next %= n, n);
      v_next %= n;
      if (v_next < 0) v_next += n;
      halve_mod(v_next, n);
      U = u_next % n;
      V = v_next % n;
      Qk = Qk * Qb % n;
    }
    if (U < 0) U += n;
    if (V < 0) V += n;
    if (Qk < 0) Qk += n;
  }
  if (U == 0 || V == 0) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    V = (V * V - 2 * Qk) % n;
    if (V < 0) V += n;
    if (V == 0) return true;
    Qk = Qk * Qk % n;
  }
  return false;
}

Primality is_prime(const BigInt& n) {
  if (n < 2) return Primality::composite;
  if (fits_u64(n)) return is_prime_u64(to_u64(n)) ? Primality::prime : Primality::composite;
  for (unsigned long p : kSmallPrimes)
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return Primality::composite;
  if (!is_strong_probable_prime_base2(n)) return Primality::composite;
  if (!is_strong_lucas_probable_prime(n)) return Primality::composite;
  return Primality::probable_prime;
}

}  // namespace gapforge
