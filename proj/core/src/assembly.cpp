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

#include "gapforge/assembly.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "parallel.hpp"

namespace gapforge {

namespace {

__extension__ using u128 = unsigned __int128;

BigInt big(u64 v) { return BigInt{static_cast<unsigned long>(v)}; }

u64 mod_ui(const BigInt& n, u64 p) { return mpz_fdiv_ui(n.get_mpz_t(), p); }

u64 inverse_mod(u64 v, u64 p) {
  BigInt inv;
  const BigInt vb = big(v), pb = big(p);
  if (mpz_invert(inv.get_mpz_t(), vb.get_mpz_t(), pb.get_mpz_t()) == 0)
    throw std::invalid_argument("inverse_mod: not invertible");
  return inv.get_ui();
}

std::size_t decimal_digits(const BigInt& v) { return v.get_str(10).size(); }

}  // namespace

const char* to_string(PrimalityGrade g) { return g == PrimalityGrade::proven ? "proven" : "probable"; }

BigInt window_low(u64 x, u64 M) {
  if (M == 0) throw std::invalid_argument("window_low: M must be >= 1");
  return big(x / M + (x % M != 0 ? 1 : 0));
}

BigInt solve_U0(const ResidueAssignment& assignment, const BigInt& window_low,
                const PrimorialValue& primorial) {
  const auto expected = primes_coprime_to(primorial.limit, primorial.excluded_modulus);
  if (expected.size() != assignment.size())
    throw InconsistentAssignment("solve_U0: assignment has " + std::to_string(assignment.size()) +
                                 " primes, primorial has " + std::to_string(expected.size()));
  {
    std::size_t i = 0;
    for (const auto& [p, e] : assignment.entries()) {
      if (p != expected[i])
        throw InconsistentAssignment("solve_U0: assignment prime " + std::to_string(p) +
                                     " does not match primorial prime " + std::to_string(expected[i]));
      ++i;
    }
  }

  // X == -a_p (mod p) for the primes folded so far; modulus is their product.
  BigInt X{0}, modulus{1};
  for (const auto& [p, e] : assignment.entries()) {
    const u64 target = (p - e.residue % p) % p;
    const u64 current = mod_ui(X, p);
    if (current == target) {
      modulus *= static_cast<unsigned long>(p);
      continue;
    }
    const u64 m_mod_p = mod_ui(modulus, p);
    const u64 diff = (target + p - current) % p;
    const u64 k = static_cast<u64>(static_cast<u128>(diff) * inverse_mod(m_mod_p, p) % p);
    X += modulus * static_cast<unsigned long>(k);
    modulus *= static_cast<unsigned long>(p);
  }
  if (modulus != primorial.value)
    throw InconsistentAssignment("solve_U0: primorial value does not match its prime set");

  BigInt offset = X - window_low;
  mpz_fdiv_r(offset.get_mpz_t(), offset.get_mpz_t(), modulus.get_mpz_t());
  return window_low + offset;
}

BigInt modular_inverse_r(u64 M, const PrimorialValue& primorial) {
  const BigInt& P = primorial.value;
  const BigInt Mb = big(M);
  BigInt g;
  mpz_gcd(g.get_mpz_t(), Mb.get_mpz_t(), P.get_mpz_t());
  if (g != 1) throw NonCoprimeError("modular_inverse_r: gcd(M, P_M(x)) = " + g.get_str() + " != 1");
  if (P == 1) return BigInt{0};
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), Mb.get_mpz_t(), P.get_mpz_t());
  BigInt r = P - inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), P.get_mpz_t());
  return r;
}

GapCertificate build_certificate(const SieveParams& params, const ResidueAssignment& assignment,
                                 const CertificateOptions& options) {
  GapCertificate cert;
  cert.M = params.M;
  cert.a = params.a;
  cert.x = params.x;
  cert.y = params.y;
  cert.z = params.z;
  cert.U = params.U;
  for (const auto& [p, e] : assignment.entries()) cert.assignment.emplace_back(p, e.residue);

  const PrimorialValue primorial = primorial_excluding(params.x, params.M);
  cert.primorial_digits = decimal_digits(primorial.value);
  cert.U0 = solve_U0(assignment, window_low(params.x, params.M), primorial);
  cert.r = modular_inverse_r(params.M, primorial);
  cert.block_start = big(params.M) * (cert.U0 + big(params.a) * cert.r) + big(params.a);

  cert.witnesses = covering_primes(assignment, params.U);
  std::unordered_map<u64, u64> start_mod;  // block_start mod p per witness prime
  for (std::size_t i = 0; i < cert.witnesses.size(); ++i) {
    const u64 j = i + 1;
    const u64 p = cert.witnesses[i];
    if (p == 0) throw WitnessFailure("build_certificate: element " + std::to_string(j) + " is not covered");
    auto [it, fresh] = start_mod.try_emplace(p, 0);
    if (fresh) it->second = mod_ui(cert.block_start, p);
    const u64 element_mod = static_cast<u64>((static_cast<u128>(it->second) + static_cast<u128>(j % p) * (params.M % p)) % p);
    if (element_mod != 0 || mpz_cmp_ui(cert.block_start.get_mpz_t(), p) <= 0)
      throw WitnessFailure("build_certificate: " + std::to_string(p) + " does not certify element " +
                           std::to_string(j));
  }

  if (options.with_bounds) {
    const BigInt back_from = cert.block_start + 1;
    const BigInt fwd_from = cert.block_start + big(params.M) * big(params.U);
    ApPrime prev, next;
    if (options.threads > 1) {
      auto fut = std::async(std::launch::async, [&] {
        return next_prime_in_ap(back_from, params.M, params.a, Direction::backward, options.search);
      });
      next = next_prime_in_ap(fwd_from, params.M, params.a, Direction::forward, options.search);
      prev = fut.get();
    } else {
      prev = next_prime_in_ap(back_from, params.M, params.a, Direction::backward, options.search);
      next = next_prime_in_ap(fwd_from, params.M, params.a, Direction::forward, options.search);
    }
    cert.prev_prime = prev.value;
    cert.next_prime = next.value;
    cert.primality_grade = (prev.grade == Primality::prime && next.grade == Primality::prime)
                               ? PrimalityGrade::proven
                               : PrimalityGrade::probable;
    cert.gap = next.value - prev.value;
  }
  return cert;
}

// --------------------------------------------------------------------------

namespace {

// First candidate in first, first + step, ... (count of them) that is not
// composite, or count if all are composite.
std::size_t first_non_composite(const BigInt& first, const BigInt& step, std::size_t count, u64 depth) {
  constexpr std::size_t kWindow = 4096;
  for (std::size_t base = 0; base < count; base += kWindow) {
    const std::size_t len = std::min(kWindow, count - base);
    const BigInt start = first + step * static_cast<unsigned long>(base);
    const auto screened = presieve_progression(start, step, len, depth);
    for (std::size_t i = 0; i < len; ++i) {
      if (screened[i]) continue;
      if (is_prime(start + step * static_cast<unsigned long>(i)) != Primality::composite) return base + i;
    }
  }
  return count;
}

}  // namespace

Verdict verify_certificate(const GapCertificate& cert, const VerifyOptions& options) {
  if (cert.M == 0) return Verdict::fail("modulus: M must be >= 1");
  if (std::gcd(cert.M, cert.a) != 1) return Verdict::fail("coprimality: gcd(M, a) != 1");
  if (cert.witnesses.size() != cert.U)
    return Verdict::fail("witness count: " + std::to_string(cert.witnesses.size()) + " witnesses for U = " +
                         std::to_string(cert.U));

  // Assignment: exactly the primes p <= x not dividing M, each with 0 <= a_p < p.
  const auto expected = primes_coprime_to(cert.x, cert.M);
  if (expected.size() != cert.assignment.size())
    return Verdict::fail("assignment: expected " + std::to_string(expected.size()) + " primes, found " +
                         std::to_string(cert.assignment.size()));
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto [p, ap] = cert.assignment[i];
    if (p != expected[i]) return Verdict::fail("assignment: entry " + std::to_string(i) + " has prime " +
                                               std::to_string(p) + ", expected " + std::to_string(expected[i]));
    if (ap >= p) return Verdict::fail("assignment: residue out of range for p = " + std::to_string(p));
  }

  const BigInt P = product_tree(expected);
  if (decimal_digits(P) != cert.primorial_digits) return Verdict::fail("primorial_digits");

  const BigInt Mb = big(cert.M);
  if (cert.U0 < 0 || cert.r < 0) return Verdict::fail("window: negative U0 or r");
  const BigInt low = window_low(cert.x, cert.M);
  if (cert.U0 < low || cert.U0 >= low + P) return Verdict::fail("window: U0 outside [ceil(x/M), ceil(x/M) + P_M(x))");

  for (const auto& [p, ap] : cert.assignment)
    if ((mod_ui(cert.U0, p) + ap) % p != 0) return Verdict::fail("crt: U0 != -a_p (mod " + std::to_string(p) + ")");

  if (cert.r >= P) return Verdict::fail("r: not reduced mod P_M(x)");
  {
    BigInt check = Mb * cert.r + 1;
    mpz_fdiv_r(check.get_mpz_t(), check.get_mpz_t(), P.get_mpz_t());
    if (check != 0) return Verdict::fail("r: M r != -1 (mod P_M(x))");
  }

  if (cert.block_start != Mb * (cert.U0 + big(cert.a) * cert.r) + big(cert.a))
    return Verdict::fail("block_start: != M(U0 + a r) + a");

  // Each element j must be covered by its witness and divisible by it.
  std::vector<std::size_t> first_bad(std::max(1u, options.threads), cert.U);
  std::vector<std::string> bad_reason(first_bad.size());
  detail::parallel_chunks(cert.U, options.threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    std::unordered_map<u64, u64> start_mod;
    for (std::size_t i = begin; i < end; ++i) {
      const u64 j = i + 1;
      const u64 p = cert.witnesses[i];
      auto it = std::lower_bound(cert.assignment.begin(), cert.assignment.end(), std::pair<u64, u64>{p, 0});
      std::string why;
      if (p < 2 || it == cert.assignment.end() || it->first != p) {
        why = "not an assigned prime";
      } else if (j % p != it->second) {
        why = "j != a_p (mod p)";
      } else {
        auto [m, fresh] = start_mod.try_emplace(p, 0);
        if (fresh) m->second = mod_ui(cert.block_start, p);
        const u64 element_mod = static_cast<u64>((static_cast<u128>(m->second) + static_cast<u128>(j % p) * (cert.M % p)) % p);
        if (element_mod != 0) why = "p does not divide block_start + jM";
        else if (mpz_cmp_ui(BigInt(cert.block_start + Mb * big(j)).get_mpz_t(), p) <= 0) why = "element equals its witness";
      }
      if (!why.empty()) {
        first_bad[chunk] = i;
        bad_reason[chunk] = "witness " + std::to_string(j) + ": " + why + " (p = " + std::to_string(p) + ")";
        return;
      }
    }
  });
  for (std::size_t c = 0; c < first_bad.size(); ++c)
    if (first_bad[c] != cert.U) return Verdict::fail(bad_reason[c]);

  const bool any_bound = cert.prev_prime || cert.next_prime || cert.gap || cert.primality_grade;
  if (!any_bound) return Verdict::ok();
  if (!(cert.prev_prime && cert.next_prime && cert.gap && cert.primality_grade))
    return Verdict::fail("bounds: prev_prime, next_prime, gap and primality_grade must appear together");

  const BigInt& prev = *cert.prev_prime;
  const BigInt& next = *cert.next_prime;
  if (prev < 2 || mod_ui(prev, cert.M) != cert.a % cert.M) return Verdict::fail("prev_prime: not in the progression");
  if (next < 2 || mod_ui(next, cert.M) != cert.a % cert.M) return Verdict::fail("next_prime: not in the progression");
  if (prev > cert.block_start) return Verdict::fail("prev_prime: above block_start");
  const BigInt block_end = cert.block_start + Mb * big(cert.U);
  if (next <= block_end) return Verdict::fail("next_prime: inside the composite block");
  if (*cert.gap != next - prev) return Verdict::fail("gap: != next_prime - prev_prime");
  if (*cert.gap < Mb * big(cert.U)) return Verdict::fail("gap: smaller than M U");

  Primality prev_grade, next_grade;
  if (options.threads > 1) {
    auto fut = std::async(std::launch::async, [&] { return is_prime(prev); });
    next_grade = is_prime(next);
    prev_grade = fut.get();
  } else {
    prev_grade = is_prime(prev);
    next_grade = is_prime(next);
  }
  if (prev_grade == Primality::composite) return Verdict::fail("prev_prime: composite");
  if (next_grade == Primality::composite) return Verdict::fail("next_prime: composite");
  const PrimalityGrade grade = (prev_grade == Primality::prime && next_grade == Primality::prime)
                                   ? PrimalityGrade::proven
                                   : PrimalityGrade::probable;
  if (grade != *cert.primality_grade) return Verdict::fail("primality_grade: recorded grade does not match");

  // Every progression member strictly between the bounds and outside the
  // witnessed block must be composite.
  const BigInt below = (cert.block_start - prev) / Mb;  // members in (prev, block_start]
  const BigInt above = (next - block_end) / Mb - 1;     // members in (block_end, next)
  constexpr unsigned long kMaxScan = 100'000'000;
  if (below > kMaxScan || above > kMaxScan) return Verdict::fail("bounds: too far from the block to verify");
  const std::size_t n_below = below.get_ui(), n_above = above.get_ui();
  const auto lower_hit = first_non_composite(prev + Mb, Mb, n_below, options.presieve_depth);
  if (lower_hit != n_below)
    return Verdict::fail("bounds: prime " + BigInt(prev + Mb * big(lower_hit + 1)).get_str() +
                         " lies between prev_prime and the block");
  const auto upper_hit = first_non_composite(block_end + Mb, Mb, n_above, options.presieve_depth);
  if (upper_hit != n_above)
    return Verdict::fail("bounds: prime " + BigInt(block_end + Mb * big(upper_hit + 1)).get_str() +
                         " lies between the block and next_prime");
  return Verdict::ok();
}

}  // namespace gapforge
