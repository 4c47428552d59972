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

// Acceptance harness. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "gapforge/gapforge.hpp"
#include "oracles.hpp"

namespace {

using namespace gapforge;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Certificates produced by any criterion, re-audited by the CRT criterion.
std::vector<GapCertificate> g_certificates;

BigInt big(u64 v) {
  BigInt b;
  mpz_import(b.get_mpz_t(), 1, -1, sizeof(u64), 0, 0, &v);
  return b;
}

SieveParams with_overrides(u64 x, u64 M, u64 a, std::optional<u64> y, std::optional<u64> z) {
  ParamOverrides o;
  o.y = y;
  o.z = z;
  o.U = 1;
  return derive_params(x, M, a, 0.1, 1.0, o);
}

struct Construction {
  u64 U_max = 0;
  GapCertificate cert;
  Verdict verdict;
};

Construction construct(SieveParams params, bool bounds, u64 presieve = 1'000'000) {
  auto best = max_covered_U(params);
  params.U = best.U_max;
  CertificateOptions opts;
  opts.with_bounds = bounds;
  opts.search.presieve_depth = presieve;
  Construction c;
  c.U_max = best.U_max;
  c.cert = build_certificate(params, best.assignment, opts);
  c.verdict = verify_certificate(c.cert, VerifyOptions{presieve, 1});
  g_certificates.push_back(c.cert);
  return c;
}

// Every candidate = a (mod M) strictly between the bounding primes is composite
// by the GMP test, and both bounding primes pass it.
bool bounds_independently_sound(const GapCertificate& c) {
  if (!c.has_bounds()) return false;
  if (!oracle::gmp_probable_prime(*c.prev_prime) || !oracle::gmp_probable_prime(*c.next_prime)) return false;
  for (BigInt v = *c.prev_prime + c.M; v < *c.next_prime; v += c.M)
    if (oracle::gmp_probable_prime(v)) return false;
  return true;
}

Outcome toy_end_to_end(u64 M, u64 a, u64 expected_U, u64 min_gap) {
  Outcome out;
  const auto c = construct(with_overrides(20, M, a, 3, 5), true);
  const u64 exhaustive = oracle::exhaustive_U_max(20, 3, 5, M, 50);
  std::ostringstream d;
  d << "U_max=" << c.U_max << " exhaustive=" << exhaustive << " verify=" << (c.verdict.valid ? "valid" : c.verdict.reason);
  if (c.cert.gap) d << " gap=" << c.cert.gap->get_str();
  out.detail = d.str();
  out.pass = c.U_max == expected_U && exhaustive == expected_U && c.verdict.valid && c.cert.gap &&
             *c.cert.gap >= big(min_gap) && bounds_independently_sound(c.cert);
  return out;
}

Outcome criterion_sieve_equivalence() {
  std::mt19937_64 rng(20260101);
  int mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const u64 M = 1 + rng() % 30;
    u64 a = rng() % M;
    while (std::gcd(a, M) != 1) a = (a + 1) % M;
    const u64 y = 2 + rng() % 49;
    const u64 z = y + 1 + rng() % (500 - y);
    const u64 U = 1 + rng() % 5000;
    ParamOverrides o;
    o.y = y;
    o.z = z;
    o.U = U;
    const auto params = derive_params(std::max<u64>(z + 1, 20), M, a, 0.1, 1.0, o);
    if (run_phases(params).survivors.values() != oracle::survivors(U, y, z, M)) ++mismatches;
  }
  return {mismatches == 0, "200 instances, mismatches=" + std::to_string(mismatches)};
}

Outcome criterion_crt() {
  u64 failures = 0, checked = 0;
  for (const auto& c : g_certificates) {
    std::vector<u64> primes;
    for (auto [p, ap] : c.assignment) primes.push_back(p);
    const BigInt P = product_tree(primes);
    const BigInt low = (big(c.x) + big(c.M) - 1) / big(c.M);
    bool ok = c.U0 >= low && c.U0 < low + P && big(c.M) * c.U0 >= big(c.x);
    for (auto [p, ap] : c.assignment) ok = ok && BigInt((c.U0 + big(ap)) % big(p)) == 0;
    ok = ok && BigInt((big(c.M) * c.r + 1) % P) == 0;
    failures += !ok;
    ++checked;
  }
  std::mt19937_64 rng(4242);
  const std::vector<u64> pool{2, 3, 5, 7, 11, 13, 17, 19};
  u64 random_failures = 0;
  for (int t = 0; t < 200; ++t) {
    ResidueAssignment assignment;
    std::vector<std::pair<u64, u64>> targets;
    u64 product = 1;
    for (u64 p : pool) {
      if (rng() % 3 == 0 || product * p >= 1'000'000) continue;
      product *= p;
      const u64 r = rng() % p;
      assignment.assign(p, r, Phase::cover_phase);
      targets.push_back({p, (p - r) % p});
    }
    PrimorialValue P;
    P.value = big(product);
    P.limit = targets.empty() ? 0 : targets.back().first;
    for (u64 p : pool)
      if (p < P.limit && product % p != 0) P.excluded_modulus *= p;
    const BigInt low = big(rng() % 10'000'000);
    const BigInt u = solve_U0(assignment, low, P);
    if (targets.empty() ? u != low : u != oracle::brute_crt(targets, low)) ++random_failures;
  }
  return {failures == 0 && random_failures == 0 && checked > 0,
          std::to_string(checked) + " certificates, " + std::to_string(failures) + " failing; 200 random systems, " +
              std::to_string(random_failures) + " failing"};
}

Outcome criterion_main_term() {
  const auto p = derive_params(100'000, 1, 1, 0.1, 1.0);
  const u64 V = std::min(p.U / 2, p.x);
  const u64 exact = count_Rm_exact(V, 2, p.y, p.z, 1);
  const double main_term = survivor_main_term(V, p.z, p.x, p.y, 1, 2);
  const double ratio = static_cast<double>(exact) / main_term;
  std::ostringstream d;
  d << "y=" << p.y << " z=" << p.z << " V=" << V << " exact=" << exact << " predicted=" << main_term
    << " ratio=" << ratio;
  return {ratio >= 0.5 && ratio <= 2.0, d.str()};
}

Outcome criterion_omega() {
  std::mt19937_64 rng(606);
  const auto small = oracle::primes_upto(1000);
  const auto large = oracle::primes_upto(100'000);
  u64 mismatch = 0, over = 0, implication_failures = 0, condition_held = 0;
  for (int t = 0; t < 500; ++t) {
    const u32 k = 1 + rng() % 4;
    // smoothing limit at least the spread of the base primes, as w grows without bound
    const auto base = admissible_tuple(k, 0).H;
    const double w = static_cast<double>(base.back() - base.front() + rng() % 12);
    WeightContext c;
    c.H = admissible_tuple(k, w);
    c.w = w;
    c.y = 1000;
    c.M = 1 + rng() % 30;
    c.m = 1 + rng() % 10'000;
    do c.q = large[rng() % large.size()];
    while (c.q <= c.y);
    const u64 p = small[rng() % small.size()];
    const u32 omega = omega_mq(p, c);
    u32 brute = 0;
    for (u64 n = 1; n <= p; ++n) {
      bool hit = false;
      for (u64 h : c.H.H) {
        const u64 t = (n + (h % p) * (c.q % p)) % p;
        hit = hit || t == 0 || (c.m % p) * t % p == 1 % p;
      }
      brute += hit;
    }
    mismatch += omega != brute;
    over += omega > 2 * k;
    bool condition = static_cast<double>(p) > w && p <= c.y && c.M % p != 0 && c.m % p != 0;
    for (u64 h : c.H.H)
      for (u64 g : c.H.H) {
        // m q (h - g) - 1 mod p, with h - g reduced mod p
        const u64 d = (h % p + p - g % p) % p;
        if (((c.m % p) * (c.q % p) % p * d % p + p - 1) % p == 0) condition = false;
      }
    if (condition) {
      ++condition_held;
      implication_failures += omega != 2 * k;
    }
  }
  std::ostringstream d;
  d << "500 contexts: brute mismatches=" << mismatch << " above 2k=" << over << " condition held=" << condition_held
    << " of which omega != 2k: " << implication_failures;
  return {mismatch == 0 && over == 0 && implication_failures == 0 && condition_held > 0, d.str()};
}

Outcome criterion_vacuity() {
  std::mt19937_64 rng(707);
  u64 bad = 0;
  for (int t = 0; t < 100; ++t) {
    const u64 M = 1 + 2 * (rng() % 5000), m = 1 + 2 * (rng() % 5000);
    const u64 y = 2 + rng() % 100, z = y + rng() % 1000, V = z + 1 + rng() % 20'000;
    bad += count_Rm_exact(V, m, y, z, M) != 0 || mertens_ratio(y, M, m) != 0;
  }
  return {bad == 0, "100 odd pairs, nonzero results=" + std::to_string(bad)};
}

Outcome criterion_e_class() {
  std::mt19937_64 rng(808);
  u64 instances = 0, violations = 0, nonempty = 0;
  while (instances < 100) {
    const u64 y = 2 + rng() % 15, z = y + 2 + rng() % 200;
    std::vector<u64> mid;
    for (u64 p : oracle::primes_upto(z))
      if (p > y) mid.push_back(p);
    if (mid.empty()) continue;
    u64 M = mid[rng() % mid.size()] * (1 + rng() % 6);
    if (const u64 q = mid[rng() % mid.size()]; rng() % 2 && M % q != 0) M *= q;
    u64 a = 1;
    while (std::gcd(a, M) != 1) ++a;
    ParamOverrides o;
    o.y = y;
    o.z = z;
    o.U = 1 + rng() % std::min<u64>(z * z, 50'000);
    const auto params = derive_params(std::max<u64>(z + 1, 20), M, a, 0.1, 1.0, o);
    const auto cls = classify_survivors(params, run_phases(params).survivors);
    const u64 omega = totient_and_omega(M).omega;
    violations += cls.E.size() * y > params.U * omega;
    nonempty += !cls.E.empty();
    ++instances;
  }
  return {violations == 0 && nonempty > 0, "100 instances, nonempty E in " + std::to_string(nonempty) +
                                               ", violations=" + std::to_string(violations)};
}

Outcome criterion_scaling() {
  const auto params = derive_params(10'000, 1, 0, 0.1, 1.0);
  const auto c = construct(params, false);
  const double formula = formula_U(params.x, 1, params.y, params.C_U);
  std::ostringstream d;
  d << "y=" << params.y << " z=" << params.z << " U_max=" << c.U_max << " pi(x)=1229 formula U=" << formula
    << " verify=" << (c.verdict.valid ? "valid" : c.verdict.reason);
  return {c.U_max > 1229 && prime_count(10'000) == 1229 && c.verdict.valid, d.str()};
}

Outcome criterion_bounds() {
  const auto params = derive_params(2000, 1, 0, 0.1, 1.0);
  const auto c = construct(params, true, 1'000'000);
  std::ostringstream d;
  d << "y=" << params.y << " z=" << params.z << " U_max=" << c.U_max << " digits=" << c.cert.primorial_digits;
  if (c.cert.gap) d << " gap=" << c.cert.gap->get_str() << " grade=" << to_string(*c.cert.primality_grade);
  d << " verify=" << (c.verdict.valid ? "valid" : c.verdict.reason);
  const bool endpoints = c.cert.has_bounds() && oracle::gmp_probable_prime(*c.cert.prev_prime) &&
                         oracle::gmp_probable_prime(*c.cert.next_prime);
  return {c.verdict.valid && c.cert.gap && *c.cert.gap >= big(c.U_max) && endpoints, d.str()};
}

Outcome criterion_r0_density() {
  const auto small = derive_params(1000, 1, 0, 0.1, 1.0);
  const auto large = derive_params(10'000, 1, 0, 0.1, 1.0);
  auto enumerate = [](u64 U, u64 y) {
    u64 Py = 1;
    for (u64 p : oracle::primes_upto(y)) Py *= p;
    u64 count = 0;
    for (u64 n = 1; n <= U; ++n)
      if (oracle::smooth(n, y) && std::gcd(n - 1, Py) == 1) ++count;
    return count;
  };
  const u64 c_small = count_R0_exact(small.U, small.y, 1), c_large = count_R0_exact(large.U, large.y, 1);
  const bool oracle_ok = c_small == enumerate(small.U, small.y) && c_large == enumerate(large.U, large.y);
  const double d_small = static_cast<double>(c_small) / static_cast<double>(small.U);
  const double d_large = static_cast<double>(c_large) / static_cast<double>(large.U);
  std::ostringstream d;
  d << "x=1000: " << c_small << "/" << small.U << "=" << d_small << "; x=10000: " << c_large << "/" << large.U << "="
    << d_large << "; oracle " << (oracle_ok ? "agrees" : "disagrees");
  return {oracle_ok && d_large < d_small, d.str()};
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "toy end-to-end, M=1 a=0", 1.0, [] { return toy_end_to_end(1, 0, 17, 18); }},
      {2, "toy end-to-end, M=3 a=1", 1.0, [] { return toy_end_to_end(3, 1, 13, 39); }},
      {3, "sieve equivalence", 10.0, criterion_sieve_equivalence},
      {5, "survivor main-term ratio", 60.0, criterion_main_term},
      {6, "omega function properties", 10.0, criterion_omega},
      {7, "odd pair vacuity", 10.0, criterion_vacuity},
      {8, "E-class bound", 10.0, criterion_e_class},
      {9, "scaling run x=10^4", 300.0, criterion_scaling},
      {10, "bounding primes x=2000", 600.0, criterion_bounds},
      {11, "R0 density decreases", 60.0, criterion_r0_density},
      // audits every certificate produced above
      {4, "CRT properties", 60.0, criterion_crt},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.limit_seconds;
    const bool pass = out.pass && in_time;
    failed += !pass;
    std::printf("[%s] criterion %2d: %s (%.3f s of %.0f s) %s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, seconds,
                c.limit_seconds, out.detail.c_str(), in_time ? "" : " [over time limit]");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
