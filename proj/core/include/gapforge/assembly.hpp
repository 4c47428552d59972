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

#ifndef GAPFORGE_ASSEMBLY_HPP
#define GAPFORGE_ASSEMBLY_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gapforge/construction.hpp"
#include "gapforge/params.hpp"
#include "gapforge/primes.hpp"

namespace gapforge {

class InconsistentAssignment : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonCoprimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class WitnessFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The unique U0 in [window_low, window_low + P) with U0 == -a_p (mod p) for
// every assigned p, built by incremental CRT. The assignment's primes must be
// exactly the primes dividing primorial.value.
BigInt solve_U0(const ResidueAssignment& assignment, const BigInt& window_low,
                const PrimorialValue& primorial);

// Least r >= 0 with M r == -1 (mod primorial.value).
BigInt modular_inverse_r(u64 M, const PrimorialValue& primorial);

enum class PrimalityGrade { proven, probable };

const char* to_string(PrimalityGrade g);

// A run of U consecutive composites M(U0 + a r + j) + a, j = 1..U, in the
// progression a (mod M), with the prime certifying each element and
// optionally the primes of the progression that bracket the run.
struct GapCertificate {
  u64 M = 1;
  u64 a = 0;
  u64 x = 0;
  u64 y = 0;
  u64 z = 0;
  u64 U = 0;
  std::vector<std::pair<u64, u64>> assignment;  // (p, a_p), ascending p
  BigInt U0;
  BigInt r;
  u64 primorial_digits = 0;
  BigInt block_start;                           // M(U0 + a r) + a
  std::vector<u64> witnesses;                   // witnesses[j-1] divides block_start + jM
  std::optional<BigInt> prev_prime;
  std::optional<BigInt> next_prime;
  std::optional<PrimalityGrade> primality_grade;
  std::optional<BigInt> gap;

  bool has_bounds() const { return prev_prime.has_value() && next_prime.has_value(); }
};

struct CertificateOptions {
  bool with_bounds = false;
  ApSearchOptions search{};
  unsigned threads = 1;
};

// Places the covered interval [1, params.U] in the progression: CRT for U0 in
// [ceil(x/M), ceil(x/M) + P_M(x)), r = -M^{-1} mod P_M(x), a witness for each
// element checked with exact arithmetic, and optionally the bounding primes.
// Throws WitnessFailure if any element is not divisible by its witness.
GapCertificate build_certificate(const SieveParams& params, const ResidueAssignment& assignment,
                                 const CertificateOptions& options = {});

struct Verdict {
  bool valid = true;
  std::string reason;

  static Verdict ok() { return {}; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

struct VerifyOptions {
  u64 presieve_depth = 1'000'000;
  unsigned threads = 1;
};

// Re-derives every property of a certificate from its own fields without
// trusting stored intermediates. Hostile input is allowed.
Verdict verify_certificate(const GapCertificate& cert, const VerifyOptions& options = {});

// ceil(x / M)
BigInt window_low(u64 x, u64 M);

}  // namespace gapforge

#endif  // GAPFORGE_ASSEMBLY_HPP
