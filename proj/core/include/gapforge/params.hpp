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

#ifndef GAPFORGE_PARAMS_HPP
#define GAPFORGE_PARAMS_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "gapforge/primes.hpp"

namespace gapforge {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// nu-fold iterated natural logarithm. Throws DomainError when an
// intermediate value is not positive.
double iterated_log(double x, unsigned nu);

struct ParamOverrides {
  std::optional<u64> y;
  std::optional<u64> z;
  std::optional<u64> U;

  bool any() const { return y || z || U; }
};

// Every scalar of the construction.
//
//   y = floor(exp((1 - eps) log x log_3 x / log_2 x))
//   z = floor(x / log_2 x)
//   U = floor(C_U (phi(M)/M) x log y / log_2 x)
//
// w = log_4 x (clamped to 0 when undefined or negative) bounds the primorial
// that smooths the admissible tuple; z0 = log x log_3 x / log_2 x. The target
// X satisfies x = (1 - eps) log X, so log_X = x / (1 - eps); implied_X itself
// overflows to infinity beyond x ~ 640.
struct SieveParams {
  u64 x = 0;
  u64 M = 1;
  u64 a = 0;
  double epsilon = 0.1;
  double C_U = 1.0;
  double kappa = 1.0;
  u64 y = 0;
  u64 z = 0;
  u64 U = 0;
  double w = 0.0;
  double z0 = 0.0;
  double log_X = 0.0;
  double implied_X = 0.0;
  bool overrides_used = false;
};

SieveParams derive_params(u64 x, u64 M, u64 a, double epsilon, double C_U,
                          const ParamOverrides& overrides = {}, double kappa = 1.0);

// The U formula alone, for reporting achieved U against the asymptotic target.
double formula_U(u64 x, u64 M, u64 y, double C_U);

enum class ModulusCheck { accepted, rejected_coprimality, rejected_size, rejected_omega };

const char* to_string(ModulusCheck c);

struct ModulusVerdict {
  ModulusCheck status = ModulusCheck::accepted;
  std::string reason;
  // omega(M) <= exp(log_2 M log_4 M / log_3 M) only binds once log_4 M > 0.
  bool omega_check_vacuous = true;

  bool accepted() const { return status == ModulusCheck::accepted; }
};

// Gcd, the size bound M <= kappa x^(1/5), then the omega(M) bound. Returns the
// first failure.
ModulusVerdict check_modulus(u64 M, u64 a, u64 x, double kappa = 1.0);

}  // namespace gapforge

#endif  // GAPFORGE_PARAMS_HPP
