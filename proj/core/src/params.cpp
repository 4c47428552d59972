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

#include "gapforge/params.hpp"

#include <cmath>
#include <numeric>

namespace gapforge {

double iterated_log(double x, unsigned nu) {
  if (nu == 0) throw std::invalid_argument("iterated_log: nu must be positive");
  double v = x;
  for (unsigned i = 0; i < nu; ++i) {
    if (!(v > 0.0)) throw DomainError("iterated_log: non-positive intermediate value");
    v = std::log(v);
  }
  return v;
}

double formula_U(u64 x, u64 M, u64 y, double C_U) {
  const auto [phi, omega] = totient_and_omega(M);
  (void)omega;
  const double log2x = iterated_log(static_cast<double>(x), 2);
  if (!(log2x > 0.0)) throw DomainError("formula_U: log log x must be positive");
  return C_U * (static_cast<double>(phi) / static_cast<double>(M)) * static_cast<double>(x) *
         std::log(static_cast<double>(y)) / log2x;
}

SieveParams derive_params(u64 x, u64 M, u64 a, double epsilon, double C_U,
                          const ParamOverrides& overrides, double kappa) {
  if (x < 20) throw std::invalid_argument("derive_params: x must be >= 20");
  if (M == 0) throw std::invalid_argument("derive_params: M must be >= 1");
  if (std::gcd(M, a) != 1) throw std::invalid_argument("derive_params: gcd(M, a) must be 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("derive_params: epsilon must lie in (0, 1)");
  if (!(C_U > 0.0)) throw std::invalid_argument("derive_params: C_U must be positive");
  if (!(kappa > 0.0)) throw std::invalid_argument("derive_params: kappa must be positive");

  SieveParams p;
  p.x = x;
  p.M = M;
  p.a = a;
  p.epsilon = epsilon;
  p.C_U = C_U;
  p.kappa = kappa;
  p.overrides_used = overrides.any();

  const double xd = static_cast<double>(x);
  const double log1 = std::log(xd);
  const double log2 = std::log(log1);  // x >= 20 keeps both positive
  const double log3 = std::log(log2);
  const bool log3_defined = log3 > 0.0;

  p.z0 = log1 * log3 / log2;
  p.w = log3_defined ? std::max(0.0, std::log(log3)) : 0.0;
  p.log_X = xd / (1.0 - epsilon);
  p.implied_X = std::exp(p.log_X);

  if (overrides.y) {
    p.y = *overrides.y;
  } else {
    if (!log3_defined) throw DomainError("derive_params: log_3 x <= 0, y is undefined; override y");
    p.y = static_cast<u64>(std::floor(std::exp((1.0 - epsilon) * log1 * log3 / log2)));
    if (p.y < 2) throw DomainError("derive_params: derived y < 2 (x too small); override y");
  }

  if (overrides.z) {
    p.z = *overrides.z;
  } else {
    p.z = static_cast<u64>(std::floor(xd / log2));
    if (!(p.y < p.z && p.z < x))
      throw DomainError("derive_params: derived z violates y < z < x; override z");
  }

  if (overrides.U) {
    p.U = *overrides.U;
  } else {
    if (p.y < 2) throw DomainError("derive_params: y < 2 leaves U undefined; override U");
    p.U = static_cast<u64>(std::floor(formula_U(x, M, p.y, C_U)));
    if (p.U < 1) throw DomainError("derive_params: derived U < 1; override U");
  }
  return p;
}

const char* to_string(ModulusCheck c) {
  switch (c) {
    case ModulusCheck::accepted: return "accepted";
    case ModulusCheck::rejected_coprimality: return "coprimality";
    case ModulusCheck::rejected_size: return "size";
    case ModulusCheck::rejected_omega: return "omega";
  }
  return "accepted";
}

ModulusVerdict check_modulus(u64 M, u64 a, u64 x, double kappa) {
  if (M == 0) throw std::invalid_argument("check_modulus: M must be >= 1");
  ModulusVerdict v;
  if (std::gcd(M, a) != 1) {
    v.status = ModulusCheck::rejected_coprimality;
    v.reason = "gcd(M, a) = " + std::to_string(std::gcd(M, a)) + " != 1";
    return v;
  }
  const double bound = kappa * std::pow(static_cast<double>(x), 0.2);
  if (static_cast<double>(M) > bound) {
    v.status = ModulusCheck::rejected_size;
    v.reason = "M = " + std::to_string(M) + " exceeds kappa * x^(1/5) = " + std::to_string(bound);
    return v;
  }
  // log_4 M > 0 requires M > e^(e^e) ~ 3.8e6.
  const double Md = static_cast<double>(M);
  if (M > 1 && std::log(Md) > 0 && std::log(std::log(Md)) > 0 &&
      std::log(std::log(std::log(Md))) > 0 && std::log(std::log(std::log(std::log(Md)))) > 0) {
    v.omega_check_vacuous = false;
    const double l2 = iterated_log(Md, 2), l3 = iterated_log(Md, 3), l4 = iterated_log(Md, 4);
    const double omega_bound = std::exp(l2 * l4 / l3);
    const u32 omega = totient_and_omega(M).omega;
    if (static_cast<double>(omega) > omega_bound) {
      v.status = ModulusCheck::rejected_omega;
      v.reason = "omega(M) = " + std::to_string(omega) + " exceeds " + std::to_string(omega_bound);
      return v;
    }
  }
  return v;
}

}  // namespace gapforge
