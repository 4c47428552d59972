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

#ifndef GAPFORGE_REPORT_HPP
#define GAPFORGE_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gapforge/analytic.hpp"
#include "gapforge/params.hpp"

namespace gapforge {

// Measured counts next to their predicted main terms. Ratios are
// exact / predicted and absent when the prediction is zero.
struct RmRow {
  u64 m = 0;
  u64 V = 0;
  u64 exact = 0;                 // #{z < p <= V : gcd(mp - 1, P_M(y)) = 1}
  double predicted = 0;          // (V - z)/log x * prod (p-2)/(p-1)
  std::optional<double> ratio;
  u64 Rm_exact = 0;              // same count at V = U/m
  double Rm_predicted = 0;       // asymptotic |R_m|
  std::optional<double> Rm_ratio;
};

struct R0Row {
  u64 exact = 0;
  double reference = 0;          // x / (log x)^(1 + eps)
  std::optional<double> ratio;
};

struct TheoremReference {
  double C = 0;
  double log_X = 0;
  std::optional<double> value;   // C phi(M) log X log_2 X log_4 X / (log_3 X)^2
};

struct EstimateReport {
  SieveParams params;
  std::vector<RmRow> rows;
  R0Row R0;
  RmSum sums;
  std::optional<double> sums_ratio;
  TheoremReference theorem;
};

struct ReportOptions {
  std::optional<u64> V;          // window end for the main-term rows; defaults to x
  AnalyticConstants constants{};
};

// Parity-compliant m below U / (z (log_2 x)^2), at most cap of them.
std::vector<u64> default_m_list(const SieveParams& params, std::size_t cap = 64);

// Rows for each m in m_list that satisfies the parity restriction, in input
// order (duplicates dropped).
EstimateReport estimate_report(const SieveParams& params, const std::vector<u64>& m_list,
                               const ReportOptions& options = {});

nlohmann::ordered_json report_to_json(const EstimateReport& report);
std::string report_to_text(const EstimateReport& report);

}  // namespace gapforge

#endif  // GAPFORGE_REPORT_HPP
