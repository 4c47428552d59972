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

#include "gapforge/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

namespace gapforge {

namespace {

std::optional<double> ratio_of(double exact, double predicted) {
  if (!(predicted > 0.0) || !std::isfinite(predicted)) return std::nullopt;
  return exact / predicted;
}

nlohmann::ordered_json opt(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "n/a"; }

}  // namespace

std::vector<u64> default_m_list(const SieveParams& params, std::size_t cap) {
  std::vector<u64> out;
  const double log2x = std::log(std::log(static_cast<double>(params.x)));
  const double limit = static_cast<double>(params.U) / (static_cast<double>(params.z) * log2x * log2x);
  for (u64 m = 1; static_cast<double>(m) < limit && out.size() < cap; ++m)
    if (parity_compliant(m, params.M)) out.push_back(m);
  return out;
}

EstimateReport estimate_report(const SieveParams& params, const std::vector<u64>& m_list,
                               const ReportOptions& options) {
  EstimateReport report;
  report.params = params;
  const u64 V = options.V.value_or(params.x);

  std::set<u64> seen;
  for (u64 m : m_list) {
    if (m == 0 || !parity_compliant(m, params.M) || !seen.insert(m).second) continue;
    RmRow row;
    row.m = m;
    row.V = V;
    row.exact = count_Rm_exact(V, m, params.y, params.z, params.M);
    row.predicted = survivor_main_term(V, params.z, params.x, params.y, params.M, m);
    row.ratio = ratio_of(static_cast<double>(row.exact), row.predicted);
    row.Rm_exact = count_Rm_exact(params.U / m, m, params.y, params.z, params.M);
    row.Rm_predicted = predicted_Rm(params.U, m, params.x, params.y, params.M, options.constants);
    row.Rm_ratio = ratio_of(static_cast<double>(row.Rm_exact), row.Rm_predicted);
    report.rows.push_back(row);
  }

  const double logx = std::log(static_cast<double>(params.x));
  report.R0.exact = count_R0_exact(params.U, params.y, params.M);
  report.R0.reference = static_cast<double>(params.x) / std::pow(logx, 1.0 + params.epsilon);
  report.R0.ratio = ratio_of(static_cast<double>(report.R0.exact), report.R0.reference);

  const double log2x = std::log(logx);
  const double K = std::max(2.0, log2x * log2x);
  report.sums = sum_Rm_measured(K, params.U, params.z, params.y, params.M, params.x);
  report.sums_ratio = ratio_of(static_cast<double>(report.sums.measured), report.sums.bound);

  report.theorem.C = params.C_U;
  report.theorem.log_X = params.log_X;
  const double l1 = params.log_X;
  const double l2 = std::log(l1), l3 = std::log(l2), l4 = std::log(l3);
  if (l1 > 0 && l2 > 0 && l3 > 0 && l4 > 0) {
    const double phi = static_cast<double>(totient_and_omega(params.M).phi);
    report.theorem.value = params.C_U * phi * l1 * l2 * l4 / (l3 * l3);
  }
  return report;
}

nlohmann::ordered_json report_to_json(const EstimateReport& report) {
  const auto& p = report.params;
  nlohmann::ordered_json doc;
  doc["params"] = {{"x", p.x},         {"M", p.M},         {"a", p.a},   {"epsilon", p.epsilon},
                   {"C_U", p.C_U},     {"y", p.y},         {"z", p.z},   {"U", p.U},
                   {"w", p.w},         {"z0", p.z0},       {"log_X", p.log_X}};
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["m"] = r.m;
    row["V"] = r.V;
    row["exact"] = r.exact;
    row["predicted"] = r.predicted;
    row["ratio"] = opt(r.ratio);
    row["Rm_exact"] = r.Rm_exact;
    row["Rm_predicted"] = r.Rm_predicted;
    row["Rm_ratio"] = opt(r.Rm_ratio);
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  doc["R0"] = {{"exact", report.R0.exact}, {"reference", report.R0.reference}, {"ratio", opt(report.R0.ratio)}};
  doc["sums"] = {{"K", report.sums.K},
                 {"m_lo", report.sums.m_lo},
                 {"m_hi", report.sums.m_hi},
                 {"measured", report.sums.measured},
                 {"bound", report.sums.bound},
                 {"ratio", opt(report.sums_ratio)}};
  doc["theorem_reference"] = {
      {"C", report.theorem.C}, {"log_X", report.theorem.log_X}, {"value", opt(report.theorem.value)}};
  return doc;
}

std::string report_to_text(const EstimateReport& report) {
  const auto& p = report.params;
  std::ostringstream os;
  os << "params  x=" << p.x << " M=" << p.M << " a=" << p.a << " epsilon=" << fmt(p.epsilon)
     << " C_U=" << fmt(p.C_U) << " y=" << p.y << " z=" << p.z << " U=" << p.U << "\n\n";
  if (!report.rows.empty()) {
    os << std::left << std::setw(8) << "m" << std::setw(12) << "V" << std::setw(10) << "exact"
       << std::setw(20) << "predicted" << std::setw(20) << "ratio" << std::setw(10) << "Rm_exact"
       << std::setw(20) << "Rm_predicted" << "Rm_ratio\n";
    for (const auto& r : report.rows)
      os << std::left << std::setw(8) << r.m << std::setw(12) << r.V << std::setw(10) << r.exact
         << std::setw(20) << fmt(r.predicted) << std::setw(20) << fmt(r.ratio) << std::setw(10) << r.Rm_exact
         << std::setw(20) << fmt(r.Rm_predicted) << fmt(r.Rm_ratio) << "\n";
    os << "\n";
  }
  os << std::left << std::setw(20) << "R0" << "exact=" << report.R0.exact << " reference=" << fmt(report.R0.reference)
     << " ratio=" << fmt(report.R0.ratio) << "\n";
  os << std::left << std::setw(20) << "sums" << "K=" << fmt(report.sums.K) << " m=[" << report.sums.m_lo << ","
     << report.sums.m_hi << "] measured=" << report.sums.measured << " bound=" << fmt(report.sums.bound)
     << " ratio=" << fmt(report.sums_ratio) << "\n";
  os << std::left << std::setw(20) << "theorem_reference" << "C=" << fmt(report.theorem.C)
     << " log_X=" << fmt(report.theorem.log_X) << " value=" << fmt(report.theorem.value) << "\n";
  return os.str();
}

}  // namespace gapforge
