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

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "gapforge/gapforge.hpp"

namespace gapforge::cli {

namespace {

ParamOverrides overrides_of(const RunConfig& c) { return ParamOverrides{c.y, c.z, c.U}; }

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

// Writes text to the output path, or to out when no path is configured.
bool emit(const RunConfig& config, const std::string& text, std::ostream& out, std::ostream& err) {
  if (config.output_path.empty()) {
    out << text;
    return true;
  }
  std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text)) {
    err << "error: cannot write " << config.output_path << "\n";
    return false;
  }
  return true;
}

}  // namespace

int cmd_params(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ModulusVerdict verdict = check_modulus(config.M, config.a, config.x, config.kappa);
  SieveParams p;
  try {
    p = derive_params(config.x, config.M, config.a, config.epsilon, config.C_U, overrides_of(config), config.kappa);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (config.format == Format::json) {
    nlohmann::ordered_json doc;
    doc["x"] = p.x;
    doc["M"] = p.M;
    doc["a"] = p.a;
    doc["epsilon"] = p.epsilon;
    doc["C_U"] = p.C_U;
    doc["kappa"] = p.kappa;
    doc["y"] = p.y;
    doc["z"] = p.z;
    doc["U"] = p.U;
    doc["w"] = p.w;
    doc["z0"] = p.z0;
    doc["log_X"] = p.log_X;
    doc["implied_X"] = std::isfinite(p.implied_X) ? nlohmann::ordered_json(p.implied_X) : nlohmann::ordered_json(nullptr);
    doc["overrides_used"] = p.overrides_used;
    doc["modulus_check"] = to_string(verdict.status);
    if (!verdict.reason.empty()) doc["modulus_reason"] = verdict.reason;
    doc["omega_check_vacuous"] = verdict.omega_check_vacuous;
    if (!emit(config, doc.dump(2) + "\n", out, err)) return kExitUsage;
  } else {
    std::ostringstream os;
    os << "x = " << p.x << "\nM = " << p.M << "\na = " << p.a << "\nepsilon = " << num(p.epsilon)
       << "\nC_U = " << num(p.C_U) << "\nkappa = " << num(p.kappa) << "\ny = " << p.y << "\nz = " << p.z
       << "\nU = " << p.U << "\nw = " << num(p.w) << "\nz0 = " << num(p.z0) << "\nlog X = " << num(p.log_X)
       << "\nimplied X = " << num(p.implied_X) << "\noverrides_used = " << (p.overrides_used ? "true" : "false")
       << "\nmodulus check = " << to_string(verdict.status);
    if (!verdict.reason.empty()) os << " (" << verdict.reason << ")";
    os << "\nomega check = " << (verdict.omega_check_vacuous ? "vacuous-pass" : "enforced") << "\n";
    if (!emit(config, os.str(), out, err)) return kExitUsage;
  }
  if (!verdict.accepted()) {
    err << "rejected: " << to_string(verdict.status) << ": " << verdict.reason << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_construct(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ModulusVerdict verdict = check_modulus(config.M, config.a, config.x, config.kappa);
  if (verdict.status == ModulusCheck::rejected_coprimality) {
    err << "error: " << verdict.reason << "\n";
    return kExitUsage;
  }
  if (!verdict.accepted()) {
    if (!config.force) {
      err << "error: modulus rejected (" << to_string(verdict.status) << "): " << verdict.reason
          << "; pass --force to continue\n";
      return kExitUsage;
    }
    err << "warning: modulus rejected (" << to_string(verdict.status) << "), continuing under --force\n";
  }

  SieveParams params;
  try {
    params = derive_params(config.x, config.M, config.a, config.epsilon, config.C_U, overrides_of(config),
                           config.kappa);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::ostringstream summary;
  ResidueAssignment assignment;
  if (config.U) {
    auto run = cover_interval(params);
    if (!run.complete) {
      err << "error: greedy covering left " << run.uncovered.size() << " of " << run.survivors.size()
          << " survivors of [1, " << params.U << "] uncovered\n";
      return kExitVerifyFailed;
    }
    assignment = std::move(run.assignment);
    summary << "U = " << params.U << " (fixed)\n";
  } else {
    auto best = max_covered_U(params);
    params.U = best.U_max;
    assignment = std::move(best.assignment);
    summary << "U_max = " << params.U << "\n";
  }
  try {
    summary << "formula U = " << num(formula_U(params.x, params.M, params.y, params.C_U)) << "\n";
  } catch (const std::exception&) {
  }

  if (config.with_bounds && config.x > 3000)
    err << "warning: bounding-prime search at x > 3000 runs probable-prime tests on numbers with thousands of "
           "digits and may take a long time\n";

  CertificateOptions options;
  options.with_bounds = config.with_bounds;
  options.search.presieve_depth = config.presieve_depth;
  options.threads = config.thread_count;
  GapCertificate cert;
  try {
    cert = build_certificate(params, assignment, options);
  } catch (const WitnessFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const SearchExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }

  summary << "primorial_digits = " << cert.primorial_digits << "\n";
  if (cert.gap)
    summary << "gap = " << cert.gap->get_str() << " (" << to_string(*cert.primality_grade) << ")\n";

  const Verdict check = verify_certificate(cert, VerifyOptions{config.presieve_depth, config.thread_count});
  summary << "verified = " << (check.valid ? "yes" : "no: " + check.reason) << "\n";

  const std::string document = serialize_certificate(cert);
  if (!config.output_path.empty()) {
    if (!emit(config, document, out, err)) return kExitUsage;
    out << summary.str();
  } else if (config.format == Format::json) {
    out << document;
    err << summary.str();
  } else {
    out << summary.str();
  }
  return check.valid ? kExitOk : kExitVerifyFailed;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  GapCertificate cert;
  try {
    cert = read_certificate(config.input_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const Verdict v = verify_certificate(cert, VerifyOptions{config.presieve_depth, config.thread_count});
  if (v.valid) {
    out << "valid\n";
    return kExitOk;
  }
  out << "invalid: " << v.reason << "\n";
  return kExitVerifyFailed;
}

int cmd_estimate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  SieveParams params;
  try {
    params = derive_params(config.x, config.M, config.a, config.epsilon, config.C_U, overrides_of(config),
                           config.kappa);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const auto m_list = config.m_list.empty() ? default_m_list(params) : config.m_list;
  ReportOptions options;
  options.V = config.V;
  const auto report = estimate_report(params, m_list, options);
  const std::string text =
      config.format == Format::json ? report_to_json(report).dump(2) + "\n" : report_to_text(report);
  return emit(config, text, out, err) ? kExitOk : kExitUsage;
}

// --------------------------------------------------------------------------

namespace {

void add_common(CLI::App* sub, RunConfig& c, bool requires_x) {
  auto* x = sub->add_option("--x", c.x, "Sieving limit x");
  if (requires_x) x->required();
  sub->add_option("--M", c.M, "Modulus M")->check(CLI::PositiveNumber);
  sub->add_option("--a", c.a, "Residue a (mod M), coprime to M");
  sub->add_option("--epsilon", c.epsilon, "epsilon in (0, 1)");
  sub->add_option("--C_U", c.C_U, "Constant C_U in the U formula");
  sub->add_option("--kappa", c.kappa, "Size-constraint constant kappa");
  sub->add_option("--y", c.y, "Override y (smoothness bound)");
  sub->add_option("--z", c.z, "Override z (phase-1 limit)");
  sub->add_option("--U", c.U, "Override U (fixed interval length)");
}

void add_output(CLI::App* sub, RunConfig& c) {
  sub->add_option("-o,--output", c.output_path, "Output file (default: standard output)");
  sub->add_option("--format", c.format, "Output format: text or json")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::text}, {"json", Format::json}}));
}

unsigned parse_threads(const std::string& spec) {
  if (spec == "auto") return std::max(1u, std::thread::hardware_concurrency());
  std::size_t used = 0;
  const unsigned long v = std::stoul(spec, &used);
  if (used != spec.size() || v == 0) throw std::invalid_argument("thread count must be a positive integer or auto");
  return static_cast<unsigned>(v);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string threads;
  if (const char* env = std::getenv("GAPFORGE_THREADS")) threads = env;

  CLI::App app{"gapforge: long prime gaps in arithmetic progressions"};
  app.require_subcommand(1);
  app.add_option("--threads", threads, "Worker threads (positive integer or auto)");

  auto* params = app.add_subcommand("params", "Derive and check the construction parameters");
  add_common(params, config, true);
  add_output(params, config);

  auto* construct = app.add_subcommand("construct", "Cover [1, U], place the block by CRT and certify it");
  add_common(construct, config, true);
  add_output(construct, config);
  construct->add_flag("--bounds", config.with_bounds, "Search the bounding primes of the progression");
  construct->add_flag("--force", config.force, "Continue when the size or omega(M) constraint rejects M");
  construct->add_option("--presieve", config.presieve_depth, "Trial-division depth before probable-prime tests");
  construct->add_option("--threads", threads, "Worker threads (positive integer or auto)");

  auto* verify = app.add_subcommand("verify", "Re-check a certificate from scratch");
  verify->add_option("certificate", config.input_path, "Certificate file")->required();
  verify->add_option("--presieve", config.presieve_depth, "Trial-division depth before probable-prime tests");
  verify->add_option("--threads", threads, "Worker threads (positive integer or auto)");

  auto* estimate = app.add_subcommand("estimate", "Measured counts against their predicted main terms");
  add_common(estimate, config, true);
  add_output(estimate, config);
  estimate->add_option("--m", config.m_list, "Values of m (repeatable)");
  estimate->add_option("--V", config.V, "Window end V for the main-term rows (default x)");

  std::vector<std::string> argv_storage{"gapforge"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    config.thread_count = threads.empty() ? 1 : parse_threads(threads);
  } catch (const std::exception& e) {
    err << "error: --threads: " << e.what() << "\n";
    return kExitUsage;
  }

  if (params->parsed()) return cmd_params(config, out, err);
  if (construct->parsed()) return cmd_construct(config, out, err);
  if (verify->parsed()) return cmd_verify(config, out, err);
  return cmd_estimate(config, out, err);
}

}  // namespace gapforge::cli
