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

#include "gapforge/certificate_io.hpp"

#include <fstream>
#include <sstream>

namespace gapforge {

namespace {

using json = nlohmann::json;

BigInt parse_decimal(const json& v, const char* field) {
  if (!v.is_string()) throw CertificateParseError(std::string(field) + ": expected a decimal string");
  const auto& s = v.get_ref<const std::string&>();
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw CertificateParseError(std::string(field) + ": not a nonnegative decimal integer");
  return BigInt(s, 10);
}

u64 parse_u64(const json& v, const char* field) {
  if (!v.is_number_unsigned()) throw CertificateParseError(std::string(field) + ": expected a nonnegative integer");
  return v.get<u64>();
}

const json& require(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end()) throw CertificateParseError(std::string("missing field: ") + field);
  return *it;
}

}  // namespace

nlohmann::ordered_json certificate_to_json(const GapCertificate& cert) {
  nlohmann::ordered_json doc;
  doc["M"] = cert.M;
  doc["a"] = cert.a;
  doc["x"] = cert.x;
  doc["y"] = cert.y;
  doc["z"] = cert.z;
  doc["U"] = cert.U;
  auto pairs = nlohmann::ordered_json::array();
  for (const auto& [p, ap] : cert.assignment) pairs.push_back({p, ap});
  doc["assignment"] = std::move(pairs);
  doc["U0"] = cert.U0.get_str();
  doc["r"] = cert.r.get_str();
  doc["primorial_digits"] = cert.primorial_digits;
  doc["block_start"] = cert.block_start.get_str();
  doc["witnesses"] = cert.witnesses;
  if (cert.prev_prime) doc["prev_prime"] = cert.prev_prime->get_str();
  if (cert.next_prime) doc["next_prime"] = cert.next_prime->get_str();
  if (cert.primality_grade) doc["primality_grade"] = to_string(*cert.primality_grade);
  if (cert.gap) doc["gap"] = cert.gap->get_str();
  return doc;
}

GapCertificate certificate_from_json(const json& doc) {
  if (!doc.is_object()) throw CertificateParseError("certificate must be a JSON object");
  GapCertificate cert;
  cert.M = parse_u64(require(doc, "M"), "M");
  cert.a = parse_u64(require(doc, "a"), "a");
  cert.x = parse_u64(require(doc, "x"), "x");
  cert.y = parse_u64(require(doc, "y"), "y");
  cert.z = parse_u64(require(doc, "z"), "z");
  cert.U = parse_u64(require(doc, "U"), "U");

  const json& pairs = require(doc, "assignment");
  if (!pairs.is_array()) throw CertificateParseError("assignment: expected an array");
  cert.assignment.reserve(pairs.size());
  for (const auto& entry : pairs) {
    if (!entry.is_array() || entry.size() != 2) throw CertificateParseError("assignment: entries must be [p, a_p]");
    cert.assignment.emplace_back(parse_u64(entry[0], "assignment.p"), parse_u64(entry[1], "assignment.a_p"));
  }

  cert.U0 = parse_decimal(require(doc, "U0"), "U0");
  cert.r = parse_decimal(require(doc, "r"), "r");
  cert.primorial_digits = parse_u64(require(doc, "primorial_digits"), "primorial_digits");
  cert.block_start = parse_decimal(require(doc, "block_start"), "block_start");

  const json& witnesses = require(doc, "witnesses");
  if (!witnesses.is_array()) throw CertificateParseError("witnesses: expected an array");
  cert.witnesses.reserve(witnesses.size());
  for (const auto& w : witnesses) cert.witnesses.push_back(parse_u64(w, "witnesses"));

  if (auto it = doc.find("prev_prime"); it != doc.end()) cert.prev_prime = parse_decimal(*it, "prev_prime");
  if (auto it = doc.find("next_prime"); it != doc.end()) cert.next_prime = parse_decimal(*it, "next_prime");
  if (auto it = doc.find("gap"); it != doc.end()) cert.gap = parse_decimal(*it, "gap");
  if (auto it = doc.find("primality_grade"); it != doc.end()) {
    if (!it->is_string()) throw CertificateParseError("primality_grade: expected a string");
    const auto& g = it->get_ref<const std::string&>();
    if (g == "proven") cert.primality_grade = PrimalityGrade::proven;
    else if (g == "probable") cert.primality_grade = PrimalityGrade::probable;
    else throw CertificateParseError("primality_grade: must be \"proven\" or \"probable\"");
  }
  return cert;
}

std::string serialize_certificate(const GapCertificate& cert) { return certificate_to_json(cert).dump(2) + "\n"; }

GapCertificate parse_certificate(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CertificateParseError(std::string("malformed JSON: ") + e.what());
  }
  return certificate_from_json(doc);
}

void write_certificate(const std::string& path, const GapCertificate& cert) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << serialize_certificate(cert);
  if (!out) throw std::runtime_error("failed writing " + path);
}

GapCertificate read_certificate(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CertificateParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_certificate(buf.str());
}

}  // namespace gapforge
