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

#ifndef GAPFORGE_CERTIFICATE_IO_HPP
#define GAPFORGE_CERTIFICATE_IO_HPP

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "gapforge/assembly.hpp"

namespace gapforge {

class CertificateParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON document with the GapCertificate field names. Big integers are decimal
// strings, the assignment is an array of [p, a_p] pairs, witnesses an array
// of length U; absent optional fields are omitted.
nlohmann::ordered_json certificate_to_json(const GapCertificate& cert);
GapCertificate certificate_from_json(const nlohmann::json& doc);

std::string serialize_certificate(const GapCertificate& cert);
GapCertificate parse_certificate(const std::string& text);

void write_certificate(const std::string& path, const GapCertificate& cert);
GapCertificate read_certificate(const std::string& path);

}  // namespace gapforge

#endif  // GAPFORGE_CERTIFICATE_IO_HPP
