// Copyright 2026 The blindid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "ambiguity/ambiguity.hpp"
#include "campaign/campaign.hpp"
#include "core/error.hpp"
#include "core/types.hpp"
#include "json.hpp"
#include "nullspace/nullspace.hpp"
#include "quotient/quotient.hpp"

namespace blindid::io {

// Insertion-ordered so emitted documents keep a stable, readable key order.
using Json = nlohmann::ordered_json;

// Readers validate shape and throw Error(kParse) whose path is a JSON pointer
// rooted at `at`.

Json to_json(const Signal& s);
Signal signal_from_json(const Json& j, const std::string& at = "");

Json to_json(const DenseMatrix& w);
DenseMatrix matrix_from_json(const Json& j, const std::string& at = "");

Json to_json(const NullspaceCertificate& c);
NullspaceCertificate certificate_from_json(const Json& j, const std::string& at = "");

Json to_json(const GeneratedElement& g);
Json to_json(const ClassifiedElement& c);

Json to_json(const QuotientElement& e);
Json to_json(const std::vector<QuotientElement>& list);

Json to_json(const AmbiguousPair& p);
AmbiguousPair pair_from_json(const Json& j, const std::string& at = "");
Json to_json(const AttackResult& r);
Json to_json(const RotationalFamily& r);
Json to_json(const VerificationReport& r);

Json to_json(const TrialReport& r);
Json to_json(const PaperReport& r);
// Fields x1, y1, x2, y2 are each optional; absent ones keep `defaults`.
PaperInputs paper_inputs_from_json(const Json& j, PaperInputs defaults);

Json error_json(ErrorCode code, const std::string& message, const std::string& path);

// Parses text, mapping syntax errors to kParse.
Json parse(const std::string& text);
// Reads and parses a file, mapping open failures to kIo.
Json read_file(const std::string& path);

// Two-space indented dump used for every emitted document.
std::string dump(const Json& j);

}  // namespace blindid::io
