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

#include <stdexcept>
#include <string>
#include <string_view>

namespace blindid {

enum class ErrorCode {
  kInvalidArgument = 1,
  kDimensionMismatch = 2,
  kPrecondition = 3,
  kNotFound = 4,
  kNumerical = 5,
  kParse = 6,
  kIo = 7,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// All failures in the core surface as this exception. `path` names the
// offending input location (a JSON pointer or an argument name) when known.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string path = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorCode code_;
  std::string path_;
};

}  // namespace blindid
