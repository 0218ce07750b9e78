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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/types.hpp"

namespace blindid {

enum class Suite { kAttack, kQuotient, kNullspace, kKernel, kStructure, kClassify, kShift };

std::string_view suite_name(Suite suite) noexcept;
// Throws kInvalidArgument for unknown names.
Suite parse_suite(std::string_view name);

struct TrialConfig {
  Suite suite = Suite::kAttack;
  std::uint64_t seed = 0;
  // Trials for sampled suites; draws per (m, n, family) cell for kNullspace;
  // ignored by the exhaustive kKernel and kStructure audits.
  std::size_t count = 100;
  std::size_t m_max = 16;
  std::size_t n_max = 16;
  ToleranceProfile tol{};
  unsigned threads = 1;
  bool timing = false;
};

struct TrialRow {
  std::size_t index;
  std::vector<std::size_t> dims;
  bool success;
  double residual;
  std::optional<double> collinearity;
  double wall_seconds;  // 0 unless timing was requested
  std::string note;     // family or case label; failure details and reproducer
};

struct TrialReport {
  Suite suite;
  std::uint64_t seed;
  bool timing;
  std::vector<TrialRow> rows;
  std::size_t successes;
  double success_rate;
  double max_residual;
};

// Rows depend only on (seed, row index), so any thread count gives the
// same report.
TrialReport run_trials(const TrialConfig& config);

// Recomputes successes, success_rate and max_residual from the rows.
void summarize(TrialReport& report);

struct PaperInputs {
  Signal x1;
  Signal y1;
  Signal x2;
  Signal y2;
};

PaperInputs default_paper_inputs();

struct PaperCheck {
  std::string name;
  bool passed;
  double max_error;
  double tolerance;
  std::optional<std::size_t> first_failing_index;  // 0-based entry index
};

struct PaperReport {
  std::vector<PaperCheck> checks;
  bool passed;
};

// Replays the introductory numerical examples on `inputs`.
PaperReport reproduce_paper(const PaperInputs& inputs);

}  // namespace blindid
