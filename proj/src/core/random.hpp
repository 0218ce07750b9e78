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
#include <random>

#include "core/types.hpp"

namespace blindid {

// Explicit-state generator. Uniform draws are built from raw 64-bit output
// so sequences are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [lo, hi).
  double uniform(double lo, double hi);
  // Uniform integer in [lo, hi].
  std::size_t uniform_index(std::size_t lo, std::size_t hi);

 private:
  std::mt19937_64 engine_;
};

// splitmix64 mix of (seed, index) so each trial owns an independent stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

// i.i.d. uniform [-1, 1) entries.
Signal uniform_signal(std::size_t length, Rng& rng);

// Like uniform_signal, but the two endpoints are resampled until their
// magnitude exceeds `margin`.
Signal endpoint_safe_signal(std::size_t length, Rng& rng, double margin = 0.1);

}  // namespace blindid
