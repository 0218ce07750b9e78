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

#include "core/random.hpp"

#include <cmath>
#include <vector>

namespace blindid {

double Rng::uniform(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

std::size_t Rng::uniform_index(std::size_t lo, std::size_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return lo + static_cast<std::size_t>(r % span);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Signal uniform_signal(std::size_t length, Rng& rng) {
  std::vector<double> v(length);
  for (double& e : v) e = rng.uniform(-1.0, 1.0);
  return Signal(std::move(v));
}

Signal endpoint_safe_signal(std::size_t length, Rng& rng, double margin) {
  std::vector<double> v(length);
  for (double& e : v) e = rng.uniform(-1.0, 1.0);
  while (std::abs(v.front()) <= margin) v.front() = rng.uniform(-1.0, 1.0);
  while (std::abs(v.back()) <= margin) v.back() = rng.uniform(-1.0, 1.0);
  return Signal(std::move(v));
}

}  // namespace blindid
