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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ambiguity/ambiguity.hpp"
#include "core/error.hpp"
#include "core/lifted.hpp"
#include "core/random.hpp"
#include "nullspace/nullspace.hpp"
#include "oracles.hpp"
#include "quotient/quotient.hpp"

using namespace blindid;

namespace {

const Signal kX1{1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1};
const Signal kY1{1, 0, 0, 0, 1, 0, 0};
const Signal kX2{1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0};
const Signal kY2{1, 0, 1, 0, 1, 0, 1};

double oracle_residual(const AmbiguousPair& p) {
  const auto a = oracle::convolve(p.x.values(), p.y.values());
  const auto b = oracle::convolve(p.x_alt.values(), p.y_alt.values());
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

void check_close(const Signal& got, const Signal& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= tol);
}

}  // namespace

TEST_CASE("rotational family reproduces the printed example") {
  const auto r = rotational_family(kX1, kX2, kY1, kY2, std::numbers::pi / 3, std::numbers::pi / 6);
  check_close(r.x1p, Signal{-0.366, 0, 0.5, 0, 0, 0, 0, 0, -0.366, 0, 0.5}, 5e-4);
  check_close(r.y1p, Signal{-0.366, 0, -0.866, 0, -0.366, 0, -0.866}, 5e-4);
  check_close(r.x2p, Signal{0.366, 0, 0.866, 0, 0, 0, 0, 0, 0.366, 0, 0.866}, 5e-4);
  check_close(r.y2p, Signal{0.366, 0, -0.5, 0, 0.366, 0, -0.5}, 5e-4);
  const Signal a = convolve(r.x1p, r.y1p), b = convolve(r.x2p, r.y2p);
  CHECK(max_abs_diff(a, b) <= 1e-12);
  CHECK(std::abs(a[0] - 0.134) <= 5e-4);
  check_close(a, Signal{0.134, 0, 0.134, 0, -0.299, 0, 0.134, 0, -0.299, 0, 0.134, 0, -0.299, 0, 0.134, 0, -0.433}, 5e-4);
  CHECK(!r.degenerate);
  CHECK(collinearity(r.x1p, r.x2p) < 1.0 - 1e-6);
}

TEST_CASE("rotational family preserves the common convolution for any angles") {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const double th = rng.uniform(0, 2 * std::numbers::pi), ph = rng.uniform(0, 2 * std::numbers::pi);
    const auto r = rotational_family(kX1, kX2, kY1, kY2, th, ph);
    CHECK(max_abs_diff(convolve(r.x1p, r.y1p), convolve(r.x2p, r.y2p)) <= 1e-12);
  }
}

TEST_CASE("rotational family with equal angles is flagged degenerate") {
  const auto r = rotational_family(kX1, kX2, kY1, kY2, 0.7, 0.7);
  CHECK(r.degenerate);
  CHECK(r.x1p == r.x2p);
  CHECK(r.y1p == r.y2p);
}

TEST_CASE("rotational family requires a shared seed convolution") {
  CHECK_THROWS_AS(rotational_family(kX1, kX2, kY2, kY1, 0.1, 0.2), Error);
  CHECK_THROWS_AS(rotational_family(kX1, Signal{1, 2}, kY1, kY2, 0.1, 0.2), Error);
}

TEST_CASE("shift ambiguity examples") {
  const auto a = shift_ambiguity(Signal{1, 0}, Signal{0, 1});
  CHECK(a.x_alt == Signal{0, 1});
  CHECK(a.y_alt == Signal{1, 0});
  CHECK(convolve(a.x_alt, a.y_alt) == Signal{0, 1, 0});
  CHECK(a.residual == 0.0);

  const auto b = shift_ambiguity(Signal{1, 2, 0}, Signal{0, 3, 4});
  CHECK(b.x_alt == Signal{0, 1, 2});
  CHECK(b.y_alt == Signal{3, 4, 0});
  CHECK(oracle_residual(b) == 0.0);
  CHECK(b.collinearity < 1.0);

  const auto c = shift_ambiguity(Signal{0, 1, 2}, Signal{3, 4, 0});
  CHECK(c.x_alt == Signal{1, 2, 0});
  CHECK(c.y_alt == Signal{0, 3, 4});
  CHECK(c.residual == 0.0);

  CHECK_THROWS_AS(shift_ambiguity(Signal{1, 2}, Signal{3, 4}), Error);
  CHECK_THROWS_AS(shift_ambiguity(Signal{0, 0}, Signal{0, 4}), Error);
}

TEST_CASE("shift ambiguity is exact and non-collinear on random patterns") {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 2 + rng.uniform_index(0, 8), n = 2 + rng.uniform_index(0, 8);
    std::vector<double> x = endpoint_safe_signal(m, rng).values(), y = endpoint_safe_signal(n, rng).values();
    if (t % 2) {
      x[m - 1] = 0;
      y[0] = 0;
    } else {
      x[0] = 0;
      y[n - 1] = 0;
    }
    const auto p = shift_ambiguity(Signal(x), Signal(y));
    CHECK(oracle_residual(p) == 0.0);
    CHECK(p.residual == 0.0);
    CHECK(verify_pair(p).certifies_unidentifiability);
  }
}

TEST_CASE("y-form equals the negated quotient reconstruction") {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const Signal v = uniform_signal(1 + rng.uniform_index(0, 8), rng);
    const double phi = rng.uniform(0, 2 * std::numbers::pi);
    const Signal y = y_form(v, phi);
    for (std::size_t j = 0; j < y.size(); ++j) {
      const double prev = j >= 1 ? v[j - 1] : 0.0;
      const double cur = j < v.size() ? v[j] : 0.0;
      CHECK(std::abs(y[j] - (prev * std::sin(phi) - cur * std::cos(phi))) <= 1e-15);
    }
  }
}

TEST_CASE("attack on the small integer example") {
  const Signal x{1, 2, 3, 4}, y{1, 1, 2, 1};
  const AttackResult r = attack(x, y);
  const double scale = convolve(x, y).max_abs();
  CHECK(oracle_residual(r.pair) <= 1e-9 * scale);
  CHECK(r.pair.collinearity <= 1.0 - 1e-6);
  CHECK(verify_pair(r.pair).certifies_unidentifiability);
  CHECK(max_abs_diff(reconstruct(r.u, r.theta), x) <= 1e-9 * x.max_abs());
  CHECK(max_abs_diff(y_form(r.v, r.phi), y) <= 1e-9 * y.max_abs());
}

TEST_CASE("attack difference is a scaled N0 element") {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 4 + 2 * rng.uniform_index(0, 4), n = 4 + 2 * rng.uniform_index(0, 4);
    const Signal x = endpoint_safe_signal(m, rng), y = endpoint_safe_signal(n, rng);
    const AttackResult r = attack(x, y);
    const DenseMatrix diff = outer(x, y) - outer(r.pair.x_alt, r.pair.y_alt);
    const DenseMatrix want = std::sin(r.phi - r.theta) * n0_element(r.u, r.v);
    const double scale = std::max(diff.max_abs(), 1.0);
    CHECK(max_abs_diff(diff, want) <= 1e-9 * scale);
    CHECK(std::abs(std::cos(r.phi)) > 1e-6);
    CHECK(std::abs(std::sin(r.phi - r.theta)) > 1e-6);
    CHECK(oracle::max_abs(oracle::antidiagonal_sums(diff)) <= 1e-9 * scale);
  }
}

TEST_CASE("attack preconditions") {
  CHECK_THROWS_AS(attack(Signal{1, 2, 3}, Signal{1, 1, 2, 1}), Error);
  CHECK_THROWS_AS(attack(Signal{1, 2}, Signal{1, 1, 2, 1}), Error);
  try {
    attack(Signal{1, 2, 3, 0}, Signal{0, 1, 2, 1});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPrecondition);
    CHECK(std::string(e.what()).find("shift_ambiguity") != std::string::npos);
  }
  try {
    attack(Signal{1, 2, 3, 4}, Signal{0, 1, 2, 1});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("shift_ambiguity") == std::string::npos);
  }
}

TEST_CASE("verify_pair rejects scaling equivalents") {
  const Signal x{1, -2, 3}, y{2, 4};
  const auto p = make_pair(x, y, x.scaled(2.0), y.scaled(0.5));
  const auto rep = verify_pair(p);
  CHECK(rep.residual == 0.0);
  CHECK(rep.collinearity == doctest::Approx(1.0));
  CHECK(!rep.certifies_unidentifiability);
}

TEST_CASE("verify_pair rejects a mismatched convolution") {
  const auto p = make_pair(Signal{1, 0}, Signal{0, 1}, Signal{0, 1}, Signal{2, 0});
  CHECK(!verify_pair(p).certifies_unidentifiability);
  CHECK_THROWS_AS(make_pair(Signal{1, 0}, Signal{0, 1}, Signal{0, 1, 0}, Signal{2, 0}), Error);
}

TEST_CASE("collinearity edge cases") {
  CHECK(collinearity(Signal{0, 0}, Signal{1, 0}) == 1.0);
  CHECK(collinearity(Signal{1, 0}, Signal{0, 1}) == 0.0);
  CHECK(collinearity(Signal{1, 1}, Signal{-2, -2}) == doctest::Approx(1.0));
}
