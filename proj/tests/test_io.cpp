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

#include <cstdio>
#include <fstream>
#include <string>

#include "core/random.hpp"
#include "io/json_io.hpp"

using namespace blindid;
using io::Json;

namespace {

std::string parse_error_path(const std::string& text) {
  try {
    io::signal_from_json(io::parse(text));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    return e.path();
  }
  return "<no error>";
}

std::string matrix_error_path(const std::string& text) {
  try {
    io::matrix_from_json(io::parse(text));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("signal round trip is bit exact") {
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const Signal s = uniform_signal(1 + rng.uniform_index(0, 12), rng);
    const Signal back = io::signal_from_json(io::parse(io::dump(io::to_json(s))));
    CHECK(back == s);
  }
}

TEST_CASE("matrix round trip is bit exact") {
  Rng rng(2);
  std::vector<double> e(12);
  for (double& v : e) v = rng.uniform(-5, 5);
  const DenseMatrix w(3, 4, e);
  CHECK(io::matrix_from_json(io::parse(io::dump(io::to_json(w)))) == w);
}

TEST_CASE("signal schema errors carry pointer paths") {
  CHECK(parse_error_path(R"({"entries":[1]})") == "/len");
  CHECK(parse_error_path(R"({"len":2,"entries":[1,"a"]})") == "/entries/1");
  CHECK(parse_error_path(R"({"len":3,"entries":[1,2]})") == "/entries");
  CHECK(parse_error_path(R"({"len":0,"entries":[]})") == "/len");
  CHECK(parse_error_path(R"({"len":-1,"entries":[1]})") == "/len");
  CHECK(parse_error_path(R"([1,2])") == "/");
}

TEST_CASE("matrix schema errors carry pointer paths") {
  CHECK(matrix_error_path(R"({"m":2,"n":2,"entries":[[1,2],[3]]})") == "/entries/1");
  CHECK(matrix_error_path(R"({"m":2,"n":2,"entries":[[1,2]]})") == "/entries");
  CHECK(matrix_error_path(R"({"m":1,"n":1,"entries":[[null]]})") == "/entries/0/0");
  CHECK(matrix_error_path(R"({"m":0,"n":1,"entries":[]})") == "/m");
}

TEST_CASE("malformed text is a parse error") {
  CHECK_THROWS_AS(io::parse("{not json"), Error);
  try {
    io::parse("[1,");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
  }
}

TEST_CASE("missing file is an io error") {
  try {
    io::read_file("/nonexistent/blindid/input.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}

TEST_CASE("read_file parses file contents") {
  const std::string path = "blindid_io_test_input.json";
  {
    std::ofstream f(path);
    f << R"({"len":2,"entries":[3,4]})";
  }
  CHECK(io::signal_from_json(io::read_file(path)) == Signal{3, 4});
  std::remove(path.c_str());
}

TEST_CASE("certificate round trip preserves nesting and reconstruction") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = n2_generate(6, 7, seed);
    const auto back = io::certificate_from_json(io::parse(io::dump(io::to_json(g.certificate))));
    CHECK(back.kind() == g.certificate.kind());
    CHECK(back.depth() == g.certificate.depth());
    CHECK(back.reconstruct() == g.matrix);
  }
  const NullspaceCertificate m2 = M2Certificate{Signal{1, 2}, 0.5};
  const auto m2b = io::certificate_from_json(io::parse(io::dump(io::to_json(m2))));
  CHECK(m2b.kind() == CertificateKind::kM2);
  CHECK(m2b.as<M2Certificate>().lambda == 0.5);
}

TEST_CASE("certificate schema errors") {
  try {
    io::certificate_from_json(io::parse(R"({"kind":"weird"})"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.path() == "/kind");
  }
  try {
    io::certificate_from_json(io::parse(R"({"kind":"n0","u":{"len":1,"entries":[1]}})"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.path() == "/v");
  }
}

TEST_CASE("pair documents validate their convolution lengths") {
  const auto good = io::parse(
      R"({"x":{"len":2,"entries":[1,0]},"y":{"len":2,"entries":[0,1]},)"
      R"("x_alt":{"len":2,"entries":[0,1]},"y_alt":{"len":2,"entries":[1,0]}})");
  const auto p = io::pair_from_json(good);
  CHECK(p.residual == 0.0);
  Json bad = good;
  bad["x_alt"] = io::to_json(Signal{0, 1, 0});
  CHECK_THROWS_AS(io::pair_from_json(bad), Error);
  bad.erase("y_alt");
  try {
    io::pair_from_json(bad);
  } catch (const Error& e) {
    CHECK(e.path() == "/y_alt");
  }
}

TEST_CASE("trial report rows include wall time only when timing") {
  TrialReport r{Suite::kShift, 3, false, {TrialRow{0, {2, 2}, true, 0.0, 0.5, 1.25, "x"}}, 0, 0.0, 0.0};
  summarize(r);
  const Json plain = io::to_json(r);
  CHECK(plain["rows"][0].contains("wall_seconds") == false);
  CHECK(plain["successes"] == 1);
  CHECK(plain["rows"][0]["collinearity"] == 0.5);
  r.timing = true;
  CHECK(io::to_json(r)["rows"][0]["wall_seconds"] == 1.25);
}

TEST_CASE("reproduction fixture overrides selected inputs") {
  const auto d = default_paper_inputs();
  const auto in = io::paper_inputs_from_json(io::parse(R"({"y2":{"len":1,"entries":[2]}})"), d);
  CHECK(in.x1 == d.x1);
  CHECK(in.y2 == Signal{2});
  CHECK_THROWS_AS(io::paper_inputs_from_json(io::parse("[]"), d), Error);
}

TEST_CASE("error document shape") {
  const Json e = io::error_json(ErrorCode::kNotFound, "nothing", "/x");
  CHECK(e["error"]["code"] == "not_found");
  CHECK(e["error"]["message"] == "nothing");
  CHECK(e["error"]["path"] == "/x");
}
