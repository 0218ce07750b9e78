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

#include "io/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace blindid::io {

namespace {

[[noreturn]] void fail(const std::string& at, const std::string& message) {
  throw Error(ErrorCode::kParse, message, at.empty() ? "/" : at);
}

const Json& member(const Json& j, const std::string& at, const char* key) {
  if (!j.is_object()) fail(at, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(at + "/" + key, std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const std::string& at) {
  if (!j.is_number()) fail(at, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(at, "number is not finite");
  return v;
}

std::size_t count(const Json& j, const std::string& at) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    fail(at, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::vector<double> numbers(const Json& j, const std::string& at) {
  if (!j.is_array()) fail(at, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], at + "/" + std::to_string(i)));
  return out;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const Signal& s) {
  Json j;
  j["len"] = s.size();
  j["entries"] = s.values();
  return j;
}

Signal signal_from_json(const Json& j, const std::string& at) {
  const std::size_t len = count(member(j, at, "len"), at + "/len");
  std::vector<double> entries = numbers(member(j, at, "entries"), at + "/entries");
  if (entries.size() != len) {
    fail(at + "/entries", "has " + std::to_string(entries.size()) + " entries, len says " +
                              std::to_string(len));
  }
  if (len == 0) fail(at + "/len", "signal length must be >= 1");
  return Signal(std::move(entries));
}

Json to_json(const DenseMatrix& w) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < w.rows(); ++k) rows.push_back(w.row(k).values());
  Json j;
  j["m"] = w.rows();
  j["n"] = w.cols();
  j["entries"] = std::move(rows);
  return j;
}

DenseMatrix matrix_from_json(const Json& j, const std::string& at) {
  const std::size_t m = count(member(j, at, "m"), at + "/m");
  const std::size_t n = count(member(j, at, "n"), at + "/n");
  if (m == 0) fail(at + "/m", "row count must be >= 1");
  if (n == 0) fail(at + "/n", "column count must be >= 1");
  const Json& rows = member(j, at, "entries");
  const std::string rows_at = at + "/entries";
  if (!rows.is_array()) fail(rows_at, "expected an array of rows");
  if (rows.size() != m) {
    fail(rows_at, "has " + std::to_string(rows.size()) + " rows, m says " + std::to_string(m));
  }
  std::vector<double> flat;
  flat.reserve(m * n);
  for (std::size_t k = 0; k < m; ++k) {
    const std::string row_at = rows_at + "/" + std::to_string(k);
    std::vector<double> row = numbers(rows[k], row_at);
    if (row.size() != n) {
      fail(row_at, "has " + std::to_string(row.size()) + " entries, n says " + std::to_string(n));
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return DenseMatrix(m, n, std::move(flat));
}

Json to_json(const NullspaceCertificate& c) {
  Json j;
  j["kind"] = std::string(kind_name(c.kind()));
  switch (c.kind()) {
    case CertificateKind::kN0: {
      const auto& n0 = c.as<N0Certificate>();
      j["u"] = to_json(n0.u);
      j["v"] = to_json(n0.v);
      break;
    }
    case CertificateKind::kN2: {
      const auto& n2 = c.as<N2Certificate>();
      j["u1"] = to_json(n2.u1);
      j["u2"] = to_json(n2.u2);
      j["v1"] = to_json(n2.v1);
      j["v2"] = to_json(n2.v2);
      j["inner"] = to_json(*n2.inner);
      break;
    }
    case CertificateKind::kM2: {
      const auto& m2 = c.as<M2Certificate>();
      j["u"] = to_json(m2.u);
      j["lambda"] = m2.lambda;
      break;
    }
    case CertificateKind::kRaw: break;
  }
  return j;
}

NullspaceCertificate certificate_from_json(const Json& j, const std::string& at) {
  const Json& kind = member(j, at, "kind");
  if (!kind.is_string()) fail(at + "/kind", "expected a string");
  const std::string k = kind.get<std::string>();
  const auto sig = [&](const char* key) { return signal_from_json(member(j, at, key), at + "/" + key); };
  if (k == "n0") return N0Certificate{sig("u"), sig("v")};
  if (k == "n2") {
    auto inner = j.contains("inner")
                     ? std::make_shared<const NullspaceCertificate>(
                           certificate_from_json(j["inner"], at + "/inner"))
                     : nullptr;
    try {
      return N2Certificate{sig("u1"), sig("u2"), sig("v1"), sig("v2"), std::move(inner)};
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParse) throw;
      fail(at, e.what());
    }
  }
  if (k == "m2") {
    return M2Certificate{sig("u"), number(member(j, at, "lambda"), at + "/lambda")};
  }
  if (k == "raw") return RawCertificate{};
  fail(at + "/kind", "unknown certificate kind '" + k + "'");
}

Json to_json(const GeneratedElement& g) {
  Json j;
  j["matrix"] = to_json(g.matrix);
  j["certificate"] = to_json(g.certificate);
  return j;
}

Json to_json(const ClassifiedElement& c) {
  Json j;
  j["matrix"] = to_json(c.matrix);
  j["certificate"] = to_json(c.certificate);
  j["refactorization_residual"] = c.refactorization_residual;
  return j;
}

Json to_json(const QuotientElement& e) {
  Json j;
  j["w_star"] = to_json(e.w_star);
  j["gamma"] = e.gamma;
  j["residual"] = e.residual;
  return j;
}

Json to_json(const std::vector<QuotientElement>& list) {
  Json j = Json::array();
  for (const auto& e : list) j.push_back(to_json(e));
  return j;
}

Json to_json(const AmbiguousPair& p) {
  Json j;
  j["x"] = to_json(p.x);
  j["y"] = to_json(p.y);
  j["x_alt"] = to_json(p.x_alt);
  j["y_alt"] = to_json(p.y_alt);
  j["residual"] = p.residual;
  j["collinearity"] = p.collinearity;
  return j;
}

AmbiguousPair pair_from_json(const Json& j, const std::string& at) {
  const auto sig = [&](const char* key) { return signal_from_json(member(j, at, key), at + "/" + key); };
  Signal x = sig("x"), y = sig("y"), xa = sig("x_alt"), ya = sig("y_alt");
  try {
    return make_pair(std::move(x), std::move(y), std::move(xa), std::move(ya));
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), at + "/" + e.path());
  }
}

Json to_json(const AttackResult& r) {
  Json j = to_json(r.pair);
  j["theta"] = r.theta;
  j["phi"] = r.phi;
  j["u"] = to_json(r.u);
  j["v"] = to_json(r.v);
  return j;
}

Json to_json(const RotationalFamily& r) {
  Json j;
  j["x1p"] = to_json(r.x1p);
  j["y1p"] = to_json(r.y1p);
  j["x2p"] = to_json(r.x2p);
  j["y2p"] = to_json(r.y2p);
  j["degenerate"] = r.degenerate;
  return j;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["residual"] = r.residual;
  j["collinearity"] = r.collinearity;
  j["certifies_unidentifiability"] = r.certifies_unidentifiability;
  return j;
}

Json to_json(const TrialReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json o;
    o["index"] = row.index;
    o["dims"] = row.dims;
    o["success"] = row.success;
    o["residual"] = row.residual;
    o["collinearity"] = optional_number(row.collinearity);
    if (r.timing) o["wall_seconds"] = row.wall_seconds;
    o["note"] = row.note;
    rows.push_back(std::move(o));
  }
  Json j;
  j["suite"] = std::string(suite_name(r.suite));
  j["seed"] = r.seed;
  j["trials"] = r.rows.size();
  j["successes"] = r.successes;
  j["success_rate"] = r.success_rate;
  j["max_residual"] = r.max_residual;
  j["rows"] = std::move(rows);
  return j;
}

Json to_json(const PaperReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json o;
    o["name"] = c.name;
    o["passed"] = c.passed;
    o["max_error"] = std::isfinite(c.max_error) ? Json(c.max_error) : Json(nullptr);
    o["tolerance"] = c.tolerance;
    o["first_failing_index"] = c.first_failing_index ? Json(*c.first_failing_index) : Json(nullptr);
    checks.push_back(std::move(o));
  }
  Json j;
  j["passed"] = r.passed;
  j["checks"] = std::move(checks);
  return j;
}

PaperInputs paper_inputs_from_json(const Json& j, PaperInputs defaults) {
  if (!j.is_object()) fail("/", "fixture must be an object");
  if (j.contains("x1")) defaults.x1 = signal_from_json(j["x1"], "/x1");
  if (j.contains("y1")) defaults.y1 = signal_from_json(j["y1"], "/y1");
  if (j.contains("x2")) defaults.x2 = signal_from_json(j["x2"], "/x2");
  if (j.contains("y2")) defaults.y2 = signal_from_json(j["y2"], "/y2");
  return defaults;
}

Json error_json(ErrorCode code, const std::string& message, const std::string& path) {
  Json e;
  e["code"] = std::string(error_code_name(code));
  e["message"] = message;
  e["path"] = path;
  Json j;
  j["error"] = std::move(e);
  return j;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what(), "/");
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what(), "/");
  }
}

std::string dump(const Json& j) { return j.dump(2); }

}  // namespace blindid::io
