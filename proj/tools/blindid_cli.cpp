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

// Command-line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blindid/blindid.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

// A failing C call, carried to main for structured reporting.
struct CallFailure {
  bdid_status status;
  std::string message;
  std::string path;
};

void check(bdid_status s, const std::string& where = {}) {
  if (s == BDID_OK) return;
  std::string path = bdid_last_error_path();
  if (!where.empty()) path = path.empty() || path == "/" ? where : where + ":" + path;
  throw CallFailure{s, bdid_last_error_message(), path};
}

// Owns a string returned by the library.
std::string take(char* s) {
  std::string out(s);
  bdid_string_free(s);
  return out;
}

// Inline JSON (leading '{' or '['), '-' for stdin, otherwise a file path.
std::string load_text(const std::string& arg, const std::string& option) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
  if (arg == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(arg);
  if (!in) throw CallFailure{BDID_IO, "cannot open '" + arg + "'", option};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct SignalHandle {
  bdid_signal* p = nullptr;
  SignalHandle() = default;
  SignalHandle(const SignalHandle&) = delete;
  SignalHandle& operator=(const SignalHandle&) = delete;
  ~SignalHandle() { bdid_signal_free(p); }
};

struct MatrixHandle {
  bdid_matrix* p = nullptr;
  MatrixHandle() = default;
  MatrixHandle(const MatrixHandle&) = delete;
  MatrixHandle& operator=(const MatrixHandle&) = delete;
  ~MatrixHandle() { bdid_matrix_free(p); }
};

void load_signal(SignalHandle& h, const std::string& arg, const std::string& option) {
  check(bdid_signal_from_json(load_text(arg, option).c_str(), &h.p), option);
}

void load_matrix(MatrixHandle& h, const std::string& arg, const std::string& option) {
  check(bdid_matrix_from_json(load_text(arg, option).c_str(), &h.p), option);
}

// ---- CSV rendering ----

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "";
  return j.dump();
}

void flatten(const Json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path + "/" + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "/" + std::to_string(i), out);
  } else {
    out << csv_field(path) << ',' << csv_field(scalar(j)) << '\n';
  }
}

enum class Shape { kSignal, kMatrix, kTrials, kPaper, kTree };

std::string to_csv(const Json& j, Shape shape) {
  std::ostringstream out;
  switch (shape) {
    case Shape::kSignal:
      out << "index,value\n";
      for (std::size_t i = 0; i < j["entries"].size(); ++i) out << i << ',' << scalar(j["entries"][i]) << '\n';
      break;
    case Shape::kMatrix:
      for (const auto& row : j["entries"]) {
        for (std::size_t l = 0; l < row.size(); ++l) out << (l ? "," : "") << scalar(row[l]);
        out << '\n';
      }
      break;
    case Shape::kTrials: {
      const bool timing = !j["rows"].empty() && j["rows"][0].contains("wall_seconds");
      out << "index,dims,success,residual,collinearity" << (timing ? ",wall_seconds" : "")
          << ",note\n";
      for (const auto& r : j["rows"]) {
        std::string dims;
        for (const auto& d : r["dims"]) dims += (dims.empty() ? "" : "x") + d.dump();
        out << r["index"].dump() << ',' << dims << ',' << scalar(r["success"]) << ','
            << scalar(r["residual"]) << ',' << scalar(r["collinearity"]);
        if (timing) out << ',' << scalar(r["wall_seconds"]);
        out << ',' << csv_field(scalar(r["note"])) << '\n';
      }
      out << "\nsuite,seed,trials,successes,success_rate,max_residual\n"
          << scalar(j["suite"]) << ',' << scalar(j["seed"]) << ',' << scalar(j["trials"]) << ','
          << scalar(j["successes"]) << ',' << scalar(j["success_rate"]) << ','
          << scalar(j["max_residual"]) << '\n';
      break;
    }
    case Shape::kPaper:
      out << "name,passed,max_error,tolerance,first_failing_index\n";
      for (const auto& c : j["checks"]) {
        out << csv_field(scalar(c["name"])) << ',' << scalar(c["passed"]) << ','
            << scalar(c["max_error"]) << ',' << scalar(c["tolerance"]) << ','
            << scalar(c["first_failing_index"]) << '\n';
      }
      out << "all,"
          << scalar(j["passed"]) << ",,,\n";
      break;
    case Shape::kTree:
      out << "path,value\n";
      flatten(j, "", out);
      break;
  }
  return out.str();
}

struct Globals {
  std::uint64_t seed = 0;
  std::optional<double> tol_abs;
  std::optional<double> tol_rel;
  std::optional<double> tol;
  std::string format = "json";
  std::string out_path;

  bdid_tolerance tolerance() const {
    bdid_tolerance t = bdid_default_tolerance();
    if (tol) t.rel_tol = *tol;
    if (tol_rel) t.rel_tol = *tol_rel;
    if (tol_abs) t.abs_tol = *tol_abs;
    return t;
  }
};

void write_output(const Globals& g, const std::string& json_text, Shape shape) {
  std::string text = json_text + "\n";
  if (g.format == "csv") text = to_csv(Json::parse(json_text), shape);
  if (g.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out_path);
  if (!out) throw CallFailure{BDID_IO, "cannot write '" + g.out_path + "'", "--out"};
  out << text;
}

int report_failure(const CallFailure& f) {
  Json e;
  e["code"] = bdid_status_name(f.status);
  e["message"] = f.message;
  e["path"] = f.path;
  Json j;
  j["error"] = std::move(e);
  std::cerr << j.dump(2) << '\n';
  switch (f.status) {
    case BDID_NUMERICAL:
    case BDID_NOT_FOUND:
    case BDID_INTERNAL:
      return kExitCheckFailed;
    default:
      return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identifiability toolkit for blind linear deconvolution"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random draw");
  app.add_option("--tol-abs", g.tol_abs, "Absolute tolerance (default 1e-12)")->check(CLI::NonNegativeNumber);
  app.add_option("--tol-rel", g.tol_rel, "Relative tolerance (default 1e-9)")->check(CLI::NonNegativeNumber);
  app.add_option("--tol", g.tol, "Shorthand for --tol-rel")->check(CLI::NonNegativeNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out_path, "Write output to PATH instead of stdout");

  std::map<std::string, std::string> arg;
  std::size_t m = 0, n = 0, j = 0, count = 100, m_max = 0, n_max = 0;
  unsigned threads = 1;
  double lambda = 0.0;
  bool timing = false;
  std::string suite;

  auto* convolve = app.add_subcommand("convolve", "Linear convolution x * y");
  convolve->add_option("--x", arg["x"], "Signal JSON")->required();
  convolve->add_option("--y", arg["y"], "Signal JSON")->required();

  auto* lift = app.add_subcommand("lift", "Anti-diagonal sums of a matrix");
  lift->add_option("--w", arg["w"], "Matrix JSON")->required();

  auto* basis = app.add_subcommand("basis", "Hankel basis of the lifted operator");
  basis->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  basis->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  basis->add_option("--j", j, "1-based index of a single basis matrix");

  auto* n0 = app.add_subcommand("n0", "Bordered-product kernel element");
  n0->add_option("--u", arg["u"], "Signal JSON, length m-1")->required();
  n0->add_option("--v", arg["v"], "Signal JSON, length n-1")->required();

  auto* n2 = app.add_subcommand("n2", "Recursive kernel element (generate or lift)");
  n2->add_option("--m", m, "Rows for seeded generation");
  n2->add_option("--n", n, "Columns for seeded generation");
  for (const char* k : {"u1", "u2", "v1", "v2"}) {
    n2->add_option(std::string("--") + k, arg[k], "Signal JSON for an explicit lift");
  }

  auto* m2 = app.add_subcommand("m2", "Bordered skew-symmetric kernel element");
  m2->add_option("--u", arg["u"], "Signal JSON, length n-2")->required();
  m2->add_option("--lambda", lambda)->required();

  auto* kernel = app.add_subcommand("kernel", "Basis of the full linear kernel");
  kernel->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  kernel->add_option("--n", n)->required()->check(CLI::PositiveNumber);

  auto* decompose = app.add_subcommand("decompose", "Quotient-set decomposition of w");
  decompose->add_option("--input", arg["input"], "Signal JSON")->required();

  auto* classify = app.add_subcommand("classify", "Structural certificate of a kernel element");
  classify->add_option("--input", arg["input"], "Matrix JSON")->required();

  auto* attack = app.add_subcommand("attack", "Adversarial pair sharing the convolution of (x, y)");
  attack->add_option("--x", arg["x"], "Signal JSON, even length >= 4")->required();
  attack->add_option("--y", arg["y"], "Signal JSON, even length >= 4")->required();

  auto* shift = app.add_subcommand("shift", "Shift ambiguity for zero-padded pairs");
  shift->add_option("--x", arg["x"], "Signal JSON")->required();
  shift->add_option("--y", arg["y"], "Signal JSON")->required();

  auto* verify = app.add_subcommand("verify", "Check that a pair certifies unidentifiability");
  verify->add_option("--pair", arg["pair"], "Pair JSON")->required();

  auto* reproduce = app.add_subcommand("reproduce-paper", "Replay the published numerical examples");
  reproduce->add_option("--fixture", arg["fixture"], "JSON with x1, y1, x2, y2 overrides");

  auto* trials = app.add_subcommand("trials", "Seeded Monte-Carlo property campaigns");
  trials->add_option("--suite", suite)
      ->required()
      ->check(CLI::IsMember({"attack", "quotient", "nullspace", "kernel", "structure", "classify",
                             "shift"}));
  trials->add_option("--n", count, "Trials (draws per cell for nullspace)")->check(CLI::PositiveNumber);
  trials->add_option("--mmax", m_max, "Largest m (suite default when omitted)");
  trials->add_option("--nmax", n_max, "Largest n (suite default when omitted)");
  trials->add_option("--threads", threads)->check(CLI::PositiveNumber);
  trials->add_flag("--timing", timing, "Record per-trial wall time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const bdid_tolerance tol = g.tolerance();
    char* out = nullptr;

    if (*convolve) {
      SignalHandle x, y, z;
      load_signal(x, arg["x"], "--x");
      load_signal(y, arg["y"], "--y");
      check(bdid_convolve(x.p, y.p, &z.p));
      check(bdid_signal_to_json(z.p, &out));
      write_output(g, take(out), Shape::kSignal);
    } else if (*lift) {
      MatrixHandle w;
      SignalHandle z;
      load_matrix(w, arg["w"], "--w");
      check(bdid_lift_apply(w.p, &z.p));
      check(bdid_signal_to_json(z.p, &out));
      write_output(g, take(out), Shape::kSignal);
    } else if (*basis) {
      if (basis->count("--j")) {
        if (j == 0) throw CallFailure{BDID_INVALID_ARGUMENT, "--j is 1-based", "--j"};
        MatrixHandle s;
        check(bdid_hankel_basis_element(m, n, j - 1, &s.p), "--j");
        check(bdid_matrix_to_json(s.p, &out));
        write_output(g, take(out), Shape::kMatrix);
      } else {
        check(bdid_hankel_basis_json(m, n, &out));
        write_output(g, take(out), Shape::kTree);
      }
    } else if (*n0) {
      SignalHandle u, v;
      load_signal(u, arg["u"], "--u");
      load_signal(v, arg["v"], "--v");
      check(bdid_n0_json(u.p, v.p, &out));
      write_output(g, take(out), Shape::kTree);
    } else if (*n2) {
      const bool explicit_lift = n2->count("--u1") || n2->count("--u2") || n2->count("--v1") ||
                                 n2->count("--v2");
      if (explicit_lift) {
        SignalHandle u1, u2, v1, v2;
        for (auto [h, k] : {std::pair{&u1, "u1"}, {&u2, "u2"}, {&v1, "v1"}, {&v2, "v2"}}) {
          const std::string opt = std::string("--") + k;
          if (!n2->count(opt)) throw CallFailure{BDID_INVALID_ARGUMENT, opt + " is required", opt};
          load_signal(*h, arg[k], opt);
        }
        check(bdid_n2_lift_json(u1.p, u2.p, v1.p, v2.p, &tol, &out));
      } else {
        if (!n2->count("--m") || !n2->count("--n")) {
          throw CallFailure{BDID_INVALID_ARGUMENT, "n2 needs --m and --n, or --u1 --u2 --v1 --v2",
                            "--m"};
        }
        check(bdid_n2_generate_json(m, n, g.seed, &out));
      }
      write_output(g, take(out), Shape::kTree);
    } else if (*m2) {
      SignalHandle u;
      load_signal(u, arg["u"], "--u");
      check(bdid_m2_json(u.p, lambda, &out), "--lambda");
      write_output(g, take(out), Shape::kTree);
    } else if (*kernel) {
      check(bdid_kernel_basis_json(m, n, &out));
      write_output(g, take(out), Shape::kTree);
    } else if (*decompose) {
      SignalHandle w;
      load_signal(w, arg["input"], "--input");
      check(bdid_quotient_decompose_json(w.p, &tol, &out), "--input");
      write_output(g, take(out), Shape::kTree);
    } else if (*classify) {
      MatrixHandle w;
      load_matrix(w, arg["input"], "--input");
      check(bdid_classify_json(w.p, &tol, &out), "--input");
      write_output(g, take(out), Shape::kTree);
    } else if (*attack) {
      SignalHandle x, y;
      load_signal(x, arg["x"], "--x");
      load_signal(y, arg["y"], "--y");
      check(bdid_attack_json(x.p, y.p, &tol, &out));
      write_output(g, take(out), Shape::kTree);
    } else if (*shift) {
      SignalHandle x, y;
      load_signal(x, arg["x"], "--x");
      load_signal(y, arg["y"], "--y");
      check(bdid_shift_ambiguity_json(x.p, y.p, &out));
      write_output(g, take(out), Shape::kTree);
    } else if (*verify) {
      int certifies = 0;
      check(bdid_verify_pair_json(load_text(arg["pair"], "--pair").c_str(), &tol, &out, &certifies),
            "--pair");
      write_output(g, take(out), Shape::kTree);
      return certifies ? kExitOk : kExitCheckFailed;
    } else if (*reproduce) {
      int passed = 0;
      std::string fixture;
      if (reproduce->count("--fixture")) fixture = load_text(arg["fixture"], "--fixture");
      check(bdid_reproduce_paper_json(fixture.empty() ? nullptr : fixture.c_str(), &out, &passed),
            "--fixture");
      write_output(g, take(out), Shape::kPaper);
      return passed ? kExitOk : kExitCheckFailed;
    } else if (*trials) {
      static const std::map<std::string, std::size_t> kDefaultMax{
          {"attack", 16}, {"quotient", 10}, {"nullspace", 10}, {"kernel", 10},
          {"structure", 12}, {"classify", 10}, {"shift", 16}};
      bdid_trial_config cfg{suite.c_str(), g.seed, count,
                            m_max ? m_max : kDefaultMax.at(suite),
                            n_max ? n_max : kDefaultMax.at(suite), threads, timing ? 1 : 0};
      int passed = 0;
      check(bdid_trials_json(&cfg, &tol, &out, &passed));
      write_output(g, take(out), Shape::kTrials);
      return passed ? kExitOk : kExitCheckFailed;
    }
  } catch (const CallFailure& f) {
    return report_failure(f);
  } catch (const Json::exception& e) {
    return report_failure(CallFailure{BDID_INTERNAL, e.what(), ""});
  }
  return kExitOk;
}
