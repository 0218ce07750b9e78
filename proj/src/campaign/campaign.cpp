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

#include "campaign/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

#include "ambiguity/ambiguity.hpp"
#include "core/error.hpp"
#include "core/lifted.hpp"
#include "core/random.hpp"
#include "json.hpp"
#include "nullspace/nullspace.hpp"
#include "quotient/quotient.hpp"

namespace blindid {

namespace {

// Acceptance thresholds for the sampled suites.
constexpr double kAttackResidual = 1e-8;
constexpr double kAttackCollinearity = 1.0 - 1e-6;
constexpr double kKernelDefect = 1e-10;
constexpr double kQuotientResidual = 1e-8;
constexpr double kClassifyResidual = 1e-8;
constexpr double kCornerFloor = 1e-6;
constexpr int kMaxDraws = 64;

constexpr std::size_t kQuotientLengths[] = {4, 6, 8, 10};

struct Task {
  std::size_t m = 0;
  std::size_t n = 0;
  int family = 0;
};

std::string entries_json(const Signal& s) { return nlohmann::json(s.values()).dump(); }

std::size_t even_in(std::size_t lo, std::size_t hi, Rng& rng) {
  return lo + 2 * rng.uniform_index(0, (hi - lo) / 2);
}

TrialRow attack_row(std::size_t i, const TrialConfig& cfg) {
  Rng rng(derive_seed(cfg.seed, i));
  const std::size_t m = even_in(4, cfg.m_max, rng);
  const std::size_t n = even_in(4, cfg.n_max, rng);
  const Signal x = endpoint_safe_signal(m, rng);
  const Signal y = endpoint_safe_signal(n, rng);
  TrialRow row{i, {m, n}, false, 0.0, std::nullopt, 0.0, {}};
  try {
    const AttackResult r = attack(x, y, cfg.tol);
    const double scale = convolve(x, y).max_abs();
    row.residual = r.pair.residual;
    row.collinearity = r.pair.collinearity;
    row.success = r.pair.residual <= kAttackResidual * scale &&
                  r.pair.collinearity <= kAttackCollinearity;
    if (!row.success) row.note = "threshold exceeded";
  } catch (const Error& e) {
    row.note = e.what();
  }
  if (!row.success) row.note += "; x=" + entries_json(x) + " y=" + entries_json(y);
  return row;
}

TrialRow quotient_row(std::size_t i, const TrialConfig& cfg) {
  Rng rng(derive_seed(cfg.seed, i));
  const std::size_t d = kQuotientLengths[rng.uniform_index(0, 3)];
  const bool forward = i % 2 == 1;
  Signal w = Signal::zeros(1);
  if (forward) {
    const Signal star = endpoint_safe_signal(d - 1, rng);
    double gamma = 0.0;
    do {
      gamma = rng.uniform(0.0, 2.0 * std::numbers::pi);
    } while (std::abs(std::sin(gamma)) <= 0.1 || std::abs(std::cos(gamma)) <= 0.1);
    w = reconstruct(star, gamma);
  } else {
    w = endpoint_safe_signal(d, rng);
  }
  TrialRow row{i, {d}, false, 0.0, std::nullopt, 0.0, forward ? "forward" : "random"};
  try {
    const auto list = quotient_decompose(w, cfg.tol);
    for (const auto& e : list) row.residual = std::max(row.residual, e.residual);
    row.success = !list.empty() && list.size() <= 2 * d - 2 &&
                  row.residual <= kQuotientResidual * w.max_abs();
    row.note += "; card=" + std::to_string(list.size());
  } catch (const Error& e) {
    row.note += std::string("; ") + e.what();
  }
  if (!row.success) row.note += "; w=" + entries_json(w);
  return row;
}

TrialRow nullspace_row(std::size_t i, const Task& t, const TrialConfig& cfg) {
  static constexpr const char* kFamilies[] = {"n0", "n2", "m2"};
  Rng rng(derive_seed(cfg.seed, i));
  TrialRow row{i, {t.m, t.n}, false, 0.0, std::nullopt, 0.0, kFamilies[t.family]};
  try {
    DenseMatrix q(1, 1);
    if (t.family == 0) {
      q = sample_n0(t.m, t.n, rng).matrix;
    } else if (t.family == 1) {
      q = n2_generate(t.m, t.n, rng).matrix;
    } else {
      Signal u = uniform_signal(t.n - 2, rng);
      double lambda = 0.0;
      do {
        lambda = rng.uniform(-2.0, 2.0);
      } while (std::abs(lambda) <= 0.1);
      q = m2_element(u, lambda);
    }
    const double scale = q.max_abs();
    row.residual = scale > 0.0 ? lift_apply(q).max_abs() / scale : 0.0;
    const std::size_t rank = rank_estimate(q, cfg.tol);
    row.success = row.residual <= kKernelDefect && rank <= 2;
    if (!row.success) row.note += "; rank=" + std::to_string(rank);
  } catch (const Error& e) {
    row.note += std::string("; ") + e.what();
  }
  return row;
}

TrialRow kernel_row(std::size_t i, const Task& t) {
  TrialRow row{i, {t.m, t.n}, false, 0.0, std::nullopt, 0.0, {}};
  const auto basis = kernel_basis(t.m, t.n);
  const std::size_t expected = t.m * t.n - (t.m + t.n - 1);
  for (const auto& q : basis) row.residual = std::max(row.residual, lift_apply(q).max_abs());
  row.success = basis.size() == expected && row.residual <= kKernelDefect;
  row.note = "dim=" + std::to_string(basis.size()) + " expected=" + std::to_string(expected);
  return row;
}

TrialRow structure_row(std::size_t i, const Task& t) {
  TrialRow row{i, {t.m, t.n}, false, 0.0, std::nullopt, 0.0, {}};
  const auto basis = kernel_basis(t.m, t.n);
  if (t.m == 1 || t.n == 1) {
    row.success = basis.empty();
    row.note = "empty kernel";
    return row;
  }
  // m == 2: Q(1,1) = Q(2,n) = 0 and Q(1,2:n) = -Q(2,1:n-1).
  for (const auto& q : basis) {
    double defect = std::max(std::abs(q(0, 0)), std::abs(q(1, t.n - 1)));
    for (std::size_t l = 1; l < t.n; ++l) defect = std::max(defect, std::abs(q(0, l) + q(1, l - 1)));
    row.residual = std::max(row.residual, defect);
  }
  row.success = basis.size() == t.n - 1 && row.residual <= kKernelDefect;
  row.note = "two-row structure";
  return row;
}

TrialRow classify_row(std::size_t i, const TrialConfig& cfg) {
  Rng rng(derive_seed(cfg.seed, i));
  const int family = static_cast<int>(i % 3);
  TrialRow row{i, {}, false, 0.0, std::nullopt, 0.0, {}};
  try {
    if (family == 2) {
      const std::size_t n = 3 + rng.uniform_index(0, std::min(cfg.m_max, cfg.n_max) - 3);
      row.dims = {n, n};
      Signal u = uniform_signal(n - 2, rng);
      const double lambda = rng.uniform(0.5, 2.0);
      const ClassifiedElement c = classify(m2_element(u, lambda), cfg.tol);
      row.success = c.certificate.kind() == CertificateKind::kRaw;
      row.note = "m2 -> " + std::string(kind_name(c.certificate.kind()));
      return row;
    }
    const std::size_t lo = family == 1 ? 3 : 2;
    const std::size_t m = lo + rng.uniform_index(0, cfg.m_max - lo);
    const std::size_t n = lo + rng.uniform_index(0, cfg.n_max - lo);
    row.dims = {m, n};
    std::optional<GeneratedElement> g;
    for (int draw = 0; draw < kMaxDraws && !g; ++draw) {
      GeneratedElement cand = family == 0 ? sample_n0(m, n, rng) : n2_generate(m, n, rng);
      const double scale = cand.matrix.max_abs();
      const double corner =
          std::max(std::abs(cand.matrix(m - 1, 0)), std::abs(cand.matrix(0, n - 1)));
      if (corner > kCornerFloor * scale) g = std::move(cand);
    }
    if (!g) throw Error(ErrorCode::kNumerical, "no sample with a nonzero corner");
    const ClassifiedElement c = classify(g->matrix, cfg.tol);
    const auto want = g->certificate.kind();
    row.residual = c.refactorization_residual;
    row.success = c.certificate.kind() == want &&
                  c.refactorization_residual <= kClassifyResidual * g->matrix.max_abs();
    row.note = std::string(kind_name(want)) + " -> " + std::string(kind_name(c.certificate.kind()));
  } catch (const Error& e) {
    row.note += std::string("error: ") + e.what();
  }
  return row;
}

TrialRow shift_row(std::size_t i, const TrialConfig& cfg) {
  Rng rng(derive_seed(cfg.seed, i));
  const std::size_t m = 2 + rng.uniform_index(0, cfg.m_max - 2);
  const std::size_t n = 2 + rng.uniform_index(0, cfg.n_max - 2);
  std::vector<double> x = uniform_signal(m, rng).values();
  std::vector<double> y = uniform_signal(n, rng).values();
  const bool trailing = i % 2 == 0;
  if (trailing) {
    x[m - 1] = 0.0;
    y[0] = 0.0;
  } else {
    x[0] = 0.0;
    y[n - 1] = 0.0;
  }
  TrialRow row{i, {m, n}, false, 0.0, std::nullopt, 0.0,
               trailing ? "x(m)=y(1)=0" : "x(1)=y(n)=0"};
  try {
    const AmbiguousPair p = shift_ambiguity(Signal(x), Signal(y));
    row.residual = p.residual;
    row.collinearity = p.collinearity;
    row.success = p.residual == 0.0 && p.collinearity < 1.0 - 1e-9;
  } catch (const Error& e) {
    row.note += std::string("; ") + e.what();
  }
  return row;
}

void check_config(const TrialConfig& cfg) {
  cfg.tol.validate();
  if (cfg.threads == 0) throw Error(ErrorCode::kInvalidArgument, "threads must be >= 1", "threads");
  const bool sampled = cfg.suite != Suite::kKernel && cfg.suite != Suite::kStructure;
  if (sampled && cfg.count == 0) {
    throw Error(ErrorCode::kInvalidArgument, "trial count must be >= 1", "n");
  }
  std::size_t lo = 1;
  switch (cfg.suite) {
    case Suite::kAttack: lo = 4; break;
    case Suite::kNullspace:
    case Suite::kShift:
    case Suite::kStructure: lo = 2; break;
    case Suite::kClassify: lo = 3; break;
    case Suite::kKernel:
    case Suite::kQuotient: lo = 1; break;
  }
  if (cfg.m_max < lo || cfg.n_max < lo) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(suite_name(cfg.suite)) + " suite needs mmax, nmax >= " +
                    std::to_string(lo),
                "mmax");
  }
}

}  // namespace

std::string_view suite_name(Suite suite) noexcept {
  switch (suite) {
    case Suite::kAttack: return "attack";
    case Suite::kQuotient: return "quotient";
    case Suite::kNullspace: return "nullspace";
    case Suite::kKernel: return "kernel";
    case Suite::kStructure: return "structure";
    case Suite::kClassify: return "classify";
    case Suite::kShift: return "shift";
  }
  return "attack";
}

Suite parse_suite(std::string_view name) {
  for (Suite s : {Suite::kAttack, Suite::kQuotient, Suite::kNullspace, Suite::kKernel,
                  Suite::kStructure, Suite::kClassify, Suite::kShift}) {
    if (suite_name(s) == name) return s;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown suite '" + std::string(name) + "'", "suite");
}

void summarize(TrialReport& report) {
  report.successes = 0;
  report.max_residual = 0.0;
  for (const auto& r : report.rows) {
    if (r.success) ++report.successes;
    report.max_residual = std::max(report.max_residual, r.residual);
  }
  report.success_rate = report.rows.empty()
                            ? 0.0
                            : static_cast<double>(report.successes) /
                                  static_cast<double>(report.rows.size());
}

TrialReport run_trials(const TrialConfig& cfg) {
  check_config(cfg);

  std::vector<Task> tasks;
  switch (cfg.suite) {
    case Suite::kNullspace:
      for (std::size_t m = 2; m <= cfg.m_max; ++m)
        for (std::size_t n = 2; n <= cfg.n_max; ++n)
          for (int family = 0; family < 3; ++family) {
            if (family == 2 && (m != n || m < 3)) continue;
            for (std::size_t k = 0; k < cfg.count; ++k) tasks.push_back({m, n, family});
          }
      break;
    case Suite::kKernel:
      for (std::size_t m = 1; m <= cfg.m_max; ++m)
        for (std::size_t n = 1; n <= cfg.n_max; ++n) tasks.push_back({m, n, 0});
      break;
    case Suite::kStructure:
      for (std::size_t n = 1; n <= cfg.n_max; ++n) tasks.push_back({1, n, 0});
      for (std::size_t m = 2; m <= cfg.m_max; ++m) tasks.push_back({m, 1, 0});
      for (std::size_t n = 2; n <= cfg.n_max; ++n) tasks.push_back({2, n, 0});
      break;
    default:
      tasks.resize(cfg.count);
      break;
  }

  const std::function<TrialRow(std::size_t)> run_one = [&](std::size_t i) -> TrialRow {
    switch (cfg.suite) {
      case Suite::kAttack: return attack_row(i, cfg);
      case Suite::kQuotient: return quotient_row(i, cfg);
      case Suite::kNullspace: return nullspace_row(i, tasks[i], cfg);
      case Suite::kKernel: return kernel_row(i, tasks[i]);
      case Suite::kStructure: return structure_row(i, tasks[i]);
      case Suite::kClassify: return classify_row(i, cfg);
      case Suite::kShift: return shift_row(i, cfg);
    }
    return {};
  };

  std::vector<TrialRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      rows[i] = run_one(i);
      if (cfg.timing) {
        rows[i].wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      }
    }
  };
  const unsigned n_threads =
      static_cast<unsigned>(std::min<std::size_t>(cfg.threads, std::max<std::size_t>(rows.size(), 1)));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  TrialReport report{cfg.suite, cfg.seed, cfg.timing, std::move(rows), 0, 0.0, 0.0};
  summarize(report);
  return report;
}

PaperInputs default_paper_inputs() {
  return PaperInputs{Signal{1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1}, Signal{1, 0, 0, 0, 1, 0, 0},
                     Signal{1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0}, Signal{1, 0, 1, 0, 1, 0, 1}};
}

namespace {

PaperCheck compare(std::string name, std::span<const double> got, std::span<const double> want,
                   double tolerance) {
  PaperCheck c{std::move(name), true, 0.0, tolerance, std::nullopt};
  if (got.size() != want.size()) {
    c.passed = false;
    c.max_error = INFINITY;
    c.first_failing_index = std::min(got.size(), want.size());
    return c;
  }
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double err = std::abs(got[i] - want[i]);
    c.max_error = std::max(c.max_error, err);
    if (!(err <= tolerance) && !c.first_failing_index) c.first_failing_index = i;
  }
  c.passed = !c.first_failing_index;
  return c;
}

}  // namespace

PaperReport reproduce_paper(const PaperInputs& in) {
  const Signal common{1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0};
  const Signal x3{-0.366, 0, 0.5, 0, 0, 0, 0, 0, -0.366, 0, 0.5};
  const Signal y3{-0.366, 0, -0.866, 0, -0.366, 0, -0.866};
  const Signal x4{0.366, 0, 0.866, 0, 0, 0, 0, 0, 0.366, 0, 0.866};
  const Signal y4{0.366, 0, -0.5, 0, 0.366, 0, -0.5};
  const Signal z34{0.134, 0, 0.134, 0, -0.299, 0, 0.134, 0, -0.299,
                   0,     0.134, 0, -0.299, 0, 0.134, 0, -0.433};
  const DenseMatrix s3{{0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}};
  constexpr double kPrinted = 5e-4;
  constexpr double kEqual = 1e-12;

  PaperReport report{{}, true};
  auto add = [&](PaperCheck c) {
    report.passed = report.passed && c.passed;
    report.checks.push_back(std::move(c));
  };

  add(compare("conv_x1_y1", convolve(in.x1, in.y1).entries(), common.entries(), 0.0));
  add(compare("conv_x2_y2", convolve(in.x2, in.y2).entries(), common.entries(), 0.0));

  try {
    const RotationalFamily r = rotational_family(in.x1, in.x2, in.y1, in.y2,
                                                 std::numbers::pi / 3, std::numbers::pi / 6);
    add(compare("x3", r.x1p.entries(), x3.entries(), kPrinted));
    add(compare("y3", r.y1p.entries(), y3.entries(), kPrinted));
    add(compare("x4", r.x2p.entries(), x4.entries(), kPrinted));
    add(compare("y4", r.y2p.entries(), y4.entries(), kPrinted));
    const Signal a = convolve(r.x1p, r.y1p);
    const Signal b = convolve(r.x2p, r.y2p);
    add(compare("conv_x3_y3_eq_x4_y4", a.entries(), b.entries(), kEqual));
    add(compare("conv_x3_y3_printed", a.entries(), z34.entries(), kPrinted));
  } catch (const Error& e) {
    add(PaperCheck{std::string("rotational_family: ") + e.what(), false, INFINITY, 0.0, 0});
  }

  const DenseMatrix s = LiftedConvOp(3, 4).basis_element(2);
  add(compare("hankel_S3_3x4", s.data(), s3.data(), 0.0));
  return report;
}

}  // namespace blindid
