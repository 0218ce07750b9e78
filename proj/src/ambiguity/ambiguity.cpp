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

#include "ambiguity/ambiguity.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/lifted.hpp"
#include "quotient/quotient.hpp"

namespace blindid {

namespace {

constexpr double kDegeneracy = 1e-6;
constexpr double kCollinearLimit = 1.0 - 1e-9;

void require_same_length(const Signal& a, const Signal& b, const char* path) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()) +
                    " differ",
                path);
  }
}

bool has_shift_pattern(const Signal& x, const Signal& y) {
  return (x[x.size() - 1] == 0.0 && y[0] == 0.0) || (x[0] == 0.0 && y[y.size() - 1] == 0.0);
}

}  // namespace

double collinearity(const Signal& a, const Signal& b) {
  require_same_length(a, b, "x_alt");
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  return std::min(1.0, std::abs(dot(a, b)) / (na * nb));
}

AmbiguousPair make_pair(Signal x, Signal y, Signal x_alt, Signal y_alt) {
  require_same_length(x, x_alt, "x_alt");
  require_same_length(y, y_alt, "y_alt");
  const double residual = max_abs_diff(convolve(x, y), convolve(x_alt, y_alt));
  const double col = collinearity(x, x_alt);
  return AmbiguousPair{std::move(x), std::move(y), std::move(x_alt), std::move(y_alt), residual,
                       col};
}

RotationalFamily rotational_family(const Signal& x1, const Signal& x2, const Signal& y1,
                                   const Signal& y2, double theta, double phi,
                                   const ToleranceProfile& tol) {
  require_same_length(x1, x2, "x2");
  require_same_length(y1, y2, "y2");
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw Error(ErrorCode::kInvalidArgument, "angles must be finite");
  }
  const Signal z1 = convolve(x1, y1);
  const Signal z2 = convolve(x2, y2);
  const double gap = max_abs_diff(z1, z2);
  if (gap > tol.threshold(std::max(z1.max_abs(), z2.max_abs()))) {
    throw Error(ErrorCode::kPrecondition,
                "seed pairs do not share a convolution (gap " + std::to_string(gap) + ")");
  }
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  const std::size_t m = x1.size(), n = y1.size();
  std::vector<double> a(m), c(m), b(n), d(n);
  for (std::size_t i = 0; i < m; ++i) {
    a[i] = x1[i] * ct - x2[i] * st;
    c[i] = x1[i] * cp - x2[i] * sp;
  }
  for (std::size_t j = 0; j < n; ++j) {
    b[j] = y1[j] * sp - y2[j] * cp;
    d[j] = y1[j] * st - y2[j] * ct;
  }
  const bool degenerate = std::abs(std::sin(theta - phi)) <= 1e-12;
  return RotationalFamily{Signal(std::move(a)), Signal(std::move(b)), Signal(std::move(c)),
                          Signal(std::move(d)), degenerate};
}

Signal y_form(const Signal& v, double phi) { return reconstruct(v, phi).negated(); }

AmbiguousPair shift_ambiguity(const Signal& x, const Signal& y) {
  if (x.is_zero() || y.is_zero()) {
    throw Error(ErrorCode::kPrecondition, "x and y must be nonzero");
  }
  const std::size_t m = x.size(), n = y.size();
  std::vector<double> xs(m, 0.0), ys(n, 0.0);
  if (x[m - 1] == 0.0 && y[0] == 0.0) {
    for (std::size_t i = 0; i + 1 < m; ++i) xs[i + 1] = x[i];
    for (std::size_t j = 0; j + 1 < n; ++j) ys[j] = y[j + 1];
  } else if (x[0] == 0.0 && y[n - 1] == 0.0) {
    for (std::size_t i = 0; i + 1 < m; ++i) xs[i] = x[i + 1];
    for (std::size_t j = 0; j + 1 < n; ++j) ys[j + 1] = y[j];
  } else {
    throw Error(ErrorCode::kPrecondition,
                "needs x(m) = y(1) = 0 or x(1) = y(n) = 0 for a shift ambiguity");
  }
  return make_pair(x, y, Signal(std::move(xs)), Signal(std::move(ys)));
}

AttackResult attack(const Signal& x, const Signal& y, const ToleranceProfile& tol) {
  tol.validate();
  const std::size_t m = x.size(), n = y.size();
  if (m < 4 || n < 4 || m % 2 != 0 || n % 2 != 0) {
    throw Error(ErrorCode::kPrecondition,
                "attack needs even m, n >= 4 (got m=" + std::to_string(m) +
                    ", n=" + std::to_string(n) + ")");
  }
  const double cx = tol.threshold(x.max_abs());
  const double cy = tol.threshold(y.max_abs());
  if (std::abs(x[0]) <= cx || std::abs(x[m - 1]) <= cx || std::abs(y[0]) <= cy ||
      std::abs(y[n - 1]) <= cy) {
    std::string msg = "attack needs x(1), x(m), y(1), y(n) all nonzero";
    if (has_shift_pattern(x, y)) msg += "; the zero pattern admits shift_ambiguity instead";
    throw Error(ErrorCode::kPrecondition, msg);
  }

  const std::vector<QuotientElement> xs = quotient_decompose(x, tol);
  const std::vector<QuotientElement> ys = quotient_decompose(y.negated(), tol);
  const double y_cutoff = tol.threshold(y.max_abs());

  std::size_t skipped_degenerate = 0, skipped_unverified = 0;
  for (const QuotientElement& ex : xs) {
    for (const QuotientElement& ey : ys) {
      // The y-form of (v, phi) must reproduce y before the pair is trusted.
      if (max_abs_diff(y_form(ey.w_star, ey.gamma), y) > y_cutoff) {
        ++skipped_unverified;
        continue;
      }
      const double theta = ex.gamma, phi = ey.gamma;
      if (std::abs(std::cos(phi)) <= kDegeneracy || std::abs(std::sin(phi - theta)) <= kDegeneracy) {
        ++skipped_degenerate;
        continue;
      }
      AmbiguousPair pair =
          make_pair(x, y, reconstruct(ex.w_star, phi), y_form(ey.w_star, theta));
      if (!verify_pair(pair, tol).certifies_unidentifiability) {
        ++skipped_unverified;
        continue;
      }
      return AttackResult{std::move(pair), theta, phi, ex.w_star, ey.w_star};
    }
  }
  throw Error(ErrorCode::kNotFound,
              "no usable (theta, phi) combination: " + std::to_string(xs.size()) +
                  " x-elements, " + std::to_string(ys.size()) + " y-elements, " +
                  std::to_string(skipped_degenerate) + " degenerate, " +
                  std::to_string(skipped_unverified) + " failed verification");
}

VerificationReport verify_pair(const AmbiguousPair& p, const ToleranceProfile& tol) {
  require_same_length(p.x, p.x_alt, "x_alt");
  require_same_length(p.y, p.y_alt, "y_alt");
  const Signal z = convolve(p.x, p.y);
  const double residual = max_abs_diff(z, convolve(p.x_alt, p.y_alt));
  const double col = collinearity(p.x, p.x_alt);
  const bool ok = residual <= tol.threshold(z.max_abs()) && col < kCollinearLimit;
  return VerificationReport{residual, col, ok};
}

}  // namespace blindid
