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

#include "quotient/quotient.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <tuple>

#include "core/error.hpp"

namespace blindid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kImagCutoff = 1e-8;
constexpr double kRootMerge = 1e-8;
constexpr int kPolishSteps = 8;
constexpr int kRefineSteps = 4;

double wrap_angle(double g) {
  g = std::fmod(g, kTwoPi);
  if (g < 0.0) g += kTwoPi;
  if (g >= kTwoPi) g -= kTwoPi;
  return g;
}

double angle_distance(double a, double b) {
  const double d = std::abs(wrap_angle(a - b));
  return std::min(d, kTwoPi - d);
}

// Horner evaluation of p and p'.
std::pair<double, double> eval_with_derivative(const std::vector<double>& c, double t) {
  double p = 0.0, dp = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) {
    dp = dp * t + p;
    p = p * t + c[i];
  }
  return {p, dp};
}

double polish(const std::vector<double>& c, double t) {
  auto [p, dp] = eval_with_derivative(c, t);
  for (int it = 0; it < kPolishSteps && p != 0.0 && dp != 0.0; ++it) {
    double step = p / dp;
    bool improved = false;
    for (int halving = 0; halving < 10; ++halving, step *= 0.5) {
      const double cand = t - step;
      const double pc = eval_with_derivative(c, cand).first;
      if (std::abs(pc) < std::abs(p)) {
        t = cand;
        std::tie(p, dp) = eval_with_derivative(c, t);
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return t;
}

// Parlett-Reinsch balancing with power-of-two scalings; eigenvalues are
// unchanged exactly.
void balance(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix, f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

// Backward recursion s(j-1) = c(j) - c(1) s(j) t evaluated at a number t.
std::vector<double> recursion_at(const std::vector<double>& c, double t) {
  const std::size_t d = c.size();
  std::vector<double> s(d - 1, 0.0);  // s[j] holds s(j+1)
  s[d - 2] = 1.0;
  for (std::size_t j = d - 2; j >= 1; --j) s[j - 1] = c[j] - c[0] * s[j] * t;
  return s;
}

// Newton iteration on the full system reconstruct(w*, gamma) = w. The
// recursion amplifies rounding for larger d; a few steps restore accuracy.
void refine(const Signal& w, std::vector<double>& ws, double& gamma) {
  const std::size_t d = w.size();
  const auto residual_of = [&](const std::vector<double>& x, double g) {
    return reconstruct(Signal(x), g).values();
  };
  std::vector<double> f = residual_of(ws, gamma);
  double err = 0.0;
  for (std::size_t j = 0; j < d; ++j) err = std::max(err, std::abs(f[j] - w[j]));
  for (int it = 0; it < kRefineSteps && err > 0.0; ++it) {
    const double cg = std::cos(gamma), sg = std::sin(gamma);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d),
                                                static_cast<Eigen::Index>(d));
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) {
      const auto row = static_cast<Eigen::Index>(j);
      const double cur = j < d - 1 ? ws[j] : 0.0;
      const double prev = j >= 1 ? ws[j - 1] : 0.0;
      if (j < d - 1) jac(row, static_cast<Eigen::Index>(j)) = cg;
      if (j >= 1) jac(row, static_cast<Eigen::Index>(j - 1)) = -sg;
      jac(row, static_cast<Eigen::Index>(d - 1)) = -cur * sg - prev * cg;
      rhs(row) = w[j] - f[j];
    }
    const Eigen::VectorXd delta = jac.partialPivLu().solve(rhs);
    if (!delta.allFinite()) break;
    std::vector<double> next = ws;
    for (std::size_t j = 0; j + 1 < d; ++j) next[j] += delta(static_cast<Eigen::Index>(j));
    const double next_gamma = gamma + delta(static_cast<Eigen::Index>(d - 1));
    const std::vector<double> fn = residual_of(next, next_gamma);
    double next_err = 0.0;
    for (std::size_t j = 0; j < d; ++j) next_err = std::max(next_err, std::abs(fn[j] - w[j]));
    if (!(next_err < err)) break;
    ws = std::move(next);
    gamma = next_gamma;
    f = fn;
    err = next_err;
  }
  gamma = wrap_angle(gamma);
}

bool same_element(const QuotientElement& a, const QuotientElement& b) {
  if (angle_distance(a.gamma, b.gamma) > kRootMerge) return false;
  const double scale = std::max({1.0, a.w_star.max_abs(), b.w_star.max_abs()});
  return max_abs_diff(a.w_star, b.w_star) <= kRootMerge * scale;
}

void push_unique(std::vector<QuotientElement>& out, QuotientElement e) {
  for (const auto& existing : out) {
    if (same_element(existing, e)) return;
  }
  out.push_back(std::move(e));
}

}  // namespace

Signal reconstruct(const Signal& w_star, double gamma) {
  if (!std::isfinite(gamma)) throw Error(ErrorCode::kInvalidArgument, "gamma must be finite");
  const std::size_t d = w_star.size() + 1;
  const double c = std::cos(gamma), s = std::sin(gamma);
  std::vector<double> w(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double cur = j < d - 1 ? w_star[j] : 0.0;
    const double prev = j >= 1 ? w_star[j - 1] : 0.0;
    w[j] = cur * c - prev * s;
  }
  return Signal(std::move(w));
}

Signal reconstruct(const Signal& w_star, double gamma, std::size_t d) {
  if (w_star.size() + 1 != d) {
    throw Error(ErrorCode::kDimensionMismatch,
                "w_star has length " + std::to_string(w_star.size()) + ", expected " +
                    std::to_string(d - 1),
                "w_star");
  }
  return reconstruct(w_star, gamma);
}

namespace detail {

std::vector<double> consistency_polynomial(const Signal& w) {
  const std::size_t d = w.size();
  if (d < 3) throw Error(ErrorCode::kInvalidArgument, "consistency polynomial needs d >= 3");
  std::vector<double> c(d);
  for (std::size_t j = 0; j < d; ++j) c[j] = w[j] / w[d - 1];

  // poly holds s(j) as ascending coefficients in t.
  std::vector<double> poly{1.0};
  for (std::size_t j = d - 2; j >= 1; --j) {
    std::vector<double> next(poly.size() + 1, 0.0);
    next[0] = c[j];
    for (std::size_t i = 0; i < poly.size(); ++i) next[i + 1] -= c[0] * poly[i];
    poly = std::move(next);
  }
  std::vector<double> q(poly.size() + 1, 0.0);
  q[0] = -1.0;
  for (std::size_t i = 0; i < poly.size(); ++i) q[i + 1] += poly[i];
  return q;
}

std::vector<double> real_roots(const std::vector<double>& coeffs) {
  std::vector<double> c = coeffs;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() < 2) return {};
  const std::size_t deg = c.size() - 1;
  const double lead = c.back();

  std::vector<double> candidates;
  if (deg == 1) {
    candidates.push_back(-c[0] / c[1]);
  } else {
    const auto n = static_cast<Eigen::Index>(deg);
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -c[static_cast<std::size_t>(i)] / lead;
    if (!comp.allFinite()) throw Error(ErrorCode::kNumerical, "companion matrix is not finite");
    balance(comp);
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorCode::kNumerical, "companion eigenvalue solve did not converge");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const std::complex<double> z = es.eigenvalues()(i);
      if (std::abs(z.imag()) <= kImagCutoff * (1.0 + std::abs(z.real()))) {
        candidates.push_back(z.real());
      }
    }
  }

  std::vector<double> roots;
  for (double t : candidates) roots.push_back(polish(c, t));
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double t : roots) {
    if (!unique.empty() &&
        std::abs(t - unique.back()) <= kRootMerge * std::max(1.0, std::abs(t))) {
      continue;
    }
    unique.push_back(t);
  }
  return unique;
}

}  // namespace detail

std::vector<QuotientElement> quotient_decompose(const Signal& w, const ToleranceProfile& tol) {
  tol.validate();
  const std::size_t d = w.size();
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "quotient decomposition needs d >= 2", "w");
  const double scale = w.max_abs();
  const double cutoff = tol.threshold(scale);
  if (std::abs(w[0]) <= cutoff || std::abs(w[d - 1]) <= cutoff) {
    throw Error(ErrorCode::kPrecondition, "both endpoints of w must be nonzero", "w");
  }

  std::vector<QuotientElement> out;
  const auto consider = [&](std::vector<double> ws, double gamma) {
    refine(w, ws, gamma);
    Signal star(std::move(ws));
    const double residual = max_abs_diff(reconstruct(star, gamma), w);
    if (!(residual <= cutoff)) return;
    push_unique(out, QuotientElement{std::move(star), gamma, residual});
  };

  if (d == 2) {
    const double r = std::hypot(w[0], w[1]);
    const double gamma = wrap_angle(std::atan2(-w[1], w[0]));
    consider({r}, gamma);
    consider({-r}, gamma + std::numbers::pi);
    return out;
  }

  std::vector<double> c(d);
  for (std::size_t j = 0; j < d; ++j) c[j] = w[j] / w[d - 1];
  for (double t : detail::real_roots(detail::consistency_polynomial(w))) {
    if (t == 0.0 || !std::isfinite(t)) continue;
    const std::vector<double> s = recursion_at(c, t);
    const double base = std::atan(-s[0] / c[0]);
    for (double gamma : {base, base + std::numbers::pi}) {
      const double sg = std::sin(gamma);
      if (sg == 0.0) continue;
      std::vector<double> ws(d - 1);
      for (std::size_t j = 0; j + 1 < d; ++j) ws[j] = -s[j] * w[d - 1] / sg;
      consider(std::move(ws), gamma);
    }
  }
  return out;
}

}  // namespace blindid
