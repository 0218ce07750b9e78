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

#include "nullspace/nullspace.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"
#include "core/lifted.hpp"

namespace blindid {

namespace {

constexpr int kMaxDraws = 64;
constexpr double kMinMixingDet = 0.25;
constexpr double kMinFactorMagnitude = 0.1;

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> view(const DenseMatrix& w) {
  return {w.data().data(), static_cast<Eigen::Index>(w.rows()),
          static_cast<Eigen::Index>(w.cols())};
}

// (s; 0) when `top`, (0; s) otherwise.
std::vector<double> pad(const std::vector<double>& s, bool top) {
  std::vector<double> out(s.size() + 1, 0.0);
  std::copy(s.begin(), s.end(), out.begin() + (top ? 0 : 1));
  return out;
}

std::vector<double> slice(const std::vector<double>& s, std::size_t begin, std::size_t end) {
  return {s.begin() + static_cast<std::ptrdiff_t>(begin),
          s.begin() + static_cast<std::ptrdiff_t>(end)};
}

double max_abs(const std::vector<double>& s) {
  double m = 0.0;
  for (double e : s) m = std::max(m, std::abs(e));
  return m;
}

void scale_in_place(std::vector<double>& s, double alpha) {
  for (double& e : s) e *= alpha;
}

// Sum of two rank-1 products, the common shape of every generated element:
// Y = a p' + b q'.
struct RankTwo {
  std::vector<double> a, b, p, q;
};

// Factorizes X, known to be T(u1 v1') + B(u2 v2') with X(m-1, 0) nonzero.
ClassifiedElement factor_corner(const DenseMatrix& x, const ToleranceProfile& tol);

ClassifiedElement classify_impl(const DenseMatrix& w, const ToleranceProfile& tol) {
  const std::size_t m = w.rows();
  const std::size_t n = w.cols();
  const double cutoff = tol.threshold(w.max_abs());
  if (std::abs(w(m - 1, 0)) > cutoff) return factor_corner(w, tol);
  if (std::abs(w(0, n - 1)) > cutoff) {
    ClassifiedElement t = factor_corner(w.transposed(), tol);
    return ClassifiedElement{w, t.certificate.transposed(), t.refactorization_residual};
  }
  return ClassifiedElement{w, RawCertificate{}, 0.0};
}

NullspaceCertificate classify_inner(const DenseMatrix& inner, const ToleranceProfile& tol) {
  if (inner.rows() < 2 || inner.cols() < 2) return RawCertificate{};
  if (!is_in_rank2_nullspace(inner, tol)) return RawCertificate{};
  try {
    return classify_impl(inner, tol).certificate;
  } catch (const Error&) {
    return RawCertificate{};
  }
}

ClassifiedElement factor_corner(const DenseMatrix& x, const ToleranceProfile& tol) {
  const std::size_t m = x.rows();
  const std::size_t n = x.cols();
  const double cutoff = tol.threshold(x.max_abs());
  const std::vector<double> c0 = x.column(0).values();

  // First column independent of column 0.
  const double c0c0 = Signal(c0).norm() * Signal(c0).norm();
  std::size_t j0 = n;
  for (std::size_t j = 1; j < n && j0 == n; ++j) {
    std::vector<double> cj = x.column(j).values();
    double proj = 0.0;
    for (std::size_t k = 0; k < m; ++k) proj += c0[k] * cj[k];
    proj /= c0c0;
    double resid = 0.0;
    for (std::size_t k = 0; k < m; ++k) resid = std::max(resid, std::abs(cj[k] - proj * c0[k]));
    if (resid > cutoff) j0 = j;
  }
  if (j0 == n) {
    throw Error(ErrorCode::kNumerical, "corner-nonzero element has rank below 2");
  }

  const std::vector<double> u2 = slice(c0, 1, m);
  const std::vector<double> cj0 = x.column(j0).values();
  std::vector<double> u1 = slice(cj0, 0, m - 1);
  if (std::abs(cj0[m - 1]) > cutoff) {
    const double alpha = c0[m - 1] / cj0[m - 1];
    for (std::size_t k = 0; k + 1 < m; ++k) u1[k] = alpha * cj0[k] - c0[k];
  }

  // Column coefficients on a = (u1; 0), b = (0; u2); least squares is exact
  // for an element of this form, and forces v(0) = 0, v*(n-1) = 0.
  Eigen::MatrixXd ab(static_cast<Eigen::Index>(m), 2);
  const std::vector<double> a = pad(u1, true);
  const std::vector<double> b = pad(u2, false);
  for (std::size_t k = 0; k < m; ++k) {
    ab(static_cast<Eigen::Index>(k), 0) = a[k];
    ab(static_cast<Eigen::Index>(k), 1) = b[k];
  }
  const Eigen::MatrixXd coeffs = ab.colPivHouseholderQr().solve(Eigen::MatrixXd(view(x)));
  std::vector<double> v1(n - 1), v2(n - 1);
  for (std::size_t l = 0; l + 1 < n; ++l) {
    v1[l] = coeffs(0, static_cast<Eigen::Index>(l + 1));
    v2[l] = coeffs(1, static_cast<Eigen::Index>(l));
  }

  const Signal su1(u1), su2(u2), sv1(v1), sv2(v2);
  const DenseMatrix inner = outer(su1, sv1) + outer(su2, sv2);
  const double inner_scale =
      std::max(su1.max_abs() * sv1.max_abs(), su2.max_abs() * sv2.max_abs());

  NullspaceCertificate cert = RawCertificate{};
  if (inner.max_abs() <= tol.threshold(std::max(inner_scale, x.max_abs()))) {
    cert = N0Certificate{su1, sv1};
  } else {
    cert = N2Certificate{su1, su2, sv1, sv2,
                         std::make_shared<const NullspaceCertificate>(classify_inner(inner, tol))};
  }
  const double residual = max_abs_diff(x, cert.reconstruct());
  if (!(residual <= cutoff)) {
    throw Error(ErrorCode::kNumerical,
                "refactorization residual " + std::to_string(residual) + " exceeds tolerance");
  }
  return ClassifiedElement{x, std::move(cert), residual};
}

N2Certificate validated(N2Certificate c) {
  const std::size_t r = c.u1.size();
  const std::size_t s = c.v1.size();
  if (c.u2.size() != r || c.v2.size() != s) {
    throw Error(ErrorCode::kDimensionMismatch, "N2 factors must pair u1/u2 and v1/v2 lengths");
  }
  if (r < 2 || s < 2) {
    throw Error(ErrorCode::kInvalidArgument, "N2 elements need m, n >= 3");
  }
  if (!c.inner) c.inner = std::make_shared<const NullspaceCertificate>(RawCertificate{});
  return c;
}

}  // namespace

std::string_view kind_name(CertificateKind kind) noexcept {
  switch (kind) {
    case CertificateKind::kN0: return "n0";
    case CertificateKind::kN2: return "n2";
    case CertificateKind::kM2: return "m2";
    case CertificateKind::kRaw: return "raw";
  }
  return "raw";
}

NullspaceCertificate::NullspaceCertificate(N2Certificate c) : value_(validated(std::move(c))) {}

CertificateKind NullspaceCertificate::kind() const noexcept {
  return static_cast<CertificateKind>(value_.index());
}

std::size_t NullspaceCertificate::depth() const noexcept {
  if (const auto* n2 = std::get_if<N2Certificate>(&value_)) return 1 + n2->inner->depth();
  return 0;
}

DenseMatrix NullspaceCertificate::reconstruct() const {
  switch (kind()) {
    case CertificateKind::kN0: {
      const auto& c = as<N0Certificate>();
      return n0_element(c.u, c.v);
    }
    case CertificateKind::kN2: {
      const auto& c = as<N2Certificate>();
      return embed_top_right(outer(c.u1, c.v1)) + embed_bottom_left(outer(c.u2, c.v2));
    }
    case CertificateKind::kM2: {
      const auto& c = as<M2Certificate>();
      return m2_element(c.u, c.lambda);
    }
    case CertificateKind::kRaw: break;
  }
  throw Error(ErrorCode::kPrecondition, "raw certificate carries no parameters");
}

NullspaceCertificate NullspaceCertificate::transposed() const {
  switch (kind()) {
    case CertificateKind::kN0: {
      const auto& c = as<N0Certificate>();
      return N0Certificate{c.v.negated(), c.u};
    }
    case CertificateKind::kN2: {
      const auto& c = as<N2Certificate>();
      return N2Certificate{c.v2, c.v1, c.u2, c.u1,
                           std::make_shared<const NullspaceCertificate>(c.inner->transposed())};
    }
    case CertificateKind::kM2: {
      const auto& c = as<M2Certificate>();
      return M2Certificate{c.u.negated(), c.lambda};
    }
    case CertificateKind::kRaw: break;
  }
  return RawCertificate{};
}

DenseMatrix n0_element(const Signal& u, const Signal& v) {
  const std::size_t m = u.size() + 1;
  const std::size_t n = v.size() + 1;
  const auto uu = [&](std::size_t k) { return k < u.size() ? u[k] : 0.0; };
  const auto vv = [&](std::size_t l) { return l < v.size() ? v[l] : 0.0; };
  DenseMatrix q(m, n);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      const double plus = l >= 1 ? uu(k) * vv(l - 1) : 0.0;
      const double minus = k >= 1 ? uu(k - 1) * vv(l) : 0.0;
      q(k, l) = plus - minus;
    }
  }
  return q;
}

DenseMatrix n2_lift(const Signal& u1, const Signal& u2, const Signal& v1, const Signal& v2,
                    const ToleranceProfile& tol) {
  if (u1.size() != u2.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "u1 and u2 lengths differ", "u2");
  }
  if (v1.size() != v2.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "v1 and v2 lengths differ", "v2");
  }
  if (u1.size() < 2 || v1.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "N2 lift needs m, n >= 3");
  }
  const DenseMatrix inner = outer(u1, v1) + outer(u2, v2);
  const double scale = std::max({inner.max_abs(), u1.max_abs() * v1.max_abs(),
                                 u2.max_abs() * v2.max_abs()});
  const double defect = lift_apply(inner).max_abs();
  if (defect > tol.threshold(scale)) {
    throw Error(ErrorCode::kPrecondition,
                "u1 v1' + u2 v2' is not in the lifted kernel (defect " + std::to_string(defect) +
                    ")");
  }
  return embed_top_right(outer(u1, v1)) + embed_bottom_left(outer(u2, v2));
}

GeneratedElement sample_n0(std::size_t m, std::size_t n, Rng& rng) {
  if (m < 2 || n < 2) throw Error(ErrorCode::kInvalidArgument, "N0 elements need m, n >= 2");
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    Signal u = uniform_signal(m - 1, rng);
    Signal v = uniform_signal(n - 1, rng);
    if (u.max_abs() < kMinFactorMagnitude || v.max_abs() < kMinFactorMagnitude) continue;
    DenseMatrix q = n0_element(u, v);
    return GeneratedElement{std::move(q), N0Certificate{std::move(u), std::move(v)}};
  }
  throw Error(ErrorCode::kNumerical, "could not draw a nondegenerate N0 element");
}

GeneratedElement n2_generate(std::size_t m, std::size_t n, Rng& rng) {
  if (m < 2 || n < 2) throw Error(ErrorCode::kInvalidArgument, "N2 generation needs m, n >= 2");
  if (m > n) {
    GeneratedElement t = n2_generate(n, m, rng);
    return GeneratedElement{t.matrix.transposed(), t.certificate.transposed()};
  }

  GeneratedElement base = sample_n0(2, n - m + 2, rng);
  if (m == 2) return base;

  const auto& n0 = base.certificate.as<N0Certificate>();
  RankTwo f{pad(n0.u.values(), true), pad(n0.u.negated().values(), false),
            pad(n0.v.values(), false), pad(n0.v.values(), true)};
  NullspaceCertificate cert = base.certificate;

  for (std::size_t step = 0; step + 2 < m; ++step) {
    double a00 = 0, a01 = 0, a10 = 0, a11 = 0, det = 0;
    int draw = 0;
    for (; draw < kMaxDraws; ++draw) {
      a00 = rng.uniform(-1.0, 1.0);
      a01 = rng.uniform(-1.0, 1.0);
      a10 = rng.uniform(-1.0, 1.0);
      a11 = rng.uniform(-1.0, 1.0);
      det = a00 * a11 - a01 * a10;
      if (std::abs(det) >= kMinMixingDet) break;
    }
    if (draw == kMaxDraws) throw Error(ErrorCode::kNumerical, "no well-conditioned mixing drawn");

    // U A and A^{-1} V preserve U V.
    const std::size_t r = f.a.size();
    const std::size_t c = f.p.size();
    std::vector<double> u1(r), u2(r), v1(c), v2(c);
    for (std::size_t k = 0; k < r; ++k) {
      u1[k] = a00 * f.a[k] + a10 * f.b[k];
      u2[k] = a01 * f.a[k] + a11 * f.b[k];
    }
    for (std::size_t l = 0; l < c; ++l) {
      v1[l] = (a11 * f.p[l] - a01 * f.q[l]) / det;
      v2[l] = (-a10 * f.p[l] + a00 * f.q[l]) / det;
    }
    const double su = std::max(max_abs(u1), max_abs(u2));
    const double sv = std::max(max_abs(v1), max_abs(v2));
    if (su == 0.0 || sv == 0.0) throw Error(ErrorCode::kNumerical, "mixing collapsed the factors");
    // Balance the two sides; u1 v1' + u2 v2' is unchanged.
    const double k = std::sqrt(sv / su);
    scale_in_place(u1, k);
    scale_in_place(u2, k);
    scale_in_place(v1, 1.0 / k);
    scale_in_place(v2, 1.0 / k);

    cert = N2Certificate{Signal(u1), Signal(u2), Signal(v1), Signal(v2),
                         std::make_shared<const NullspaceCertificate>(std::move(cert))};
    f = RankTwo{pad(u1, true), pad(u2, false), pad(v1, false), pad(v2, true)};
  }
  DenseMatrix y = cert.reconstruct();
  return GeneratedElement{std::move(y), std::move(cert)};
}

GeneratedElement n2_generate(std::size_t m, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return n2_generate(m, n, rng);
}

DenseMatrix m2_element(const Signal& u, double lambda) {
  if (!std::isfinite(lambda)) throw Error(ErrorCode::kInvalidArgument, "lambda must be finite");
  if (lambda == 0.0) throw Error(ErrorCode::kPrecondition, "lambda must be nonzero", "lambda");
  if (u.is_zero()) throw Error(ErrorCode::kPrecondition, "u must be nonzero", "u");
  const std::size_t n = u.size() + 2;
  DenseMatrix w(n, n);
  for (std::size_t i = 0; i < u.size(); ++i) {
    w(0, i + 1) = -u[i];
    w(i + 1, 0) = u[i];
    w(i + 1, n - 1) = lambda * u[i];
    w(n - 1, i + 1) = -lambda * u[i];
  }
  return w;
}

std::vector<DenseMatrix> kernel_basis(std::size_t m, std::size_t n) {
  const LiftedConvOp op(m, n);
  if (op.kernel_dimension() == 0) return {};
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(op.output_length()),
                                            static_cast<Eigen::Index>(m * n));
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = 0; l < n; ++l)
      c(static_cast<Eigen::Index>(k + l), static_cast<Eigen::Index>(k * n + l)) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(c);
  if (lu.dimensionOfKernel() == 0) return {};
  const Eigen::MatrixXd kernel = lu.kernel();
  std::vector<DenseMatrix> basis;
  basis.reserve(static_cast<std::size_t>(kernel.cols()));
  for (Eigen::Index j = 0; j < kernel.cols(); ++j) {
    std::vector<double> entries(kernel.col(j).data(), kernel.col(j).data() + kernel.rows());
    basis.emplace_back(m, n, std::move(entries));
  }
  return basis;
}

bool is_in_rank2_nullspace(const DenseMatrix& w, const ToleranceProfile& tol) {
  const double cutoff = tol.threshold(w.max_abs());
  if (lift_apply(w).max_abs() > cutoff) return false;
  return rank_estimate(w, tol) <= 2;
}

ClassifiedElement classify(const DenseMatrix& w, const ToleranceProfile& tol) {
  tol.validate();
  if (w.is_zero()) throw Error(ErrorCode::kPrecondition, "zero matrix has no certificate");
  if (!is_in_rank2_nullspace(w, tol)) {
    throw Error(ErrorCode::kPrecondition, "matrix is not a rank-2 element of the lifted kernel");
  }
  return classify_impl(w, tol);
}

}  // namespace blindid
