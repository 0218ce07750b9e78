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

#include "core/lifted.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "core/error.hpp"

namespace blindid {

Signal convolve(const Signal& x, const Signal& y) {
  const std::size_t m = x.size();
  const std::size_t n = y.size();
  std::vector<double> z(m + n - 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) z[i + j] += x[i] * y[j];
  }
  return Signal(std::move(z));
}

LiftedConvOp::LiftedConvOp(std::size_t m, std::size_t n) : m_(m), n_(n) {
  if (m == 0 || n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "lifted operator needs m, n >= 1");
  }
}

Signal LiftedConvOp::apply(const DenseMatrix& w) const {
  if (w.rows() != m_ || w.cols() != n_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix is " + std::to_string(w.rows()) + "x" + std::to_string(w.cols()) +
                    ", operator expects " + std::to_string(m_) + "x" + std::to_string(n_));
  }
  std::vector<double> z(output_length(), 0.0);
  for (std::size_t k = 0; k < m_; ++k) {
    for (std::size_t l = 0; l < n_; ++l) z[k + l] += w(k, l);
  }
  return Signal(std::move(z));
}

DenseMatrix LiftedConvOp::basis_element(std::size_t j) const {
  if (j >= output_length()) {
    throw Error(ErrorCode::kDimensionMismatch, "Hankel basis index out of range");
  }
  DenseMatrix s(m_, n_);
  for (std::size_t k = 0; k < m_; ++k) {
    if (j >= k && j - k < n_) s(k, j - k) = 1.0;
  }
  return s;
}

std::vector<DenseMatrix> LiftedConvOp::hankel_basis() const {
  std::vector<DenseMatrix> basis;
  basis.reserve(output_length());
  for (std::size_t j = 0; j < output_length(); ++j) basis.push_back(basis_element(j));
  return basis;
}

Signal lift_apply(const DenseMatrix& w) { return LiftedConvOp(w.rows(), w.cols()).apply(w); }

std::vector<DenseMatrix> hankel_basis(std::size_t m, std::size_t n) {
  return LiftedConvOp(m, n).hankel_basis();
}

double trace_inner(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "trace inner product of mismatched matrices");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += a.data()[i] * b.data()[i];
  return s;
}

DenseMatrix outer(const Signal& x, const Signal& y) {
  DenseMatrix w(x.size(), y.size());
  for (std::size_t k = 0; k < x.size(); ++k)
    for (std::size_t l = 0; l < y.size(); ++l) w(k, l) = x[k] * y[l];
  return w;
}

DenseMatrix embed_top_right(const DenseMatrix& block) {
  DenseMatrix w(block.rows() + 1, block.cols() + 1);
  for (std::size_t k = 0; k < block.rows(); ++k)
    for (std::size_t l = 0; l < block.cols(); ++l) w(k, l + 1) = block(k, l);
  return w;
}

DenseMatrix embed_bottom_left(const DenseMatrix& block) {
  DenseMatrix w(block.rows() + 1, block.cols() + 1);
  for (std::size_t k = 0; k < block.rows(); ++k)
    for (std::size_t l = 0; l < block.cols(); ++l) w(k + 1, l) = block(k, l);
  return w;
}

ShiftedPair antidiagonal_shift(const DenseMatrix& inner) {
  return ShiftedPair{embed_top_right(inner), embed_bottom_left(inner)};
}

std::size_t rank_estimate(const DenseMatrix& w, const ToleranceProfile& tol) {
  const double scale = w.max_abs();
  if (scale == 0.0) return 0;
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> view(
      w.data().data(), static_cast<Eigen::Index>(w.rows()), static_cast<Eigen::Index>(w.cols()));
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(view);
  const double cutoff = tol.threshold(scale);
  const Eigen::Index diag = std::min(qr.matrixR().rows(), qr.matrixR().cols());
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < diag; ++i) {
    if (std::abs(qr.matrixR()(i, i)) > cutoff) ++rank;
  }
  return rank;
}

}  // namespace blindid
