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

#include "core/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "core/error.hpp"

namespace blindid {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(what) + " entry " + std::to_string(i) + " is not finite",
                  "/entries/" + std::to_string(i));
    }
  }
}

double max_abs_of(std::span<const double> values) noexcept {
  double best = 0.0;
  for (double v : values) best = std::max(best, std::abs(v));
  return best;
}

}  // namespace

void ToleranceProfile::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !std::isfinite(abs_tol) || !std::isfinite(rel_tol)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerances must be finite and nonnegative", "tol");
  }
}

Signal::Signal(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "signal length must be at least 1", "/len");
  }
  require_finite(entries_, "signal");
}

Signal::Signal(std::initializer_list<double> entries) : Signal(std::vector<double>(entries)) {}

Signal Signal::zeros(std::size_t length) { return Signal(std::vector<double>(length, 0.0)); }

double Signal::at(std::size_t i) const {
  if (i >= entries_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "signal index out of range");
  }
  return entries_[i];
}

double Signal::max_abs() const noexcept { return max_abs_of(entries_); }

double Signal::norm() const noexcept {
  double s = 0.0;
  for (double v : entries_) s += v * v;
  return std::sqrt(s);
}

bool Signal::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](double v) { return v == 0.0; });
}

Signal Signal::scaled(double alpha) const {
  std::vector<double> out(entries_);
  for (double& v : out) v *= alpha;
  return Signal(std::move(out));
}

Signal Signal::reversed() const {
  return Signal(std::vector<double>(entries_.rbegin(), entries_.rend()));
}

double dot(const Signal& a, const Signal& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "dot product of signals with different lengths");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::kInvalidArgument, "matrix dimensions must be at least 1");
  }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::kInvalidArgument, "matrix dimensions must be at least 1");
  }
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix data size does not match dimensions");
  }
  require_finite(data_, "matrix");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  if (rows_ == 0 || cols_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "matrix dimensions must be at least 1");
  }
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::kDimensionMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_, "matrix");
}

double DenseMatrix::at(std::size_t k, std::size_t l) const {
  if (k >= rows_ || l >= cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix index out of range");
  }
  return (*this)(k, l);
}

Signal DenseMatrix::row(std::size_t k) const {
  return Signal(std::vector<double>(data_.begin() + static_cast<std::ptrdiff_t>(k * cols_),
                                    data_.begin() + static_cast<std::ptrdiff_t>((k + 1) * cols_)));
}

Signal DenseMatrix::column(std::size_t l) const {
  std::vector<double> out(rows_);
  for (std::size_t k = 0; k < rows_; ++k) out[k] = (*this)(k, l);
  return Signal(std::move(out));
}

double DenseMatrix::max_abs() const noexcept { return max_abs_of(data_); }

bool DenseMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
}

bool DenseMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t k = 0; k < rows_; ++k)
    for (std::size_t l = 0; l < cols_; ++l) t(l, k) = (*this)(k, l);
  return t;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix sum with different dimensions");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix difference with different dimensions");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double alpha) {
  for (double& v : data_) v *= alpha;
  return *this;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
DenseMatrix operator*(double alpha, DenseMatrix a) { return a *= alpha; }

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "comparing matrices with different dimensions");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    best = std::max(best, std::abs(a.data()[i] - b.data()[i]));
  }
  return best;
}

double max_abs_diff(const Signal& a, const Signal& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "comparing signals with different lengths");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

}  // namespace blindid
