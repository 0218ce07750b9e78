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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace blindid {

// Approximate comparisons use `abs_tol + rel_tol * scale`, where scale is the
// largest magnitude among the operands being compared.
struct ToleranceProfile {
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;

  double threshold(double scale) const noexcept { return abs_tol + rel_tol * scale; }
  void validate() const;
};

// A finite real vector of fixed length >= 1.
class Signal {
 public:
  explicit Signal(std::vector<double> entries);
  Signal(std::initializer_list<double> entries);

  static Signal zeros(std::size_t length);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const noexcept { return entries_[i]; }
  double at(std::size_t i) const;
  std::span<const double> entries() const noexcept { return entries_; }
  const std::vector<double>& values() const noexcept { return entries_; }

  double max_abs() const noexcept;
  double norm() const noexcept;
  bool is_zero() const noexcept;

  Signal scaled(double alpha) const;
  Signal negated() const { return scaled(-1.0); }
  Signal reversed() const;

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  std::vector<double> entries_;
};

double dot(const Signal& a, const Signal& b);

// Dense row-major real matrix with fixed dimensions (rows, cols >= 1).
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t k, std::size_t l) const noexcept { return data_[k * cols_ + l]; }
  double& operator()(std::size_t k, std::size_t l) noexcept { return data_[k * cols_ + l]; }
  double at(std::size_t k, std::size_t l) const;

  std::span<const double> data() const noexcept { return data_; }
  Signal row(std::size_t k) const;
  Signal column(std::size_t l) const;

  double max_abs() const noexcept;
  bool is_zero() const noexcept;
  bool all_finite() const noexcept;
  DenseMatrix transposed() const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(double alpha);

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(double alpha, DenseMatrix a);

// Largest entrywise absolute difference; dimensions must agree.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);
double max_abs_diff(const Signal& a, const Signal& b);

}  // namespace blindid
