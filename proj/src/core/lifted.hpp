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
#include <vector>

#include "core/types.hpp"

namespace blindid {

// Linear convolution z(l) = sum_j x(j) y(l - j); output length m + n - 1.
Signal convolve(const Signal& x, const Signal& y);

// The lifted convolution operator on m x n matrices. It maps
// outer(x, y) to convolve(x, y) and acts by summing anti-diagonals.
class LiftedConvOp {
 public:
  LiftedConvOp(std::size_t m, std::size_t n);

  std::size_t rows() const noexcept { return m_; }
  std::size_t cols() const noexcept { return n_; }
  std::size_t output_length() const noexcept { return m_ + n_ - 1; }
  std::size_t kernel_dimension() const noexcept { return m_ * n_ - output_length(); }

  // Applied by index arithmetic; never through the Hankel basis.
  Signal apply(const DenseMatrix& w) const;

  // S_j (0-based j): ones exactly where k + l == j.
  DenseMatrix basis_element(std::size_t j) const;
  std::vector<DenseMatrix> hankel_basis() const;

 private:
  std::size_t m_;
  std::size_t n_;
};

Signal lift_apply(const DenseMatrix& w);
std::vector<DenseMatrix> hankel_basis(std::size_t m, std::size_t n);

// Trace inner product <A, B> = sum_{k,l} A(k,l) B(k,l).
double trace_inner(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix outer(const Signal& x, const Signal& y);

struct ShiftedPair {
  DenseMatrix top_right;    // [0 W'; 0 0]
  DenseMatrix bottom_left;  // [0 0; W' 0]
};

// Embeds an (m-1) x (n-1) matrix one step apart along the anti-diagonals.
// Both embeddings have identical lifted images (0, S'(W'), 0).
ShiftedPair antidiagonal_shift(const DenseMatrix& inner);

// Top-right / bottom-left embeddings of a block into an (r+1) x (c+1) frame.
DenseMatrix embed_top_right(const DenseMatrix& block);
DenseMatrix embed_bottom_left(const DenseMatrix& block);

// Number of pivots of a column-pivoted Householder QR whose magnitude exceeds
// tol.threshold(max_abs(W)).
std::size_t rank_estimate(const DenseMatrix& w, const ToleranceProfile& tol = {});

}  // namespace blindid
