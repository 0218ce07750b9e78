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

// One (w*, gamma) pair with w(j) = w*(j) cos(gamma) - w*(j-1) sin(gamma),
// w* read as zero outside its range. gamma lies in [0, 2pi).
struct QuotientElement {
  Signal w_star;  // length d - 1
  double gamma;
  double residual;  // max-abs reconstruction error against the decomposed w
};

// All quotient elements of w (length d >= 2, both endpoints nonzero).
// Every returned element reconstructs w within tol.threshold(max|w|); the
// list holds at most 2d - 2 entries and may be empty for odd d.
std::vector<QuotientElement> quotient_decompose(const Signal& w, const ToleranceProfile& tol = {});

Signal reconstruct(const Signal& w_star, double gamma);
// Checks that w_star has length d - 1.
Signal reconstruct(const Signal& w_star, double gamma, std::size_t d);

namespace detail {

// Ascending coefficients of t * s1(t) - 1, where s1 is the first entry of
// w*/w*(d-1) expressed through the backward recursion in t = 1/s1. Degree
// d - 1, constant term -1. Requires d >= 3.
std::vector<double> consistency_polynomial(const Signal& w);

// Real roots of the polynomial with ascending coefficients `coeffs`, sorted
// ascending and deduplicated. Throws kNumerical if the eigen solve fails.
std::vector<double> real_roots(const std::vector<double>& coeffs);

}  // namespace detail

}  // namespace blindid
