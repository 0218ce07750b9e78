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
#include <cstdint>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "core/random.hpp"
#include "core/types.hpp"

namespace blindid {

class NullspaceCertificate;

// Q = [u 0; 0 -u] [0 v'; v' 0], the bordered-product family.
struct N0Certificate {
  Signal u;  // length m - 1
  Signal v;  // length n - 1
};

// Y = [u1 0; 0 u2] [0 v1'; v2' 0] with u1 v1' + u2 v2' a nonzero kernel
// element one dimension down; `inner` certifies that residual.
struct N2Certificate {
  Signal u1;
  Signal u2;
  Signal v1;
  Signal v2;
  std::shared_ptr<const NullspaceCertificate> inner;
};

// Bordered skew-symmetric exception element of the square kernel.
struct M2Certificate {
  Signal u;  // length n - 2, nonzero
  double lambda;
};

struct RawCertificate {};

enum class CertificateKind { kN0, kN2, kM2, kRaw };

std::string_view kind_name(CertificateKind kind) noexcept;

class NullspaceCertificate {
 public:
  using Variant = std::variant<N0Certificate, N2Certificate, M2Certificate, RawCertificate>;

  NullspaceCertificate(N0Certificate c) : value_(std::move(c)) {}
  NullspaceCertificate(N2Certificate c);
  NullspaceCertificate(M2Certificate c) : value_(std::move(c)) {}
  NullspaceCertificate(RawCertificate c) : value_(c) {}

  CertificateKind kind() const noexcept;
  const Variant& value() const noexcept { return value_; }

  template <class T>
  const T& as() const {
    return std::get<T>(value_);
  }

  // Number of nested N2 levels above the terminal certificate.
  std::size_t depth() const noexcept;

  // The matrix this certificate describes. Raw certificates carry no
  // parameters and cannot be reconstructed.
  DenseMatrix reconstruct() const;

  // Certificate of the transposed matrix.
  NullspaceCertificate transposed() const;

 private:
  Variant value_;
};

struct GeneratedElement {
  DenseMatrix matrix;
  NullspaceCertificate certificate;
};

struct ClassifiedElement {
  DenseMatrix matrix;
  NullspaceCertificate certificate;
  double refactorization_residual;
};

// Q(k,l) = u(k) v(l-1) - u(k-1) v(l), out-of-range entries read as zero.
DenseMatrix n0_element(const Signal& u, const Signal& v);

// Top-right embedding of u1 v1' plus bottom-left embedding of u2 v2'.
// Requires the inner sum to lie in the lower-dimensional kernel.
DenseMatrix n2_lift(const Signal& u1, const Signal& u2, const Signal& v1, const Signal& v2,
                    const ToleranceProfile& tol = {});

// Random N0 element with nonzero u and v.
GeneratedElement sample_n0(std::size_t m, std::size_t n, Rng& rng);

// Seeded N2 chain: start from an N0 element of size (2, n-m+2) and lift
// m-2 times through random well-conditioned 2x2 mixings. m > n is handled
// by generating the transpose.
GeneratedElement n2_generate(std::size_t m, std::size_t n, Rng& rng);
GeneratedElement n2_generate(std::size_t m, std::size_t n, std::uint64_t seed);

DenseMatrix m2_element(const Signal& u, double lambda);

// Basis of the full linear kernel of the lifted operator, by elimination on
// the (m+n-1) x (mn) coefficient matrix. Empty when m == 1 or n == 1.
std::vector<DenseMatrix> kernel_basis(std::size_t m, std::size_t n);

bool is_in_rank2_nullspace(const DenseMatrix& w, const ToleranceProfile& tol = {});

// Constructive converse factorization: returns N0 or N2 when a corner entry
// W(m,1) or W(1,n) is nonzero, Raw when both vanish.
ClassifiedElement classify(const DenseMatrix& w, const ToleranceProfile& tol = {});

}  // namespace blindid
