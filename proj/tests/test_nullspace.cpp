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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "core/error.hpp"
#include "core/lifted.hpp"
#include "core/random.hpp"
#include "nullspace/nullspace.hpp"
#include "oracles.hpp"

using namespace blindid;

namespace {

// Entries on a 1/64 grid keep every product and partial sum exact.
Signal dyadic_signal(std::size_t len, Rng& rng) {
  std::vector<double> v(len);
  for (double& e : v) e = static_cast<double>(static_cast<int>(rng.uniform_index(0, 128)) - 64) / 64.0;
  return Signal(std::move(v));
}

double lift_defect(const DenseMatrix& q) { return oracle::max_abs(oracle::antidiagonal_sums(q)); }

}  // namespace

TEST_CASE("smallest N0 element") {
  const DenseMatrix q = n0_element(Signal{1}, Signal{1});
  CHECK(q == DenseMatrix{{0, 1}, {-1, 0}});
  CHECK(oracle::antidiagonal_sums(q) == std::vector<double>{0, 0, 0});
}

TEST_CASE("N0 with a zero factor is the zero matrix") {
  CHECK(n0_element(Signal{0, 0, 0}, Signal{1, 2}).is_zero());
  CHECK(n0_element(Signal{1, 2}, Signal{0, 0, 0, 0}).is_zero());
}

TEST_CASE("N0 elements are exact kernel elements of rank at most two") {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 2 + rng.uniform_index(0, 9), n = 2 + rng.uniform_index(0, 9);
    const DenseMatrix q = n0_element(dyadic_signal(m - 1, rng), dyadic_signal(n - 1, rng));
    CHECK(lift_defect(q) == 0.0);
    CHECK(rank_estimate(q) <= 2);
  }
  for (int t = 0; t < 200; ++t) {
    const DenseMatrix q = n0_element(uniform_signal(4, rng), uniform_signal(6, rng));
    CHECK(lift_defect(q) <= 1e-15);
    CHECK(rank_estimate(q) <= 2);
    CHECK(is_in_rank2_nullspace(q));
  }
}

TEST_CASE("N0 parameterization has m + n - 3 degrees of freedom") {
  Rng rng(4);
  for (std::size_t m = 2; m <= 8; ++m) {
    for (std::size_t n = 2; n <= 8; ++n) {
      const Signal u = endpoint_safe_signal(m - 1, rng), v = endpoint_safe_signal(n - 1, rng);
      // Bilinear map: the Jacobian columns are N0(e_i, v) and N0(u, e_j).
      std::vector<double> jac;
      std::size_t cols = 0;
      for (std::size_t i = 0; i + 1 < m; ++i, ++cols) {
        std::vector<double> e(m - 1, 0.0);
        e[i] = 1.0;
        const DenseMatrix d = n0_element(Signal(e), v);
        jac.insert(jac.end(), d.data().begin(), d.data().end());
      }
      for (std::size_t j = 0; j + 1 < n; ++j, ++cols) {
        std::vector<double> e(n - 1, 0.0);
        e[j] = 1.0;
        const DenseMatrix d = n0_element(u, Signal(e));
        jac.insert(jac.end(), d.data().begin(), d.data().end());
      }
      CHECK(rank_estimate(DenseMatrix(cols, m * n, jac)) == m + n - 3);
    }
  }
}

TEST_CASE("N2 lift with the degenerate mixing reproduces N0") {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const std::size_t m = 3 + rng.uniform_index(0, 6), n = 3 + rng.uniform_index(0, 6);
    const Signal u = uniform_signal(m - 1, rng), v = uniform_signal(n - 1, rng);
    CHECK(max_abs_diff(n2_lift(u, u.negated(), v, v), n0_element(u, v)) == 0.0);
  }
}

TEST_CASE("hand-expanded 3x4 N2 lift") {
  const Signal u1{1, 0}, u2{0, -1}, v1{0, 1, 1}, v2{1, 1, 0};
  const DenseMatrix y = n2_lift(u1, u2, v1, v2);
  CHECK(y == DenseMatrix{{0, 0, 1, 1}, {0, 0, 0, 0}, {-1, -1, 0, 0}});
  CHECK(lift_defect(y) == 0.0);
  CHECK(rank_estimate(y) == 2);
  // Not of the N0 form: the structural classifier needs a nonzero inner residual.
  const ClassifiedElement c = classify(y);
  CHECK(c.certificate.kind() == CertificateKind::kN2);
  CHECK(c.refactorization_residual <= 1e-12);
}

TEST_CASE("N2 lift rejects an inner matrix outside the kernel") {
  CHECK_THROWS_AS(n2_lift(Signal{1, 0}, Signal{0, 1}, Signal{1, 0, 0}, Signal{1, 0, 0}), Error);
  try {
    n2_lift(Signal{1, 0}, Signal{0, 1}, Signal{1, 0, 0}, Signal{1, 0, 0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPrecondition);
  }
  CHECK_THROWS_AS(n2_lift(Signal{1, 0}, Signal{0, 1, 2}, Signal{1, 0}, Signal{1, 0}), Error);
  CHECK_THROWS_AS(n2_lift(Signal{1}, Signal{1}, Signal{1, 0}, Signal{1, 0}), Error);
}

TEST_CASE("random mixings of N0 elements lift into the kernel") {
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const std::size_t r = 2 + rng.uniform_index(0, 6), c = 2 + rng.uniform_index(0, 6);
    const Signal u = uniform_signal(r - 1, rng), v = uniform_signal(c - 1, rng);
    // (u;0)(0,v)' + (0;-u)(v,0)' mixed by an invertible A.
    std::vector<double> a(r, 0.0), b(r, 0.0), p(c, 0.0), q(c, 0.0);
    for (std::size_t i = 0; i + 1 < r; ++i) {
      a[i] = u[i];
      b[i + 1] = -u[i];
    }
    for (std::size_t j = 0; j + 1 < c; ++j) {
      p[j + 1] = v[j];
      q[j] = v[j];
    }
    const double a00 = 2, a01 = 1, a10 = 1, a11 = 1;  // det 1
    std::vector<double> u1(r), u2(r), v1(c), v2(c);
    for (std::size_t i = 0; i < r; ++i) {
      u1[i] = a00 * a[i] + a10 * b[i];
      u2[i] = a01 * a[i] + a11 * b[i];
    }
    for (std::size_t j = 0; j < c; ++j) {
      v1[j] = a11 * p[j] - a01 * q[j];
      v2[j] = -a10 * p[j] + a00 * q[j];
    }
    const DenseMatrix y = n2_lift(Signal(u1), Signal(u2), Signal(v1), Signal(v2));
    CHECK(lift_defect(y) <= 1e-14);
    CHECK(rank_estimate(y) <= 2);
  }
}

TEST_CASE("n2_generate chains") {
  SUBCASE("m = 2 yields a plain N0 element") {
    const GeneratedElement g = n2_generate(2, 6, 17);
    CHECK(g.certificate.kind() == CertificateKind::kN0);
    CHECK(lift_defect(g.matrix) <= 1e-15);
  }
  SUBCASE("3x3 has a nonzero corner and lies in the kernel") {
    const GeneratedElement g = n2_generate(3, 3, 42);
    CHECK(g.certificate.kind() == CertificateKind::kN2);
    CHECK((g.matrix(2, 0) != 0.0 || g.matrix(0, 2) != 0.0));
    CHECK(lift_defect(g.matrix) <= 1e-12);
    CHECK(rank_estimate(g.matrix) <= 2);
  }
  SUBCASE("full depth, nested inner certificates in the smaller kernels") {
    Rng rng(10);
    for (std::size_t m = 2; m <= 9; ++m) {
      for (std::size_t n = 2; n <= 9; ++n) {
        const GeneratedElement g = n2_generate(m, n, rng);
        CHECK(g.matrix.rows() == m);
        CHECK(g.matrix.cols() == n);
        CHECK(g.certificate.depth() == std::min(m, n) - 2);
        CHECK(lift_defect(g.matrix) <= 1e-10 * g.matrix.max_abs());
        CHECK(rank_estimate(g.matrix) <= 2);
        CHECK(max_abs_diff(g.certificate.reconstruct(), g.matrix) == 0.0);
        const NullspaceCertificate* c = &g.certificate;
        while (c->kind() == CertificateKind::kN2) {
          const auto& n2 = c->as<N2Certificate>();
          const DenseMatrix inner = outer(n2.u1, n2.v1) + outer(n2.u2, n2.v2);
          CHECK(!inner.is_zero());
          CHECK(lift_defect(inner) <= 1e-10 * inner.max_abs());
          CHECK(rank_estimate(inner) <= 2);
          CHECK(max_abs_diff(n2.inner->reconstruct(), inner) <= 1e-12 * inner.max_abs());
          c = n2.inner.get();
        }
        CHECK(c->kind() == CertificateKind::kN0);
      }
    }
  }
  SUBCASE("seeded output is deterministic") {
    CHECK(n2_generate(5, 7, 99).matrix == n2_generate(5, 7, 99).matrix);
    CHECK(!(n2_generate(5, 7, 99).matrix == n2_generate(5, 7, 100).matrix));
  }
  CHECK_THROWS_AS(n2_generate(1, 4, 0), Error);
}

TEST_CASE("certificate transposition matches the transposed matrix") {
  Rng rng(12);
  for (int t = 0; t < 60; ++t) {
    const std::size_t m = 2 + rng.uniform_index(0, 6), n = 2 + rng.uniform_index(0, 6);
    const GeneratedElement g = n2_generate(m, n, rng);
    CHECK(max_abs_diff(g.certificate.transposed().reconstruct(), g.matrix.transposed()) == 0.0);
  }
  const M2Certificate m2{Signal{1, 2}, 3.0};
  CHECK(NullspaceCertificate(m2).transposed().reconstruct() == m2_element(m2.u, m2.lambda).transposed());
  CHECK(NullspaceCertificate(RawCertificate{}).transposed().kind() == CertificateKind::kRaw);
  CHECK_THROWS_AS(NullspaceCertificate(RawCertificate{}).reconstruct(), Error);
}

TEST_CASE("M2 elements") {
  const DenseMatrix m3 = m2_element(Signal{1}, 1.0);
  CHECK(m3 == DenseMatrix{{0, -1, 0}, {1, 0, 1}, {0, -1, 0}});
  CHECK(oracle::antidiagonal_sums(m3) == std::vector<double>(5, 0.0));
  CHECK(oracle::integer_rank(m3) == 2);
  CHECK(rank_estimate(m3) == 2);

  const DenseMatrix m5 = m2_element(Signal{1, 2, 3}, 2.0);
  CHECK(lift_defect(m5) == 0.0);
  CHECK(rank_estimate(m5) == 2);
  CHECK(oracle::integer_rank(m5) == 2);
  CHECK(classify(m5).certificate.kind() == CertificateKind::kRaw);

  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 3 + rng.uniform_index(0, 7);
    const DenseMatrix m = m2_element(uniform_signal(n - 2, rng), rng.uniform(0.5, 2.0));
    CHECK(m.transposed() == -1.0 * m);
    CHECK(m(n - 1, 0) == 0.0);
    CHECK(m(0, n - 1) == 0.0);
    CHECK(rank_estimate(m) == 2);
    CHECK(is_in_rank2_nullspace(m));
    CHECK(classify(m).certificate.kind() == CertificateKind::kRaw);
  }
  CHECK_THROWS_AS(m2_element(Signal{0, 0}, 1.0), Error);
  CHECK_THROWS_AS(m2_element(Signal{1, 0}, 0.0), Error);
}

TEST_CASE("kernel basis sizes and structure") {
  CHECK(kernel_basis(1, 7).empty());
  CHECK(kernel_basis(6, 1).empty());
  CHECK(kernel_basis(3, 4).size() == 6);

  const auto b25 = kernel_basis(2, 5);
  REQUIRE(b25.size() == 4);
  for (const auto& q : b25) {
    CHECK(std::abs(q(0, 0)) <= 1e-12);
    CHECK(std::abs(q(1, 4)) <= 1e-12);
    for (std::size_t l = 1; l < 5; ++l) CHECK(std::abs(q(0, l) + q(1, l - 1)) <= 1e-12);
  }

  for (std::size_t m = 2; m <= 7; ++m) {
    for (std::size_t n = 2; n <= 7; ++n) {
      const auto basis = kernel_basis(m, n);
      CHECK(basis.size() == m * n - (m + n - 1));
      std::vector<double> stacked;
      for (const auto& q : basis) {
        CHECK(lift_defect(q) <= 1e-12);
        stacked.insert(stacked.end(), q.data().begin(), q.data().end());
      }
      CHECK(rank_estimate(DenseMatrix(basis.size(), m * n, stacked)) == basis.size());
    }
  }
}

TEST_CASE("rank-two null space membership") {
  Rng rng(14);
  CHECK(is_in_rank2_nullspace(n0_element(uniform_signal(3, rng), uniform_signal(5, rng))));
  CHECK(!is_in_rank2_nullspace(outer(endpoint_safe_signal(4, rng), endpoint_safe_signal(3, rng))));
  CHECK(is_in_rank2_nullspace(m2_element(Signal{1, -2}, 0.5)));
  // Kernel element of rank three.
  const auto basis = kernel_basis(4, 4);
  DenseMatrix sum(4, 4);
  for (const auto& q : basis) sum += q;
  CHECK(rank_estimate(sum) > 2);
  CHECK(!is_in_rank2_nullspace(sum));
}

TEST_CASE("classify round-trips N0 and N2 samples") {
  Rng rng(15);
  int checked = 0;
  for (int t = 0; t < 400; ++t) {
    const std::size_t m = 2 + rng.uniform_index(0, 8), n = 2 + rng.uniform_index(0, 8);
    const GeneratedElement g = t % 2 ? sample_n0(m, n, rng) : n2_generate(m, n, rng);
    const double scale = g.matrix.max_abs();
    if (std::abs(g.matrix(m - 1, 0)) <= 1e-6 * scale && std::abs(g.matrix(0, n - 1)) <= 1e-6 * scale) continue;
    const ClassifiedElement c = classify(g.matrix);
    CHECK(c.certificate.kind() == g.certificate.kind());
    CHECK(c.refactorization_residual <= 1e-9 * scale);
    CHECK(max_abs_diff(c.certificate.reconstruct(), g.matrix) == c.refactorization_residual);
    if (c.certificate.kind() == CertificateKind::kN2) {
      const auto& n2 = c.certificate.as<N2Certificate>();
      const DenseMatrix inner = outer(n2.u1, n2.v1) + outer(n2.u2, n2.v2);
      CHECK(lift_defect(inner) <= 1e-9 * scale);
      CHECK(rank_estimate(inner) <= 2);
    }
    ++checked;
  }
  CHECK(checked > 300);
}

TEST_CASE("classify uses the transposed corner") {
  // W(m,1) = 0 but W(1,n) != 0.
  const DenseMatrix q = n0_element(Signal{1, 2, 0}, Signal{3, 1, 2});
  REQUIRE(q(3, 0) == 0.0);
  REQUIRE(q(0, 3) != 0.0);
  const ClassifiedElement c = classify(q);
  CHECK(c.certificate.kind() == CertificateKind::kN0);
  CHECK(c.refactorization_residual <= 1e-12);
}

TEST_CASE("classify preconditions") {
  CHECK_THROWS_AS(classify(DenseMatrix(3, 3)), Error);
  CHECK_THROWS_AS(classify(outer(Signal{1, 2}, Signal{1, 1})), Error);
  try {
    classify(DenseMatrix{{1, 0}, {0, 0}});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPrecondition);
  }
}
