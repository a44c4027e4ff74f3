// Copyright 2026 The dpdesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "dpdesign/baselines.h"

#include <cmath>

#include "doctest.h"
#include "dpdesign/analysis.h"
#include "dpdesign/domain.h"
#include "test_util.h"

namespace dpdesign {
namespace {

TEST_CASE("identity strategy") {
  CHECK(SameMatrix(IdentityStrategy(1).matrix, Matrix::Identity(1, 1)));
  CHECK(SameMatrix(IdentityStrategy(3).matrix, Matrix::Identity(3, 3)));
  CHECK(IdentityStrategy(3).sensitivity == 1.0);
  CHECK_THROWS_AS(IdentityStrategy(0), ValidationError);
}

TEST_CASE("two-point wavelet strategy") {
  Matrix expected(2, 2);
  expected << 1, 1, 1, -1;
  CHECK(SameMatrix(WaveletStrategy(DomainShape({2})).matrix, expected));
}

TEST_CASE("eight-point wavelet strategy") {
  Strategy w = WaveletStrategy(DomainShape({8}));
  Matrix expected(8, 8);
  expected << 1, 1, 1, 1, 1, 1, 1, 1,
              1, 1, 1, 1, -1, -1, -1, -1,
              1, 1, -1, -1, 0, 0, 0, 0,
              0, 0, 0, 0, 1, 1, -1, -1,
              1, -1, 0, 0, 0, 0, 0, 0,
              0, 0, 1, -1, 0, 0, 0, 0,
              0, 0, 0, 0, 1, -1, 0, 0,
              0, 0, 0, 0, 0, 0, 1, -1;
  CHECK(SameMatrix(w.matrix, expected));
  CHECK(w.sensitivity == doctest::Approx(2.0));
}

TEST_CASE("wavelet matrices are square orthogonal-row bases") {
  for (int n : {2, 4, 8, 16, 32}) {
    Matrix h = WaveletStrategy(DomainShape({n})).matrix;
    CHECK(h.rows() == n);
    Matrix products = h * h.transpose();
    CHECK((products - products.diagonal().asDiagonal().toDenseMatrix())
              .norm() < 1e-12);
    CHECK(products.diagonal().minCoeff() > 0.0);
  }
}

TEST_CASE("wavelet refuses non-power-of-two shapes") {
  CHECK_THROWS_AS(WaveletStrategy(DomainShape({6})), ValidationError);
  CHECK_THROWS_AS(WaveletStrategy(DomainShape({2, 3})), ValidationError);
}

TEST_CASE("two-cell hierarchy is root plus leaves") {
  Matrix expected(3, 2);
  expected << 1, 1, 1, 0, 0, 1;
  CHECK(SameMatrix(HierarchyStrategy(DomainShape({2})).matrix, expected));
}

TEST_CASE("four-cell hierarchy has seven nodes and depth-based sensitivity") {
  Strategy h = HierarchyStrategy(DomainShape({4}));
  CHECK(h.matrix.rows() == 7);
  CHECK(h.sensitivity == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("hierarchy covers every cell once per level") {
  for (int n : {4, 8, 16}) {
    Matrix h = HierarchyStrategy(DomainShape({n})).matrix;
    int depth = 0;
    while ((1 << depth) < n) ++depth;
    Vector coverage = h.colwise().sum().transpose();
    for (int j = 0; j < n; ++j)
      CHECK(coverage[j] == doctest::Approx(depth + 1));
  }
}

TEST_CASE("hierarchy handles non-power-of-two shapes") {
  Strategy h = HierarchyStrategy(DomainShape({5}));
  // 5 leaves, 4 internal splits.
  CHECK(h.matrix.rows() == 9);
  CHECK(h.matrix.row(0).sum() == doctest::Approx(5.0));
}

TEST_CASE("multi-dimensional strategies compose by tensor product") {
  Strategy w = WaveletStrategy(DomainShape({2, 2}));
  CHECK(w.matrix.rows() == 4);
  CHECK(w.matrix.cols() == 4);
  // (total x total) row is all ones.
  CHECK(w.matrix.row(0).sum() == doctest::Approx(4.0));

  Strategy h = HierarchyStrategy(DomainShape({2, 2}));
  CHECK(h.matrix.rows() == 9);
}

TEST_CASE("direct-noise baseline error") {
  PrivacyParams unit = PrivacyParams::UnitP();
  CHECK(GaussianBaselineError(StudentWorkload(), unit) ==
        doctest::Approx(std::sqrt(40.0)).epsilon(1e-9));
  CHECK(GaussianBaselineError(Matrix::Identity(9, 9), unit) ==
        doctest::Approx(3.0));
  // A single all-ones row has per-record sensitivity 1: one query, noise
  // scale 1.
  CHECK(GaussianBaselineError(Matrix::Ones(1, 9), unit) ==
        doctest::Approx(1.0));
}

TEST_CASE("designed strategy dominates fixed baselines on interval queries") {
  PrivacyParams unit = PrivacyParams::UnitP();
  for (int n : {8, 16, 32, 64}) {
    Matrix w = AllRangeWorkload(DomainShape({n})).matrix;
    double eigen = WorkloadError(w, EigenDesign(w), unit).workload_error;
    double wavelet =
        WorkloadError(w, WaveletStrategy(DomainShape({n})), unit)
            .workload_error;
    double hierarchy =
        WorkloadError(w, HierarchyStrategy(DomainShape({n})), unit)
            .workload_error;
    CHECK(eigen <= wavelet);
    CHECK(eigen <= hierarchy);
  }
}

}  // namespace
}  // namespace dpdesign
