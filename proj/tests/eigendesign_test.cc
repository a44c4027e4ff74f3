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
#include "dpdesign/eigendesign.h"

#include <cmath>
#include <random>

#include "doctest.h"
#include "dpdesign/analysis.h"
#include "dpdesign/domain.h"
#include "dpdesign/spectral.h"
#include "test_util.h"

namespace dpdesign {
namespace {

double UnitPSquared(const Matrix& w, const Strategy& a) {
  return WorkloadError(w, a, PrivacyParams::UnitP()).unitP_squared;
}

TEST_CASE("strategy kind names round-trip") {
  for (StrategyKind kind :
       {StrategyKind::kEigen, StrategyKind::kIdentity, StrategyKind::kWavelet,
        StrategyKind::kHierarchical, StrategyKind::kWorkload,
        StrategyKind::kReduced})
    CHECK(StrategyKindFromString(ToString(kind)) == kind);
  CHECK_THROWS_AS(StrategyKindFromString("nope"), ValidationError);
}

TEST_CASE("strategy construction validates the matrix") {
  CHECK_THROWS_AS(
      Strategy::FromMatrix(Matrix::Zero(2, 2), StrategyKind::kEigen),
      ValidationError);
  Matrix with_zero_row(2, 2);
  with_zero_row << 1, 0, 0, 0;
  CHECK_THROWS_AS(
      Strategy::FromMatrix(with_zero_row, StrategyKind::kEigen),
      ValidationError);
}

TEST_CASE("identity workload gets an identity-grade strategy") {
  Matrix w = Matrix::Identity(6, 6);
  Strategy a = EigenDesign(w);
  CHECK(UnitPSquared(w, a) == doctest::Approx(6.0).epsilon(1e-4));
}

TEST_CASE("designed strategy beats the lower-bound neighborhood") {
  Matrix w = StudentWorkload();
  Strategy a = EigenDesign(w);
  double err2 = UnitPSquared(w, a);
  CHECK(err2 <= 15.6);
  CHECK(err2 >= Svdb(w) - 1e-9);
}

TEST_CASE("orthogonal rotation of the workload leaves the error unchanged") {
  Matrix w = AllRangeWorkload(DomainShape({8})).matrix;
  Matrix q = RandomOrthogonal(static_cast<int>(w.rows()), 77);
  double base = UnitPSquared(w, EigenDesign(w));
  double rotated = UnitPSquared(q * w, EigenDesign(q * w));
  CHECK(rotated == doctest::Approx(base).epsilon(1e-6));
}

TEST_CASE("column-permuted workloads get equal-error strategies") {
  Workload w = AllRangeWorkload(DomainShape({8}));
  Workload p = PermuteCells(w, RandomPermutation(8, 13));
  double base = UnitPSquared(w.matrix, EigenDesign(w.matrix));
  double permuted = UnitPSquared(p.matrix, EigenDesign(p.matrix));
  CHECK(permuted == doctest::Approx(base).epsilon(1e-6));
}

TEST_CASE("column completion appends diagonal rows") {
  Matrix a_prime(2, 2);
  a_prime << 1, 0, 0, 0.5;
  Strategy completed =
      CompleteColumns(Strategy::FromMatrix(a_prime, StrategyKind::kEigen));
  REQUIRE(completed.matrix.rows() == 3);
  CHECK(completed.matrix(2, 0) == 0.0);
  CHECK(completed.matrix(2, 1) == doctest::Approx(std::sqrt(0.75)));
  CHECK(completed.matrix.colwise().norm().maxCoeff() ==
        doctest::Approx(1.0));
  CHECK(completed.matrix.colwise().norm().minCoeff() ==
        doctest::Approx(1.0));
  CHECK(completed.sensitivity == doctest::Approx(1.0));
}

TEST_CASE("column completion is a no-op for uniform columns") {
  Matrix uniform(2, 2);
  uniform << 1, 1, 1, -1;
  Strategy s = Strategy::FromMatrix(uniform, StrategyKind::kEigen);
  CHECK(CompleteColumns(s).matrix.rows() == 2);
  Strategy id = Strategy::FromMatrix(Matrix::Identity(4, 4),
                                     StrategyKind::kIdentity);
  CHECK(CompleteColumns(id).matrix.rows() == 4);
}

TEST_CASE("completion never increases the workload error") {
  for (std::uint64_t seed : {1, 2, 3, 4}) {
    Matrix w = RandomMatrix(6, 6, seed);
    SpectralDecomposition d = Eigendecompose(Gram(w));
    std::mt19937_64 rng(seed + 1000);
    std::uniform_real_distribution<double> uniform(0.2, 1.0);
    Vector weights(6);
    for (int i = 0; i < 6; ++i) weights[i] = uniform(rng);
    Matrix a_prime = weights.asDiagonal() * d.q;
    Strategy before = Strategy::FromMatrix(a_prime, StrategyKind::kEigen);
    Strategy after = CompleteColumns(before);
    CHECK(UnitPSquared(w, after) <= UnitPSquared(w, before) * (1 + 1e-9));
  }
}

TEST_CASE("designed weights beat random weightings of the eigen-queries") {
  Matrix w = AllRangeWorkload(DomainShape({8})).matrix;
  SpectralDecomposition d = Eigendecompose(Gram(w));
  double designed = UnitPSquared(w, EigenDesign(w));

  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> uniform(0.05, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    Vector weights(8);
    for (int i = 0; i < 8; ++i) weights[i] = uniform(rng);
    Matrix candidate = weights.asDiagonal() * d.q;
    Strategy s = Strategy::FromMatrix(candidate, StrategyKind::kEigen);
    CHECK(designed <= UnitPSquared(w, s) * (1 + 1e-6));
  }
}

TEST_CASE("rank-deficient workloads produce reduced-rank strategies") {
  Matrix w = StudentWorkload();
  EigenDesignResult result = EigenDesignWithCertificate(w);
  // The weighted eigen-queries span exactly rank(W); completion rows may
  // add more but never fewer.
  CHECK(result.problem.design.rows() == 4);
  CHECK(Eigendecompose(Gram(result.strategy.matrix)).Rank() >= 4);
  CHECK(result.solution.gap <= kWeightingDefaultTol);
  KktReport report = VerifyKkt(result.problem, result.solution);
  CHECK(report.pass);
}

}  // namespace
}  // namespace dpdesign
