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
#include "dpdesign/analysis.h"

#include <cmath>

#include "doctest.h"
#include "dpdesign/baselines.h"
#include "dpdesign/domain.h"
#include "test_util.h"

namespace dpdesign {
namespace {

const PrivacyParams kUnit = PrivacyParams::UnitP();

TEST_CASE("identity on identity reaches the obvious error") {
  Matrix w = Matrix::Identity(5, 5);
  ErrorReport r = WorkloadError(w, IdentityStrategy(5), kUnit);
  CHECK(r.workload_error == doctest::Approx(std::sqrt(5.0)));
  CHECK(r.unitP_squared == doctest::Approx(5.0));
  CHECK(r.Rms() == doctest::Approx(1.0));
}

TEST_CASE("fixed strategies on the student workload") {
  Matrix w = StudentWorkload();
  CHECK(WorkloadError(w, IdentityStrategy(8), kUnit).unitP_squared ==
        doctest::Approx(36.0).epsilon(1e-9));
  CHECK(WorkloadError(w, WaveletStrategy(DomainShape({8})), kUnit)
            .unitP_squared == doctest::Approx(21.0).epsilon(1e-9));
  // The workload measured directly, answered through the pseudo-inverse:
  // sensitivity^2 = 5 and trace = rank = 4.
  Strategy self = Strategy::FromMatrix(w, StrategyKind::kWorkload);
  CHECK(WorkloadError(w, self, kUnit).unitP_squared ==
        doctest::Approx(20.0).epsilon(1e-9));
}

TEST_CASE("singular value bound") {
  CHECK(Svdb(Matrix::Identity(6, 6)) == doctest::Approx(6.0));
  Matrix w2(2, 2);
  w2 << 1, 1, 1, 0;
  CHECK(Svdb(w2) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(Svdb(StudentWorkload()) == doctest::Approx(14.933).epsilon(1e-3));
  CHECK(LowerBound(StudentWorkload(), kUnit) ==
        doctest::Approx(std::sqrt(Svdb(StudentWorkload()))));
}

TEST_CASE("quartic approximation cap") {
  CHECK(Thm3Cap(Matrix::Identity(7, 7)) == doctest::Approx(1.0));
  Matrix w2(2, 2);
  w2 << 1, 1, 1, 0;
  double sigma1 = (3 + std::sqrt(5.0)) / 2;
  CHECK(Thm3Cap(w2) == doctest::Approx(std::pow(2 * sigma1 / 2.5, 0.25)));
  CHECK_THROWS_AS(Thm3Cap(Matrix::Zero(2, 2)), ValidationError);
}

TEST_CASE("every strategy's error dominates the lower bound") {
  Matrix w = AllRangeWorkload(DomainShape({16})).matrix;
  double bound = LowerBound(w, kUnit);
  std::vector<Strategy> strategies = {
      IdentityStrategy(16), WaveletStrategy(DomainShape({16})),
      HierarchyStrategy(DomainShape({16})), EigenDesign(w),
      Strategy::FromMatrix(RandomMatrix(16, 16, 3), StrategyKind::kEigen)};
  for (const Strategy& a : strategies) {
    ErrorReport r = WorkloadError(w, a, kUnit);
    CHECK(r.workload_error >= bound * (1 - 1e-9));
    CHECK(r.ratio_to_bound >= 1 - 1e-8);
  }
}

TEST_CASE("error is invariant under orthogonal workload rotation") {
  Matrix w = AllRangeWorkload(DomainShape({8})).matrix;
  Strategy a = WaveletStrategy(DomainShape({8}));
  Matrix q = RandomOrthogonal(static_cast<int>(w.rows()), 55);
  double base = WorkloadError(w, a, kUnit).workload_error;
  double rotated = WorkloadError(q * w, a, kUnit).workload_error;
  CHECK(rotated == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("per-query errors decompose the workload error") {
  PrivacyParams pp(0.7, 1e-4);
  Matrix w = StudentWorkload();
  Strategy a = EigenDesign(w);
  ErrorReport r = WorkloadError(w, a, pp);
  CHECK(r.per_query.squaredNorm() ==
        doctest::Approx(pp.P() * r.unitP_squared).epsilon(1e-9));
  CHECK(r.workload_error ==
        doctest::Approx(std::sqrt(pp.P() * r.unitP_squared)).epsilon(1e-12));
}

TEST_CASE("monte-carlo error vanishes in the noise-free limit") {
  Matrix w = StudentWorkload();
  Strategy a = IdentityStrategy(8);
  Vector x = Vector::Ones(8);
  EmpiricalError e =
      MeasureEmpiricalError(w, a, x, PrivacyParams(1e9, 1e-5), 10, 3);
  CHECK(e.workload_rmse < 1e-5);
  CHECK(e.mean_relative < 1e-6);
}

TEST_CASE("monte-carlo error matches the closed form") {
  Matrix w = Matrix::Identity(8, 8);
  Strategy a = IdentityStrategy(8);
  Vector x = RandomMatrix(8, 1, 40).col(0).cwiseAbs() * 10;
  PrivacyParams pp(1.0, 1e-4);
  EmpiricalError e = MeasureEmpiricalError(w, a, x, pp, 10000, 11);
  double analytic = WorkloadError(w, a, pp).workload_error;
  CHECK(e.workload_rmse == doctest::Approx(analytic).epsilon(0.03));
}

TEST_CASE("relative error falls back to the sanity floor at zero truth") {
  Matrix w(1, 2);
  w << 1, -1;  // truth is 0 for a symmetric data vector
  Strategy a = IdentityStrategy(2);
  Vector x = Vector::Ones(2);
  PrivacyParams pp(1.0, 1e-4);
  EmpiricalError e = MeasureEmpiricalError(w, a, x, pp, 500, 3, 2.0);
  CHECK(std::isfinite(e.mean_relative));
  CHECK(e.mean_relative > 0.0);
  EmpiricalError tighter = MeasureEmpiricalError(w, a, x, pp, 500, 3, 4.0);
  // Doubling the floor halves the reported relative error.
  CHECK(tighter.mean_relative ==
        doctest::Approx(e.mean_relative / 2).epsilon(1e-9));
}

TEST_CASE("row normalization helps relative error on skewed counts") {
  const int n = 32;
  Workload w = AllRangeWorkload(DomainShape({n}));
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = std::floor(1000.0 / (i + 1));
  Workload normalized = NormalizeRows(w);
  Strategy plain = EigenDesign(w.matrix);
  Strategy scaled = EigenDesign(normalized.matrix);
  PrivacyParams pp(0.5, 1e-4);
  double rel_plain =
      MeasureEmpiricalError(w.matrix, plain, x, pp, 300, 8).mean_relative;
  double rel_scaled =
      MeasureEmpiricalError(w.matrix, scaled, x, pp, 300, 8).mean_relative;
  CHECK(rel_scaled <= rel_plain);
}

}  // namespace
}  // namespace dpdesign
