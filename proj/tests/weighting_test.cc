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
#include "dpdesign/weighting.h"

#include <cmath>
#include <random>

#include "doctest.h"
#include "dpdesign/domain.h"
#include "dpdesign/spectral.h"
#include "test_util.h"

namespace dpdesign {
namespace {

// Eigen-queries and eigenvalues of the Gram matrix [(2,1),(1,1)]; the
// hand-solvable two-variable weighting instance used across the suite.
WeightingProblem TwoVariableInstance() {
  Matrix w(2, 2);
  w << 1, 1, 1, 0;
  SpectralDecomposition d = Eigendecompose(Gram(w));
  return WeightingProblem{d.q, d.eigenvalues};
}

double MaxConstraint(const WeightingProblem& problem, const Vector& u) {
  Matrix squared = problem.design.array().square().matrix();
  return (squared.transpose() * u).maxCoeff();
}

double Objective(const Vector& costs, const Vector& u) {
  double total = 0.0;
  for (int i = 0; i < costs.size(); ++i)
    if (costs[i] > 0) total += costs[i] / u[i];
  return total;
}

TEST_CASE("design costs recover eigenvalues for the eigen-query design") {
  Matrix w(2, 2);
  w << 1, 1, 1, 0;
  SpectralDecomposition d = Eigendecompose(Gram(w));
  Vector costs = DesignCosts(w, d.q);
  CHECK(costs[0] == doctest::Approx(d.eigenvalues[0]).epsilon(1e-8));
  CHECK(costs[1] == doctest::Approx(d.eigenvalues[1]).epsilon(1e-8));
}

TEST_CASE("design costs for identity designs") {
  Vector unit = DesignCosts(Matrix::Identity(3, 3), Matrix::Identity(3, 3));
  CHECK((unit - Vector::Ones(3)).norm() < 1e-12);

  Vector scaled =
      DesignCosts(2.0 * Matrix::Identity(3, 3), Matrix::Identity(3, 3));
  CHECK((scaled - 4.0 * Vector::Ones(3)).norm() < 1e-12);
}

TEST_CASE("design costs reject rank-deficient designs") {
  Matrix deficient(2, 2);
  deficient << 1, 0, 1, 0;
  CHECK_THROWS_AS(DesignCosts(Matrix::Identity(2, 2), deficient),
                  NumericalError);
}

TEST_CASE("identity weighting instance saturates every constraint") {
  WeightingProblem problem{Matrix::Identity(4, 4), Vector::Ones(4)};
  WeightingSolution sol = OptimizeWeights(problem);
  CHECK((sol.u - Vector::Ones(4)).norm() < 1e-4);
  CHECK(sol.objective == doctest::Approx(4.0).epsilon(1e-5));
}

TEST_CASE("two-variable instance matches the closed-form optimum") {
  WeightingProblem problem = TwoVariableInstance();
  WeightingSolution sol = OptimizeWeights(problem);
  CHECK(sol.u[0] == doctest::Approx(1.118).epsilon(1e-3));
  CHECK(sol.u[1] == doctest::Approx(0.691).epsilon(1e-3));
  CHECK(sol.objective == doctest::Approx(2.8944).epsilon(1e-4));
  REQUIRE(sol.active.size() == 1);
  CHECK(sol.active[0] == 0);
}

TEST_CASE("scaling all costs leaves the argmin unchanged") {
  WeightingProblem problem = TwoVariableInstance();
  WeightingSolution base = OptimizeWeights(problem);
  problem.costs *= 7.5;
  WeightingSolution scaled = OptimizeWeights(problem);
  CHECK((scaled.u - base.u).norm() <= 1e-4 * base.u.norm());
  CHECK(scaled.objective == doctest::Approx(7.5 * base.objective).epsilon(1e-6));
}

TEST_CASE("zero-cost rows come back with zero weight") {
  Matrix design = Matrix::Identity(3, 3);
  Vector costs(3);
  costs << 1.0, 0.0, 2.0;
  WeightingSolution sol = OptimizeWeights(WeightingProblem{design, costs});
  CHECK(sol.u[1] == 0.0);
  CHECK(sol.u[0] > 0.0);
  CHECK(sol.u[2] > 0.0);
}

TEST_CASE("all-zero costs are rejected") {
  CHECK_THROWS_AS(OptimizeWeights(WeightingProblem{Matrix::Identity(2, 2),
                                                   Vector::Zero(2)}),
                  ValidationError);
}

TEST_CASE("solutions are feasible with an active constraint") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Matrix design = RandomMatrix(6, 5, seed);
    Vector costs = RandomMatrix(6, 1, seed + 50).col(0).cwiseAbs();
    WeightingProblem problem{design, costs};
    WeightingSolution sol = OptimizeWeights(problem);
    double max_constraint = MaxConstraint(problem, sol.u);
    CHECK(max_constraint <= 1.0 + 1e-8);
    CHECK(max_constraint >= 1.0 - 1e-4);
    CHECK(sol.gap <= kWeightingDefaultTol);
  }
}

TEST_CASE("returned objective beats sampled feasible points") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uniform(0.05, 1.0);
  Matrix design = RandomMatrix(8, 6, 23);
  Vector costs = RandomMatrix(8, 1, 24).col(0).cwiseAbs() + Vector::Ones(8);
  WeightingProblem problem{design, costs};
  WeightingSolution sol = OptimizeWeights(problem);

  // Uniform feasible point.
  Vector ones = Vector::Ones(8);
  Vector uniform_point = ones / MaxConstraint(problem, ones);
  CHECK(sol.objective <= Objective(costs, uniform_point) * (1 + 1e-9));

  for (int trial = 0; trial < 10000; ++trial) {
    Vector u(8);
    for (int i = 0; i < 8; ++i) u[i] = uniform(rng);
    u /= MaxConstraint(problem, u);
    CHECK(sol.objective <= Objective(costs, u) * (1 + 1e-9));
  }
}

TEST_CASE("objective is invariant under row permutation") {
  Matrix design = RandomMatrix(6, 6, 31);
  Vector costs = RandomMatrix(6, 1, 32).col(0).cwiseAbs() + Vector::Ones(6);
  WeightingSolution base = OptimizeWeights(WeightingProblem{design, costs});

  std::vector<int> perm = RandomPermutation(6, 33);
  Matrix permuted_design(6, design.cols());
  Vector permuted_costs(6);
  for (int i = 0; i < 6; ++i) {
    permuted_design.row(i) = design.row(perm[i]);
    permuted_costs[i] = costs[perm[i]];
  }
  WeightingSolution permuted =
      OptimizeWeights(WeightingProblem{permuted_design, permuted_costs});
  CHECK(permuted.objective ==
        doctest::Approx(base.objective).epsilon(kWeightingDefaultTol));
}

TEST_CASE("kkt certificate passes on the identity instance") {
  WeightingProblem problem{Matrix::Identity(4, 4), Vector::Ones(4)};
  WeightingSolution sol = OptimizeWeights(problem);
  KktReport report = VerifyKkt(problem, sol);
  CHECK(report.pass);
  CHECK(report.feasible);
  CHECK(report.stationary);
  CHECK(report.complementary);
  // Stationarity at u = 1 forces mu_j = c_j.
  CHECK((report.multipliers - Vector::Ones(4)).norm() < 1e-3);
}

TEST_CASE("kkt certificate passes on the two-variable instance") {
  WeightingProblem problem = TwoVariableInstance();
  WeightingSolution sol = OptimizeWeights(problem);
  KktReport report = VerifyKkt(problem, sol);
  CHECK(report.pass);
  CHECK(report.duality_gap <= 1e-5);
  // Only the first column constraint carries weight.
  CHECK(report.multipliers[0] > 0.1);
  CHECK(report.multipliers[1] <= 1e-3);
}

TEST_CASE("kkt certificate rejects a perturbed point") {
  WeightingProblem problem = TwoVariableInstance();
  WeightingSolution sol = OptimizeWeights(problem);
  sol.u[1] *= 1.2;
  // Keep the point feasible so only stationarity can fail.
  Matrix squared = problem.design.array().square().matrix();
  sol.u /= (squared.transpose() * sol.u).maxCoeff();
  sol.objective = Objective(problem.costs, sol.u);
  KktReport report = VerifyKkt(problem, sol);
  CHECK(!report.pass);
}

}  // namespace
}  // namespace dpdesign
