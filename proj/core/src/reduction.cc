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
#include "dpdesign/reduction.h"

#include <cmath>

#include "dpdesign/spectral.h"

namespace dpdesign {
namespace {

Strategy AssembleFromWeights(const Matrix& eigen_queries,
                             const Vector& squared_weights) {
  Vector weights = squared_weights.cwiseMax(kWeightFloor).cwiseSqrt();
  Matrix a_prime = weights.asDiagonal() * eigen_queries;
  return CompleteColumns(
      Strategy::FromMatrix(std::move(a_prime), StrategyKind::kReduced));
}

}  // namespace

Strategy EigenSeparation(const Matrix& w, int group_size, double tol) {
  if (group_size < 1) throw ValidationError("group size must be >= 1");
  SpectralDecomposition decomp = Eigendecompose(Gram(w));
  const int rank = decomp.Rank();
  if (rank == 0) throw ValidationError("workload has rank zero");
  Matrix q = decomp.q.topRows(rank);
  Vector sigma = decomp.eigenvalues.head(rank);

  const int num_groups = (rank + group_size - 1) / group_size;
  std::vector<Vector> group_weights(num_groups);
  Matrix combined_rows(num_groups, w.cols());  // aggregated squared rows
  Vector group_costs(num_groups);
  for (int g = 0; g < num_groups; ++g) {
    int lo = g * group_size;
    int len = std::min(group_size, rank - lo);
    Matrix squared = q.middleRows(lo, len).array().square().matrix();
    WeightingSolution sol =
        SolveWeighting(squared, sigma.segment(lo, len), tol);
    group_weights[g] = sol.u;
    group_costs[g] = sol.objective;
    combined_rows.row(g) = sol.u.transpose() * squared;
  }

  // One scale factor per weighted group; the sensitivity constraint is
  // enforced jointly here.
  WeightingSolution combine = SolveWeighting(combined_rows, group_costs, tol);

  Vector u(rank);
  for (int g = 0; g < num_groups; ++g) {
    int lo = g * group_size;
    int len = std::min(group_size, rank - lo);
    u.segment(lo, len) = combine.u[g] * group_weights[g];
  }
  return AssembleFromWeights(q, u);
}

Strategy PrincipalVectors(const Matrix& w, int principal_count, double tol) {
  SpectralDecomposition decomp = Eigendecompose(Gram(w));
  const int rank = decomp.Rank();
  if (rank == 0) throw ValidationError("workload has rank zero");
  if (principal_count < 1 || principal_count > rank)
    throw ValidationError("principal count must lie in 1..rank");
  Matrix q = decomp.q.topRows(rank);
  Vector sigma = decomp.eigenvalues.head(rank);

  if (principal_count == rank) {
    WeightingSolution sol = SolveWeighting(
        q.array().square().matrix(), sigma, tol);
    return AssembleFromWeights(q, sol.u);
  }

  // Individual weights for the top vectors, one shared weight for the rest.
  const int excluded = rank - principal_count;
  Matrix squared_design(principal_count + 1, w.cols());
  squared_design.topRows(principal_count) =
      q.topRows(principal_count).array().square().matrix();
  squared_design.row(principal_count) =
      q.bottomRows(excluded).array().square().matrix().colwise().sum();
  Vector costs(principal_count + 1);
  costs.head(principal_count) = sigma.head(principal_count);
  costs[principal_count] = sigma.tail(excluded).sum();

  WeightingSolution sol = SolveWeighting(squared_design, costs, tol);
  Vector u(rank);
  u.head(principal_count) = sol.u.head(principal_count);
  u.tail(excluded).setConstant(sol.u[principal_count]);
  return AssembleFromWeights(q, u);
}

Strategy SelectEigenStrategy(const Matrix& w, const ReductionConfig& config) {
  switch (config.mode) {
    case ReductionMode::kFull:
      return EigenDesign(w, config.tol);
    case ReductionMode::kSeparation: {
      int group_size = config.group_size;
      if (group_size <= 0) {
        SpectralDecomposition decomp = Eigendecompose(Gram(w));
        group_size = static_cast<int>(
            std::ceil(std::cbrt(static_cast<double>(decomp.Rank()))));
      }
      return EigenSeparation(w, group_size, config.tol);
    }
    case ReductionMode::kPrincipal: {
      int count = config.principal_count;
      if (count <= 0) {
        SpectralDecomposition decomp = Eigendecompose(Gram(w));
        count = std::max(1, decomp.Rank() / 8);
      }
      return PrincipalVectors(w, count, config.tol);
    }
  }
  throw ValidationError("unknown reduction mode");
}

}  // namespace dpdesign
