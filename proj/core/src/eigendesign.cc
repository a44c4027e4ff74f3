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

#include "dpdesign/mechanism.h"
#include "dpdesign/spectral.h"

namespace dpdesign {

std::string ToString(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kEigen: return "eigen";
    case StrategyKind::kIdentity: return "identity";
    case StrategyKind::kWavelet: return "wavelet";
    case StrategyKind::kHierarchical: return "hierarchical";
    case StrategyKind::kWorkload: return "workload";
    case StrategyKind::kReduced: return "reduced";
  }
  return "eigen";
}

StrategyKind StrategyKindFromString(const std::string& name) {
  if (name == "eigen") return StrategyKind::kEigen;
  if (name == "identity") return StrategyKind::kIdentity;
  if (name == "wavelet") return StrategyKind::kWavelet;
  if (name == "hierarchical" || name == "hierarchy")
    return StrategyKind::kHierarchical;
  if (name == "workload") return StrategyKind::kWorkload;
  if (name == "reduced") return StrategyKind::kReduced;
  throw ValidationError("unknown strategy kind '" + name + "'");
}

Strategy Strategy::FromMatrix(Matrix matrix, StrategyKind kind) {
  Strategy strategy;
  strategy.sensitivity = SensitivityL2(matrix);
  if (strategy.sensitivity <= 0.0)
    throw ValidationError("strategy matrix is all zero");
  for (int r = 0; r < matrix.rows(); ++r)
    if (matrix.row(r).norm() == 0.0)
      throw ValidationError("strategy has an all-zero row");
  strategy.matrix = std::move(matrix);
  strategy.kind = kind;
  return strategy;
}

Strategy CompleteColumns(const Strategy& a_prime) {
  const Matrix& a = a_prime.matrix;
  const int n = static_cast<int>(a.cols());
  Vector col_norms(n);
  for (int j = 0; j < n; ++j) col_norms[j] = a.col(j).norm();
  double max_norm = col_norms.maxCoeff();

  std::vector<std::pair<int, double>> fills;
  for (int j = 0; j < n; ++j) {
    double gap2 = max_norm * max_norm - col_norms[j] * col_norms[j];
    if (gap2 > kWeightFloor) fills.emplace_back(j, std::sqrt(gap2));
  }
  if (fills.empty()) return a_prime;

  Matrix completed(a.rows() + fills.size(), n);
  completed.topRows(a.rows()) = a;
  completed.bottomRows(fills.size()).setZero();
  for (size_t k = 0; k < fills.size(); ++k)
    completed(a.rows() + k, fills[k].first) = fills[k].second;

  Strategy result;
  result.matrix = std::move(completed);
  result.sensitivity = max_norm;
  result.kind = a_prime.kind;
  return result;
}

EigenDesignResult EigenDesignWithCertificate(const Matrix& w, double tol) {
  if (w.size() == 0 || w.norm() == 0.0)
    throw ValidationError("workload is zero");
  SpectralDecomposition decomp = Eigendecompose(Gram(w));
  int rank = decomp.Rank();
  if (rank == 0) throw ValidationError("workload has rank zero");

  EigenDesignResult result;
  result.problem.design = decomp.q.topRows(rank);
  result.problem.costs = decomp.eigenvalues.head(rank);
  result.solution = OptimizeWeights(result.problem, tol);

  // u_i may underflow at solver tolerance while sigma_i > 0; floor it so the
  // strategy keeps rank equal to rank(W).
  Vector weights = result.solution.u.cwiseMax(kWeightFloor).cwiseSqrt();
  Matrix a_prime = weights.asDiagonal() * result.problem.design;
  result.strategy =
      CompleteColumns(Strategy::FromMatrix(std::move(a_prime),
                                           StrategyKind::kEigen));
  return result;
}

Strategy EigenDesign(const Matrix& w, double tol) {
  return EigenDesignWithCertificate(w, tol).strategy;
}

}  // namespace dpdesign
