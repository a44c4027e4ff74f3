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
#ifndef DPDESIGN_EIGENDESIGN_H_
#define DPDESIGN_EIGENDESIGN_H_

#include <string>

#include "dpdesign/types.h"
#include "dpdesign/weighting.h"

namespace dpdesign {

enum class StrategyKind {
  kEigen,
  kIdentity,
  kWavelet,
  kHierarchical,
  kWorkload,
  kReduced,
};

std::string ToString(StrategyKind kind);
StrategyKind StrategyKindFromString(const std::string& name);

// The measurement queries actually answered with noise. Sensitivity is the
// maximum column L2 norm, cached at construction.
struct Strategy {
  Matrix matrix;
  double sensitivity = 0.0;
  StrategyKind kind = StrategyKind::kEigen;

  static Strategy FromMatrix(Matrix matrix, StrategyKind kind);
};

// Result of an eigen-design run, carrying the weighting solution so callers
// can audit optimality.
struct EigenDesignResult {
  Strategy strategy;
  WeightingProblem problem;    // retained eigen-queries and their costs
  WeightingSolution solution;  // optimal squared weights
};

// Weights the eigen-queries of W by the optimal-weighting solution and
// completes deficient columns. Eigen-queries with zero eigenvalue are
// excluded; the strategy has rank equal to rank(W).
EigenDesignResult EigenDesignWithCertificate(
    const Matrix& w, double tol = kWeightingDefaultTol);
Strategy EigenDesign(const Matrix& w, double tol = kWeightingDefaultTol);

// Appends diagonal rows so every column reaches the maximum column norm.
// Sensitivity is unchanged; all-zero completion rows are dropped.
Strategy CompleteColumns(const Strategy& a_prime);

}  // namespace dpdesign

#endif  // DPDESIGN_EIGENDESIGN_H_
