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
#ifndef DPDESIGN_REDUCTION_H_
#define DPDESIGN_REDUCTION_H_

#include "dpdesign/eigendesign.h"
#include "dpdesign/types.h"

namespace dpdesign {

enum class ReductionMode { kFull, kSeparation, kPrincipal };

struct ReductionConfig {
  ReductionMode mode = ReductionMode::kFull;
  int group_size = 0;       // separation; 0 = ceil(rank^(1/3))
  int principal_count = 0;  // principal; 0 = max(1, rank/8)
  double tol = kWeightingDefaultTol;
};

// Partitions the eigen-queries (sorted by eigenvalue) into consecutive groups
// of size group_size, weights each group independently, then solves a second
// weighting instance over one scale factor per group. The sensitivity
// constraint is enforced jointly in the combination solve.
Strategy EigenSeparation(const Matrix& w, int group_size,
                         double tol = kWeightingDefaultTol);

// Individual weights for the principal_count largest-eigenvalue eigen-queries
// and a single shared weight for the remaining nonzero-eigenvalue ones.
Strategy PrincipalVectors(const Matrix& w, int principal_count,
                          double tol = kWeightingDefaultTol);

// Dispatch over full / separation / principal with config defaults resolved.
Strategy SelectEigenStrategy(const Matrix& w, const ReductionConfig& config);

}  // namespace dpdesign

#endif  // DPDESIGN_REDUCTION_H_
