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
#ifndef DPDESIGN_WEIGHTING_H_
#define DPDESIGN_WEIGHTING_H_

#include <vector>

#include "dpdesign/types.h"

namespace dpdesign {

inline constexpr double kWeightingDefaultTol = 1e-6;
inline constexpr int kWeightingIterationCap = 100000;
inline constexpr double kWeightFloor = 1e-12;

// Optimal query weighting over a fixed design set: choose u >= 0 minimizing
// sum_i costs_i / u_i subject to (design o design)^T u <= 1 componentwise.
// u_i is the squared weight applied to design row i.
struct WeightingProblem {
  Matrix design;  // p x n, rows are design queries, no zero rows
  Vector costs;   // length p, >= 0
};

struct WeightingSolution {
  Vector u;                 // length p, squared weights; 0 exactly where cost 0
  double objective = 0.0;   // sum of costs_i / u_i over u_i > 0
  double gap = 0.0;         // certified relative optimality gap
  Vector multipliers;       // barrier multipliers for the column constraints
  std::vector<int> active;  // column constraints active within 1e-6
};

// c_i = squared L2 norm of column i of W * pinv(design). Throws
// NumericalError when the design matrix is row rank deficient.
Vector DesignCosts(const Matrix& w, const Matrix& design);

// Interior-point solve of the reduced convex problem. Rows with zero cost are
// removed up front and come back as u_i = 0. Throws NumericalError when no
// cost is positive or the solver fails to reach the requested gap.
WeightingSolution OptimizeWeights(const WeightingProblem& problem,
                                  double tol = kWeightingDefaultTol);

// Same solve with the element-wise squared design matrix supplied directly.
// Every entry of squared_design must be >= 0 and every cost > 0.
WeightingSolution SolveWeighting(const Matrix& squared_design,
                                 const Vector& costs,
                                 double tol = kWeightingDefaultTol);

struct KktReport {
  double feasibility_residual = 0.0;    // max violation of column constraints
  double stationarity_residual = 0.0;   // relative residual of the fit
                                        // c_i/u_i^2 = sum_j mu_j G_ij
  double complementarity = 0.0;         // max mu_j * slack_j
  double duality_gap = 0.0;             // relative primal-dual gap
  Vector multipliers;                   // nonnegative fit result
  bool feasible = false;
  bool stationary = false;
  bool complementary = false;
  bool pass = false;
};

// First-order optimality certificate for a weighting solution. Multipliers
// are recovered by nonnegative least squares over the near-active columns.
KktReport VerifyKkt(const WeightingProblem& problem,
                    const WeightingSolution& solution, double tol = 1e-5);

}  // namespace dpdesign

#endif  // DPDESIGN_WEIGHTING_H_
