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
#ifndef DPDESIGN_BASELINES_H_
#define DPDESIGN_BASELINES_H_

#include "dpdesign/domain.h"
#include "dpdesign/eigendesign.h"
#include "dpdesign/mechanism.h"

namespace dpdesign {

Strategy IdentityStrategy(int n);

// Unnormalized Haar matrix (entries in {0, +-1}) per dimension, composed
// across dimensions by tensor product. Every dimension must be a power of
// two; otherwise throws ValidationError.
Strategy WaveletStrategy(const DomainShape& shape);

// All node intervals of a binary tree over the cells of each dimension
// (root = full interval, leaves = cells), composed by tensor product.
// Non-power-of-two intervals split as ceil/floor.
Strategy HierarchyStrategy(const DomainShape& shape);

// Error of answering W directly with the Gaussian mechanism, no inference:
// sqrt(m * P(eps, delta) * ||W||_2^2).
double GaussianBaselineError(const Matrix& w, const PrivacyParams& params);

}  // namespace dpdesign

#endif  // DPDESIGN_BASELINES_H_
