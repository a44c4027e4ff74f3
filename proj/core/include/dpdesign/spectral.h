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
#ifndef DPDESIGN_SPECTRAL_H_
#define DPDESIGN_SPECTRAL_H_

#include "dpdesign/types.h"

namespace dpdesign {

inline constexpr double kRankRelTol = 1e-10;
inline constexpr double kPsdTol = 1e-8;

// Symmetric eigendecomposition S = Q^T diag(eigenvalues) Q with rows of Q as
// the eigen-queries, eigenvalues sorted non-increasing and clamped at zero.
struct SpectralDecomposition {
  Matrix q;            // n x n orthogonal, rows are eigenvectors
  Vector eigenvalues;  // sorted non-increasing, >= 0

  // Count of eigenvalues above rel_tol * largest.
  int Rank(double rel_tol = kRankRelTol) const;
  // Rows of q with eigenvalue above rel_tol * largest.
  Matrix RetainedRows(double rel_tol = kRankRelTol) const;
  Vector RetainedEigenvalues(double rel_tol = kRankRelTol) const;
};

// W^T W, explicitly symmetrized.
Matrix Gram(const Matrix& w);

// Decomposes a symmetric PSD matrix. Eigenvalues below -kPsdTol * largest
// magnitude raise NumericalError; small negatives are clamped to zero.
SpectralDecomposition Eigendecompose(const Matrix& s);

// Pseudo-inverse of a symmetric PSD matrix via its spectral decomposition,
// dropping eigenvalues at or below rel_tol * largest.
Matrix PsdPseudoInverse(const Matrix& s, double rel_tol = kRankRelTol);

}  // namespace dpdesign

#endif  // DPDESIGN_SPECTRAL_H_
