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
#include "dpdesign/spectral.h"

#include <Eigen/Eigenvalues>

namespace dpdesign {

int SpectralDecomposition::Rank(double rel_tol) const {
  if (eigenvalues.size() == 0 || eigenvalues[0] <= 0.0) return 0;
  double cut = rel_tol * eigenvalues[0];
  int r = 0;
  while (r < eigenvalues.size() && eigenvalues[r] > cut) ++r;
  return r;
}

Matrix SpectralDecomposition::RetainedRows(double rel_tol) const {
  return q.topRows(Rank(rel_tol));
}

Vector SpectralDecomposition::RetainedEigenvalues(double rel_tol) const {
  return eigenvalues.head(Rank(rel_tol));
}

Matrix Gram(const Matrix& w) {
  Matrix s = w.transpose() * w;
  return 0.5 * (s + s.transpose());
}

SpectralDecomposition Eigendecompose(const Matrix& s) {
  if (s.rows() != s.cols()) throw ValidationError("matrix is not square");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(s);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigendecomposition failed to converge");

  // Eigen returns ascending order; flip to non-increasing.
  const int n = static_cast<int>(s.rows());
  SpectralDecomposition decomp;
  decomp.q = Matrix(n, n);
  decomp.eigenvalues = Vector(n);
  for (int i = 0; i < n; ++i) {
    decomp.eigenvalues[i] = solver.eigenvalues()[n - 1 - i];
    decomp.q.row(i) = solver.eigenvectors().col(n - 1 - i).transpose();
  }
  double top = decomp.eigenvalues.size() ? decomp.eigenvalues[0] : 0.0;
  for (int i = 0; i < n; ++i) {
    if (decomp.eigenvalues[i] < -kPsdTol * std::max(1.0, top))
      throw NumericalError("matrix is not positive semidefinite");
    if (decomp.eigenvalues[i] < 0.0) decomp.eigenvalues[i] = 0.0;
  }
  return decomp;
}

Matrix PsdPseudoInverse(const Matrix& s, double rel_tol) {
  SpectralDecomposition decomp = Eigendecompose(s);
  int r = decomp.Rank(rel_tol);
  Matrix qr = decomp.q.topRows(r);
  Vector inv = decomp.eigenvalues.head(r).cwiseInverse();
  return qr.transpose() * inv.asDiagonal() * qr;
}

}  // namespace dpdesign
