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
#include "dpdesign/baselines.h"

#include <cmath>

namespace dpdesign {
namespace {

bool IsPowerOfTwo(int d) { return d >= 1 && (d & (d - 1)) == 0; }

// Unnormalized Haar basis over d cells: the total row, then per level the
// left-half-minus-right-half differences.
Matrix HaarMatrix(int d) {
  Matrix h = Matrix::Zero(d, d);
  h.row(0).setOnes();
  int row = 1;
  // Recurse breadth-first over [lo, hi) intervals.
  std::vector<std::pair<int, int>> queue = {{0, d}};
  for (size_t k = 0; k < queue.size(); ++k) {
    auto [lo, hi] = queue[k];
    if (hi - lo < 2) continue;
    int mid = (lo + hi) / 2;
    h.row(row).segment(lo, mid - lo).setOnes();
    h.row(row).segment(mid, hi - mid).setConstant(-1.0);
    ++row;
    queue.push_back({lo, mid});
    queue.push_back({mid, hi});
  }
  return h;
}

// All node intervals of a binary tree over d cells, root first, splitting
// ceil/floor for odd interval lengths.
Matrix HierarchyMatrix(int d) {
  std::vector<std::pair<int, int>> nodes;
  std::vector<std::pair<int, int>> queue = {{0, d}};
  for (size_t k = 0; k < queue.size(); ++k) {
    auto [lo, hi] = queue[k];
    nodes.push_back({lo, hi});
    if (hi - lo > 1) {
      int mid = lo + (hi - lo + 1) / 2;
      queue.push_back({lo, mid});
      queue.push_back({mid, hi});
    }
  }
  Matrix h = Matrix::Zero(nodes.size(), d);
  for (size_t r = 0; r < nodes.size(); ++r)
    h.row(r).segment(nodes[r].first, nodes[r].second - nodes[r].first)
        .setOnes();
  return h;
}

Matrix Kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix ComposeDimensions(const DomainShape& shape,
                         Matrix (*per_dimension)(int)) {
  Matrix result = per_dimension(shape.dims()[0]);
  for (size_t i = 1; i < shape.dims().size(); ++i)
    result = Kronecker(result, per_dimension(shape.dims()[i]));
  return result;
}

}  // namespace

Strategy IdentityStrategy(int n) {
  if (n < 1) throw ValidationError("identity strategy requires n >= 1");
  return Strategy::FromMatrix(Matrix::Identity(n, n), StrategyKind::kIdentity);
}

Strategy WaveletStrategy(const DomainShape& shape) {
  for (int d : shape.dims())
    if (!IsPowerOfTwo(d))
      throw ValidationError(
          "wavelet strategy requires power-of-two dimensions, got " +
          std::to_string(d));
  return Strategy::FromMatrix(ComposeDimensions(shape, &HaarMatrix),
                              StrategyKind::kWavelet);
}

Strategy HierarchyStrategy(const DomainShape& shape) {
  return Strategy::FromMatrix(ComposeDimensions(shape, &HierarchyMatrix),
                              StrategyKind::kHierarchical);
}

double GaussianBaselineError(const Matrix& w, const PrivacyParams& params) {
  double sensitivity = SensitivityL2(w);
  return std::sqrt(static_cast<double>(w.rows()) * params.P()) * sensitivity;
}

}  // namespace dpdesign
