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
#include "dpdesign/analysis.h"

#include <cmath>

#include "dpdesign/spectral.h"

namespace dpdesign {

double ErrorReport::Rms() const {
  return num_queries > 0 ? workload_error / std::sqrt(num_queries) : 0.0;
}

double Svdb(const Matrix& w) {
  SpectralDecomposition decomp = Eigendecompose(Gram(w));
  double sum_roots = decomp.eigenvalues.array().sqrt().sum();
  return sum_roots * sum_roots / static_cast<double>(w.cols());
}

double LowerBound(const Matrix& w, const PrivacyParams& params) {
  return std::sqrt(params.P() * Svdb(w));
}

double Thm3Cap(const Matrix& w) {
  if (w.norm() == 0.0) throw ValidationError("workload is zero");
  SpectralDecomposition decomp = Eigendecompose(Gram(w));
  double sigma1 = decomp.eigenvalues[0];
  double svdb = Svdb(w);
  return std::pow(static_cast<double>(w.cols()) * sigma1 / svdb, 0.25);
}

ErrorReport WorkloadError(const Matrix& w, const Strategy& a,
                          const PrivacyParams& params) {
  CheckAnswerable(w, a.matrix);
  Matrix gram_inv = PsdPseudoInverse(Gram(a.matrix));

  ErrorReport report;
  report.num_queries = static_cast<int>(w.rows());
  double trace = (w * gram_inv).cwiseProduct(w).sum();
  double sens2 = a.sensitivity * a.sensitivity;
  report.unitP_squared = sens2 * trace;
  report.workload_error = a.sensitivity * std::sqrt(params.P() * trace);

  // Per-query root mean square error: sqrt(P) ||A||_2 ||w_i pinv(A)||.
  Matrix pinv_a = gram_inv * a.matrix.transpose();
  report.per_query = Vector(w.rows());
  double sqrt_p = std::sqrt(params.P());
  for (int i = 0; i < w.rows(); ++i)
    report.per_query[i] =
        sqrt_p * a.sensitivity * (w.row(i) * pinv_a).norm();

  report.svdb_bound = Svdb(w);
  report.lower_bound = std::sqrt(params.P() * report.svdb_bound);
  report.ratio_to_bound = report.workload_error / report.lower_bound;
  report.thm3_cap = Thm3Cap(w);
  return report;
}

EmpiricalError MeasureEmpiricalError(const Matrix& w, const Strategy& a,
                                     const Vector& x,
                                     const PrivacyParams& params, int trials,
                                     std::uint64_t seed, double sanity) {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  CheckAnswerable(w, a.matrix);

  // Precompute the inference operator; each trial then only samples noise.
  Matrix pinv_a = PsdPseudoInverse(Gram(a.matrix)) * a.matrix.transpose();
  Vector truth = w * x;
  double sigma = params.SigmaScale(a.sensitivity);
  Vector strategy_truth = a.matrix * x;

  const int m = static_cast<int>(w.rows());
  Vector sum_sq = Vector::Zero(m);
  Vector sum_rel = Vector::Zero(m);
  double total_sq = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    GaussianSampler sampler(DeriveSeed(seed, trial));
    Vector noisy = strategy_truth +
                   sigma * sampler.NextVector(static_cast<int>(a.matrix.rows()));
    Vector answers = w * (pinv_a * noisy);
    Vector deviation = answers - truth;
    sum_sq += deviation.cwiseAbs2();
    total_sq += deviation.squaredNorm();
    for (int i = 0; i < m; ++i)
      sum_rel[i] +=
          std::abs(deviation[i]) / std::max(std::abs(truth[i]), sanity);
  }

  EmpiricalError result;
  result.trials = trials;
  result.workload_rmse = std::sqrt(total_sq / trials);
  result.per_query_rmse = (sum_sq / trials).cwiseSqrt();
  result.per_query_relative = sum_rel / trials;
  result.mean_relative = result.per_query_relative.mean();
  return result;
}

}  // namespace dpdesign
