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
#ifndef DPDESIGN_ANALYSIS_H_
#define DPDESIGN_ANALYSIS_H_

#include <cstdint>

#include "dpdesign/eigendesign.h"
#include "dpdesign/mechanism.h"
#include "dpdesign/types.h"

namespace dpdesign {

// Analytic error accounting for answering W with strategy A.
// workload_error = ||A||_2 sqrt(P trace(W^T W (A^T A)^+)); unitP_squared is
// the privacy-constant-free core ||A||_2^2 trace(W^T W (A^T A)^+).
struct ErrorReport {
  double workload_error = 0.0;
  double unitP_squared = 0.0;
  Vector per_query;          // per-query root mean square errors
  double svdb_bound = 0.0;   // singular value bound (unit-P squared units)
  double lower_bound = 0.0;  // sqrt(P * svdb)
  double ratio_to_bound = 0.0;
  double thm3_cap = 0.0;     // (n sigma_1 / svdb)^(1/4)
  int num_queries = 0;

  // Root-mean-square form: workload_error / sqrt(m).
  double Rms() const;
};

ErrorReport WorkloadError(const Matrix& w, const Strategy& a,
                          const PrivacyParams& params);

// (1/n)(sqrt(sigma_1) + ... + sqrt(sigma_n))^2 from the eigenvalues of W^T W.
double Svdb(const Matrix& w);

// sqrt(P * svdb(W)): no strategy answers W with smaller workload error.
double LowerBound(const Matrix& w, const PrivacyParams& params);

// Approximation-ratio cap (n sigma_1 / svdb)^(1/4).
double Thm3Cap(const Matrix& w);

struct EmpiricalError {
  // sqrt(mean over trials of the summed squared deviation across queries);
  // directly comparable to ErrorReport::workload_error.
  double workload_rmse = 0.0;
  Vector per_query_rmse;
  // |estimate - truth| / max(|truth|, sanity), averaged over trials.
  Vector per_query_relative;
  double mean_relative = 0.0;
  int trials = 0;
};

// Monte-Carlo error measurement over `trials` runs of the matrix mechanism
// with independently derived per-trial seeds.
EmpiricalError MeasureEmpiricalError(const Matrix& w, const Strategy& a,
                                     const Vector& x,
                                     const PrivacyParams& params, int trials,
                                     std::uint64_t seed, double sanity = 1.0);

}  // namespace dpdesign

#endif  // DPDESIGN_ANALYSIS_H_
