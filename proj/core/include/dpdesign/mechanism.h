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
#ifndef DPDESIGN_MECHANISM_H_
#define DPDESIGN_MECHANISM_H_

#include <cstdint>

#include "dpdesign/types.h"

namespace dpdesign {

struct Strategy;

// (eps, delta) privacy parameters and the derived noise constants. The
// delta-calibration constant 2/delta follows the Gaussian mechanism as used
// throughout; it is exposed here so callers can audit it.
class PrivacyParams {
 public:
  PrivacyParams(double eps, double delta);

  double eps() const { return eps_; }
  double delta() const { return delta_; }
  // P(eps, delta) = 2 ln(2/delta) / eps^2.
  double P() const;
  // Noise scale for a query matrix with the given L2 sensitivity.
  double SigmaScale(double sensitivity) const;

  // Unit-P parameters for privacy-constant-free error accounting:
  // P() == 1 exactly.
  static PrivacyParams UnitP();

 private:
  double eps_;
  double delta_;
};

struct MechanismOutput {
  Vector answers;  // noisy workload answers, equal to W * xhat
  Vector xhat;     // least-squares estimate of the data vector
  std::uint64_t seed = 0;
};

// Maximum column L2 norm.
double SensitivityL2(const Matrix& a);

// Derives an independent seed for a trial stream (splitmix64 mixing).
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

// Seedable standard normal sampler, deterministic across platforms.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed);
  double Next();
  Vector NextVector(int n);

 private:
  double NextUniform();
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// W x + Normal(sigma)^m with sigma calibrated to the sensitivity of W.
Vector GaussianMechanism(const Matrix& w, const Vector& x,
                         const PrivacyParams& params, std::uint64_t seed);

// xhat = pinv(A) y via the spectral decomposition of A^T A restricted to
// eigenvalues above the rank tolerance.
Vector LeastSquaresEstimate(const Matrix& a, const Vector& y);

// Row-space containment ||W - W pinv(A) A||_F <= 1e-8 ||W||_F.
bool IsAnswerable(const Matrix& w, const Matrix& a);
void CheckAnswerable(const Matrix& w, const Matrix& a);

// Three-step matrix mechanism: Gaussian mechanism on the strategy,
// least-squares estimate, workload answers W * xhat.
MechanismOutput MatrixMechanism(const Matrix& w, const Strategy& a,
                                const Vector& x, const PrivacyParams& params,
                                std::uint64_t seed);

}  // namespace dpdesign

#endif  // DPDESIGN_MECHANISM_H_
