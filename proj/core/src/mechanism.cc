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
#include "dpdesign/mechanism.h"

#include <cmath>

#include "dpdesign/eigendesign.h"
#include "dpdesign/spectral.h"

namespace dpdesign {
namespace {

constexpr double kAnswerableTol = 1e-8;
constexpr double kTwoPi = 6.283185307179586476925287;

std::uint64_t SplitMix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

PrivacyParams::PrivacyParams(double eps, double delta)
    : eps_(eps), delta_(delta) {
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw ValidationError("delta must lie in (0, 1)");
}

double PrivacyParams::P() const {
  return 2.0 * std::log(2.0 / delta_) / (eps_ * eps_);
}

double PrivacyParams::SigmaScale(double sensitivity) const {
  return sensitivity * std::sqrt(2.0 * std::log(2.0 / delta_)) / eps_;
}

PrivacyParams PrivacyParams::UnitP() {
  // eps chosen so that 2 ln(2/delta) / eps^2 = 1 exactly.
  const double delta = 1e-6;
  return PrivacyParams(std::sqrt(2.0 * std::log(2.0 / delta)), delta);
}

double SensitivityL2(const Matrix& a) {
  double max_norm = 0.0;
  for (int j = 0; j < a.cols(); ++j)
    max_norm = std::max(max_norm, a.col(j).norm());
  return max_norm;
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
  SplitMix64(state);
  return SplitMix64(state);
}

GaussianSampler::GaussianSampler(std::uint64_t seed) : state_(seed) {
  // Warm the mixer so nearby seeds decorrelate.
  SplitMix64(state_);
}

double GaussianSampler::NextUniform() {
  // 53-bit mantissa in (0, 1].
  return (static_cast<double>(SplitMix64(state_) >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianSampler::Next() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u1 = NextUniform();
  double u2 = NextUniform();
  double radius = std::sqrt(-2.0 * std::log(u1));
  cached_ = radius * std::sin(kTwoPi * u2);
  has_cached_ = true;
  return radius * std::cos(kTwoPi * u2);
}

Vector GaussianSampler::NextVector(int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = Next();
  return v;
}

Vector GaussianMechanism(const Matrix& w, const Vector& x,
                         const PrivacyParams& params, std::uint64_t seed) {
  if (w.cols() != x.size())
    throw ValidationError("workload and data vector dimensions disagree");
  GaussianSampler sampler(seed);
  double sigma = params.SigmaScale(SensitivityL2(w));
  return w * x + sigma * sampler.NextVector(static_cast<int>(w.rows()));
}

Vector LeastSquaresEstimate(const Matrix& a, const Vector& y) {
  if (a.rows() != y.size())
    throw ValidationError("strategy and answer vector dimensions disagree");
  if (a.norm() == 0.0) throw ValidationError("strategy matrix is zero");
  return PsdPseudoInverse(Gram(a)) * (a.transpose() * y);
}

bool IsAnswerable(const Matrix& w, const Matrix& a) {
  Matrix projector = PsdPseudoInverse(Gram(a)) * Gram(a);
  double residual = (w - w * projector).norm();
  return residual <= kAnswerableTol * std::max(1.0, w.norm());
}

void CheckAnswerable(const Matrix& w, const Matrix& a) {
  if (!IsAnswerable(w, a))
    throw NumericalError(
        "workload is not answerable by the strategy: row space of W is not "
        "contained in the row space of A");
}

MechanismOutput MatrixMechanism(const Matrix& w, const Strategy& a,
                                const Vector& x, const PrivacyParams& params,
                                std::uint64_t seed) {
  if (w.cols() != x.size() || a.matrix.cols() != x.size())
    throw ValidationError("dimension mismatch between workload, strategy and "
                          "data vector");
  CheckAnswerable(w, a.matrix);

  GaussianSampler sampler(seed);
  double sigma = params.SigmaScale(a.sensitivity);
  Vector noisy = a.matrix * x +
                 sigma * sampler.NextVector(static_cast<int>(a.matrix.rows()));

  MechanismOutput output;
  output.xhat = LeastSquaresEstimate(a.matrix, noisy);
  output.answers = w * output.xhat;
  output.seed = seed;
  return output;
}

}  // namespace dpdesign
