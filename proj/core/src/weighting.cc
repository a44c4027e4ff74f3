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
#include "dpdesign/weighting.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace dpdesign {
namespace {

constexpr double kActiveTol = 1e-6;
constexpr double kBarrierGrowth = 20.0;
constexpr double kNewtonTol = 1e-10;
constexpr double kLineSearchAlpha = 0.25;
constexpr double kLineSearchBeta = 0.5;

double BarrierValue(const Matrix& g, const Vector& c, const Vector& u,
                    double t, const Vector& slack) {
  return t * (c.array() / u.array()).sum() - slack.array().log().sum() -
         u.array().log().sum();
}

// Nonnegative least squares, Lawson-Hanson active set.
Vector Nnls(const Matrix& a, const Vector& b) {
  const int n = static_cast<int>(a.cols());
  Vector x = Vector::Zero(n);
  std::vector<bool> passive(n, false);
  Vector resid = b;
  for (int outer = 0; outer < 3 * n + 30; ++outer) {
    Vector w = a.transpose() * resid;
    int best = -1;
    double best_w = 1e-12 * std::max(1.0, b.norm());
    for (int j = 0; j < n; ++j) {
      if (!passive[j] && w[j] > best_w) {
        best_w = w[j];
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = true;
    while (true) {
      std::vector<int> idx;
      for (int j = 0; j < n; ++j)
        if (passive[j]) idx.push_back(j);
      Matrix ap(a.rows(), idx.size());
      for (size_t k = 0; k < idx.size(); ++k) ap.col(k) = a.col(idx[k]);
      Vector z = ap.colPivHouseholderQr().solve(b);
      bool all_positive = true;
      double alpha = 1.0;
      for (size_t k = 0; k < idx.size(); ++k) {
        if (z[k] <= 0.0) {
          all_positive = false;
          double xk = x[idx[k]];
          if (xk - z[k] > 0.0) alpha = std::min(alpha, xk / (xk - z[k]));
        }
      }
      if (all_positive) {
        x.setZero();
        for (size_t k = 0; k < idx.size(); ++k) x[idx[k]] = z[k];
        break;
      }
      for (size_t k = 0; k < idx.size(); ++k)
        x[idx[k]] += alpha * (z[k] - x[idx[k]]);
      for (int j = 0; j < n; ++j)
        if (passive[j] && x[j] <= 1e-14) passive[j] = false;
    }
    resid = b - a * x;
  }
  return x;
}

}  // namespace

Vector DesignCosts(const Matrix& w, const Matrix& design) {
  if (w.cols() != design.cols())
    throw ValidationError("workload and design column counts differ");
  Eigen::BDCSVD<Matrix> svd(design,
                            Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  double cut = kWeightFloor * (sv.size() ? sv[0] : 0.0);
  int rank = 0;
  while (rank < sv.size() && sv[rank] > cut) ++rank;
  if (rank < design.rows())
    throw NumericalError("design matrix is row rank deficient");
  Matrix pinv = svd.matrixV().leftCols(rank) *
                sv.head(rank).cwiseInverse().asDiagonal() *
                svd.matrixU().leftCols(rank).transpose();
  Matrix wq = w * pinv;
  Vector costs(design.rows());
  for (int i = 0; i < design.rows(); ++i) costs[i] = wq.col(i).squaredNorm();
  return costs;
}

WeightingSolution SolveWeighting(const Matrix& squared_design,
                                 const Vector& costs, double tol) {
  const Matrix& g = squared_design;
  const int p = static_cast<int>(g.rows());
  const int nc = static_cast<int>(g.cols());
  if (costs.size() != p) throw ValidationError("cost/design size mismatch");
  if ((costs.array() <= 0.0).any())
    throw ValidationError("SolveWeighting requires strictly positive costs");
  if ((g.array() < 0.0).any())
    throw ValidationError("squared design must be nonnegative");

  Vector col_sums = g.colwise().sum();
  double max_col = col_sums.maxCoeff();
  if (max_col <= 0.0) throw ValidationError("design matrix has no support");

  Vector u = Vector::Constant(p, 0.5 / max_col);
  const double constraints = nc + p;
  double t = 1.0;
  int iterations = 0;

  while (true) {
    // Newton centering at the current barrier parameter.
    for (int step = 0; step < 200; ++step) {
      if (++iterations > kWeightingIterationCap) {
        WeightingSolution best;
        best.u = u;
        best.objective = (costs.array() / u.array()).sum();
        best.gap = constraints / (t * best.objective);
        throw NumericalError(
            "weighting solver hit the iteration cap with gap " +
            std::to_string(best.gap));
      }
      Vector slack = Vector::Ones(nc) - g.transpose() * u;
      Vector inv_slack = slack.cwiseInverse();
      Vector grad = (-t * costs.array() / u.array().square()).matrix() +
                    g * inv_slack - u.cwiseInverse();
      Matrix hess = (g * inv_slack.array().square().matrix().asDiagonal()) *
                    g.transpose();
      hess.diagonal() += (2.0 * t * costs.array() / u.array().cube() +
                          u.array().square().inverse())
                             .matrix();
      Vector dn = hess.ldlt().solve(-grad);
      double decrement = -grad.dot(dn);
      double f0 = BarrierValue(g, costs, u, t, slack);
      if (decrement * 0.5 < kNewtonTol * (1.0 + std::abs(f0))) break;

      double s = 1.0;
      bool stalled = false;
      Vector candidate;
      while (true) {
        candidate = u + s * dn;
        if ((candidate.array() > 0.0).all()) {
          Vector cand_slack = Vector::Ones(nc) - g.transpose() * candidate;
          if ((cand_slack.array() > 0.0).all() &&
              BarrierValue(g, costs, candidate, t, cand_slack) <=
                  f0 + kLineSearchAlpha * s * grad.dot(dn)) {
            break;
          }
        }
        s *= kLineSearchBeta;
        if (s < 1e-14) {
          candidate = u;
          stalled = true;
          break;
        }
      }
      u = candidate;
      if (stalled) break;
    }

    double objective = (costs.array() / u.array()).sum();
    double gap = constraints / (t * objective);
    if (gap <= tol) {
      WeightingSolution solution;
      solution.u = u.cwiseMax(kWeightFloor);
      solution.objective = objective;
      solution.gap = gap;
      Vector slack = Vector::Ones(nc) - g.transpose() * u;
      solution.multipliers =
          (slack.array().max(1e-300).inverse() / t).matrix();
      for (int j = 0; j < nc; ++j)
        if (slack[j] <= kActiveTol) solution.active.push_back(j);
      return solution;
    }
    t *= kBarrierGrowth;
  }
}

WeightingSolution OptimizeWeights(const WeightingProblem& problem,
                                  double tol) {
  const Matrix& design = problem.design;
  const Vector& costs = problem.costs;
  if (design.rows() != costs.size())
    throw ValidationError("design rows and cost length differ");
  if ((costs.array() < 0.0).any())
    throw ValidationError("costs must be nonnegative");
  for (int i = 0; i < design.rows(); ++i)
    if (design.row(i).norm() == 0.0)
      throw ValidationError("design row " + std::to_string(i + 1) +
                            " is all zero");

  std::vector<int> retained;
  for (int i = 0; i < costs.size(); ++i)
    if (costs[i] > 0.0) retained.push_back(i);
  if (retained.empty())
    throw ValidationError("all costs are zero; nothing to optimize");

  Matrix g(retained.size(), design.cols());
  Vector c(retained.size());
  for (size_t k = 0; k < retained.size(); ++k) {
    g.row(k) = design.row(retained[k]).array().square();
    c[k] = costs[retained[k]];
  }
  WeightingSolution reduced = SolveWeighting(g, c, tol);

  WeightingSolution solution;
  solution.u = Vector::Zero(costs.size());
  for (size_t k = 0; k < retained.size(); ++k)
    solution.u[retained[k]] = reduced.u[k];
  solution.objective = reduced.objective;
  solution.gap = reduced.gap;
  solution.multipliers = reduced.multipliers;
  solution.active = reduced.active;
  return solution;
}

KktReport VerifyKkt(const WeightingProblem& problem,
                    const WeightingSolution& solution, double tol) {
  const Matrix& design = problem.design;
  const Vector& costs = problem.costs;
  const Vector& u = solution.u;
  const int nc = static_cast<int>(design.cols());

  Matrix g = design.array().square().matrix();  // p x n
  Vector slack = Vector::Ones(nc) - g.transpose() * u;

  KktReport report;
  report.feasibility_residual = std::max(0.0, -slack.minCoeff());
  report.feasible = report.feasibility_residual <= tol;

  // Stationarity target: c_i / u_i^2 on the support of u.
  std::vector<int> support;
  for (int i = 0; i < u.size(); ++i)
    if (u[i] > 0.0 && costs[i] > 0.0) support.push_back(i);
  Vector target(support.size());
  Matrix g_sup(support.size(), nc);
  for (size_t k = 0; k < support.size(); ++k) {
    int i = support[k];
    target[k] = costs[i] / (u[i] * u[i]);
    g_sup.row(k) = g.row(i);
  }

  // Multipliers live only on near-active constraints. The band is wider than
  // the solver's active tolerance: weakly active columns sit slightly off the
  // boundary at a finite barrier parameter, and the nonnegative fit plus the
  // complementarity check below discard columns that are truly slack.
  constexpr double kKktActiveBand = 1e-3;
  std::vector<int> active;
  for (int j = 0; j < nc; ++j)
    if (slack[j] <= kKktActiveBand) active.push_back(j);
  Vector mu = Vector::Zero(nc);
  if (!active.empty() && support.size() > 0) {
    Matrix g_act(support.size(), active.size());
    for (size_t a = 0; a < active.size(); ++a)
      g_act.col(a) = g_sup.col(active[a]);
    Vector mu_act = Nnls(g_act, target);
    for (size_t a = 0; a < active.size(); ++a) mu[active[a]] = mu_act[a];
  }
  double target_norm = std::max(target.norm(), 1e-300);
  report.stationarity_residual =
      (g_sup * mu - target).norm() / target_norm;
  report.stationary = report.stationarity_residual <= tol;
  report.multipliers = mu;

  double objective = 0.0;
  for (int i : support) objective += costs[i] / u[i];
  double scale = std::max(objective, 1.0);
  report.complementarity =
      (mu.array() * slack.array()).abs().maxCoeff() / scale;
  report.complementary = report.complementarity <= tol;

  // Dual value of min sum c_i/u_i subject to G^T u <= 1:
  // g(mu) = 2 sum_i sqrt(c_i (G mu)_i) - sum_j mu_j. Any nonnegative scaling
  // of mu stays dual-feasible; g(alpha mu) is maximized at alpha = (s/m)^2,
  // giving s^2/m.
  Vector gmu = g_sup * mu;
  double root_sum = 0.0;
  for (size_t k = 0; k < support.size(); ++k)
    root_sum += std::sqrt(std::max(0.0, costs[support[k]] * gmu[k]));
  double mu_sum = mu.sum();
  double dual = mu_sum > 0.0 ? root_sum * root_sum / mu_sum : 0.0;
  report.duality_gap = (objective - dual) / scale;

  report.pass = report.feasible && report.stationary && report.complementary &&
                std::abs(report.duality_gap) <= tol;
  return report;
}

}  // namespace dpdesign
