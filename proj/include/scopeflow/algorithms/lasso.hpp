/**
 * Copyright (c) 2026 The scopeflow Authors.
 *     All rights reserved.
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing,
 *  software distributed under the License is distributed on an "AS
 *  IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either
 *  express or implied.  See the License for the specific language
 *  governing permissions and limitations under the License.
 */


#ifndef SCOPEFLOW_ALGORITHMS_LASSO_HPP
#define SCOPEFLOW_ALGORITHMS_LASSO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "scopeflow/engine.hpp"
#include "scopeflow/sparse.hpp"

namespace scopeflow {

/**
 * min_w  sum_j (w^T x_j - y_j)^2 + lambda * |w|_1
 *
 * X is stored observations x features: row j is x_j.
 */
struct LassoProblem {
  SparseMatrix X;
  std::vector<double> y;
  double lambda = 0.0;

  std::size_t features() const { return X.cols; }
  std::size_t observations() const { return X.rows; }
  /// Throws ContractViolation on a dimension mismatch or negative lambda.
  void validate() const;
};

struct RegressionInstance {
  SparseMatrix X;
  std::vector<double> y;
  std::vector<double> w_true;
};

/// X has `density` nonzero N(0,1) entries (every column and row gets at
/// least one); `density` of the true weights are nonzero; y = X w + noise.
RegressionInstance make_sparse_regression(std::size_t observations, std::size_t features,
                                          double density, double noise, std::uint64_t seed);

/// Weight vertex i holds w_i and a_i = 2 sum_j X_ij^2; observation vertex
/// j holds y_j and the residual r_j = y_j - w^T x_j.
struct LassoVertex {
  bool is_weight = false;
  double value = 0.0;
  double residual = 0.0;
  double a = 0.0;
};

struct LassoEdge {
  double x = 0.0;
};

using LassoGraph = DataGraph<LassoVertex, LassoEdge>;

/// Weight vertices 0..p-1, observation vertices p..p+n-1, and one edge
/// w_i -> y_j per nonzero X_ji. All weights start at zero.
LassoGraph build_lasso_graph(const LassoProblem& problem);

struct ShootingOptions {
  double lambda = 0.0;
  /// Weight changes above this reschedule the two-hop weight neighborhood.
  double epsilon = 1e-10;
};

/**
 * Exact minimization in w_i: c = 2 sum_j X_ij (r_j + w_i X_ij),
 * w_i <- soft(c, lambda) / a_i, then r_j -= dw * X_ij on every adjacent
 * observation. Residuals are accessed atomically so the update may run
 * under Vertex consistency. A zero column forces w_i = 0.
 */
void shooting_update(Scope<LassoGraph>& scope, const SharedDataTable& table, TaskSink& sink,
                     const ShootingOptions& options);

inline const std::string kLassoObjectiveKey = "lasso.objective";
inline const std::string kLassoKktKey = "lasso.kkt";

struct LassoOptions {
  EngineConfig config;
  double epsilon = 1e-10;
  /// Generated schedules run one engine invocation per pass and stop at
  /// this KKT residual or after max_sweeps passes.
  double kkt_tolerance = 1e-6;
  std::size_t max_sweeps = 100000;
};

struct LassoResult {
  std::vector<double> w;
  double objective = 0.0;
  double kkt = 0.0;
  std::size_t updates = 0;
  double wall_time_s = 0.0;
  /// Objective after each pass (generated schedules only).
  std::vector<double> objective_trace;
  std::size_t sweeps = 0;
};

/// Shooting on the engine. Objective and KKT residual come from syncs.
LassoResult solve_lasso(const LassoProblem& problem, const LassoOptions& options);

double soft_threshold(double c, double lambda);

/// Objective recomputed from scratch.
double lasso_objective(const LassoProblem& problem, const std::vector<double>& w);

/// max_i kappa_i, with kappa_i = |g_i + lambda sign(w_i)| for w_i != 0
/// and max(0, |g_i| - lambda) otherwise, where g = grad of the RSS.
double lasso_kkt(const LassoProblem& problem, const std::vector<double>& w);

}  // namespace scopeflow

#endif
