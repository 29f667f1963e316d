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


#ifndef SCOPEFLOW_ALGORITHMS_NEWTON_HPP
#define SCOPEFLOW_ALGORITHMS_NEWTON_HPP

#include <optional>
#include <string>
#include <vector>

#include "scopeflow/algorithms/gabp.hpp"
#include "scopeflow/sparse.hpp"

namespace scopeflow {

/**
 * min_w  |X w - y|^2 + lambda1 |w|_1 + lambda2 |w|^2
 *
 * X is observations x features.
 */
struct ElasticNetProblem {
  SparseMatrix X;
  std::vector<double> y;
  double lambda1 = 1.0;
  double lambda2 = 0.0;

  void validate() const;
};

/// Smallest lambda2 making X^T X + lambda2 I diagonally dominant, which
/// keeps every Newton system walk-summable for GaBP.
double dominance_ridge(const SparseMatrix& X);

inline const std::string kDualityGapKey = "newton.gap";

struct NewtonOptions {
  EngineConfig config{1, ConsistencyModel::Edge, {SchedulerKind::Priority}};
  GabpOptions gabp{};
  double gap_tolerance = 1e-8;
  std::size_t max_iterations = 100;
  /// Barrier parameter growth factor.
  double mu = 2.0;
  /// Backtracking line search: sufficient decrease and step shrink.
  double alpha = 0.01;
  double beta = 0.5;
  std::size_t max_line_search = 100;
  /// Keep the converged GaBP messages from one iteration to the next.
  bool warm_start = true;
};

struct NewtonResult {
  std::vector<double> w;
  double gap = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// Why the loop stopped: "gap", "max_iterations" or "line_search".
  std::string stop_reason;
  /// GaBP updates applied in each Newton iteration.
  std::vector<std::size_t> gabp_updates;
  /// Duality gap before each iteration and at exit.
  std::vector<double> gap_trace;
};

/**
 * Truncated-Newton interior point for the elastic net, posed as an l1
 * problem on the augmented design [X; sqrt(lambda2) I]. Each iteration
 * refreshes the data on one persistent GaBP graph, runs the engine to
 * solve the reduced Newton system, computes the duality gap with a sync
 * and takes a backtracking step. The loop stops before the first
 * iteration whose starting gap is below the tolerance.
 */
NewtonResult solve_elastic_net(const ElasticNetProblem& problem, const NewtonOptions& options);

/// Objective recomputed from scratch.
double elastic_net_objective(const ElasticNetProblem& problem, const std::vector<double>& w);

}  // namespace scopeflow

#endif
