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


#ifndef SCOPEFLOW_ALGORITHMS_GABP_HPP
#define SCOPEFLOW_ALGORITHMS_GABP_HPP

#include <vector>

#include "scopeflow/engine.hpp"
#include "scopeflow/sparse.hpp"

namespace scopeflow {

struct GabpVertex {
  double a_ii = 0.0;
  double b = 0.0;
  /// Posterior estimates after the vertex's latest update.
  double mean = 0.0;
  double precision = 0.0;
  /// Outer-loop state for solvers that reuse the graph across runs.
  double iterate = 0.0;
  double gradient = 0.0;
};

/// Message i -> j in information form: precision P_{i->j} and
/// h_{i->j} = P_{i->j} * mu_{i->j}.
struct GabpEdge {
  double a_ij = 0.0;
  double precision = 0.0;
  double shift = 0.0;
};

using GabpGraph = DataGraph<GabpVertex, GabpEdge>;

/// A must be square and symmetric (within 1e-12 relative); one directed
/// edge per direction of every nonzero off-diagonal pair. Messages start
/// at zero.
GabpGraph build_gabp_graph(const SparseMatrix& A, const std::vector<double>& b);

/// Replaces A and b on an existing graph with the same sparsity pattern,
/// keeping the current messages.
void set_gabp_system(GabpGraph& graph, const SparseMatrix& A, const std::vector<double>& b);

/// Zeroes every message (a cold start).
void reset_gabp_messages(GabpGraph& graph);

struct GabpOptions {
  /// A message change |dP| + |dh| above this reschedules its target.
  double bound = 1e-10;
};

/**
 * P_i = A_ii + sum_k P_{k->i}, h_i = b_i + sum_k h_{k->i}; for each
 * neighbor j, P_{i\j} = P_i - P_{j->i}, P_{i->j} = -A_ij^2 / P_{i\j},
 * h_{i->j} = -A_ij (h_i - h_{j->i}) / P_{i\j}. Throws NumericalError when
 * a cavity precision is not positive.
 */
void gabp_update(Scope<GabpGraph>& scope, const SharedDataTable& table, TaskSink& sink,
                 const GabpOptions& options);

Engine<GabpGraph>::update_function make_gabp_update(GabpOptions options);

RunStats run_gabp(GabpGraph& graph, SharedDataTable& table, const EngineConfig& config,
                  const GabpOptions& options);

/// Current posterior means h_i / P_i recomputed from the messages.
std::vector<double> gabp_solution(const GabpGraph& graph);

}  // namespace scopeflow

#endif
