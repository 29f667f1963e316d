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


#ifndef SCOPEFLOW_ALGORITHMS_BP_HPP
#define SCOPEFLOW_ALGORITHMS_BP_HPP

#include <string>
#include <vector>

#include "scopeflow/algorithms/mrf.hpp"
#include "scopeflow/engine.hpp"

namespace scopeflow {

struct BpVertex {
  std::vector<double> potential;
  std::vector<double> belief;
  double observation = 0.0;
  /// Per-axis smoothed observation used as a learning proxy.
  std::vector<double> proxy;
  /// Clean label kept by synthetic generators; -1 when unknown.
  double reference = -1.0;
};

struct BpEdge {
  std::vector<double> message;
  std::vector<double> old_message;
  std::uint8_t axis = 0;
};

using BpGraph = DataGraph<BpVertex, BpEdge>;

/// Shared table key holding the per-axis lambda vector (std::vector<double>).
inline const std::string kBpLambdaKey = "bp.lambda";

struct BpOptions {
  /// A message change above this L1 residual reschedules its target.
  double bound = 1e-5;
  /// Re-emit the updated vertex after every update, so inference keeps
  /// running while a concurrent sync changes lambda.
  bool keep_alive = false;
};

/// One directed edge per direction of every MRF edge; uniform messages.
BpGraph build_bp_graph(const PairwiseMrf& mrf);

/**
 * Recomputes b(x_v) from the node potential and all incoming messages,
 * then every outgoing message m_{v->t}. Emits (t, residual) for each
 * message whose L1 change exceeds the bound. Needs Edge consistency.
 */
void bp_update(Scope<BpGraph>& scope, const SharedDataTable& table, TaskSink& sink,
               const BpOptions& options);

Engine<BpGraph>::update_function make_bp_update(BpOptions options);

/// Runs BP with one task per vertex (dynamic kinds) or the configured
/// sweeps (generated kinds). T[kBpLambdaKey] must be set.
RunStats run_bp(BpGraph& graph, SharedDataTable& table, const EngineConfig& config,
                const BpOptions& options);

/// Recomputes every belief from the current messages.
void refresh_beliefs(BpGraph& graph);

/// Largest L1 change any single message would see if recomputed now.
double bp_max_residual(const BpGraph& graph, const std::vector<double>& lambda);

/// Belief of each vertex, indexed by VertexId.
std::vector<std::vector<double>> bp_beliefs(const BpGraph& graph);

/// Pairwise belief over (x_u, x_v) of an edge given the endpoint beliefs
/// and the two messages across it (m_vu may be null for a one-way edge).
std::vector<double> pairwise_belief(const std::vector<double>& bu, const std::vector<double>& bv,
                                    const std::vector<double>& m_uv,
                                    const std::vector<double>* m_vu, double lambda);

/// Pairwise belief over (x_u, x_v) for edge u->v, from the endpoint beliefs
/// with the connecting messages divided out. Row-major K x K, sums to 1.
std::vector<double> bp_pairwise_belief(const BpGraph& graph, EdgeId e,
                                       const std::vector<double>& lambda);

}  // namespace scopeflow

#endif
