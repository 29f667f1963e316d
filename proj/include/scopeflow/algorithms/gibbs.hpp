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


#ifndef SCOPEFLOW_ALGORITHMS_GIBBS_HPP
#define SCOPEFLOW_ALGORITHMS_GIBBS_HPP

#include <cstdint>
#include <vector>

#include "scopeflow/algorithms/mrf.hpp"
#include "scopeflow/engine.hpp"
#include "scopeflow/rng.hpp"

namespace scopeflow {

inline constexpr int kUncolored = -1;

struct GibbsVertex {
  std::vector<double> potential;
  int color = kUncolored;
  std::uint32_t sample = 0;
  std::vector<std::uint64_t> counts;
  CounterRng rng;
  /// One entry per draw when tracing is enabled.
  std::vector<std::uint32_t> trace;
  bool record_trace = false;
};

struct GibbsEdge {
  double lambda = 1.0;
};

using GibbsGraph = DataGraph<GibbsVertex, GibbsEdge>;

/// One edge per MRF edge (u -> v) carrying lambda[axis]. Vertex v draws
/// from CounterRng(seed, v); every sample starts at label 0.
GibbsGraph build_gibbs_graph(const PairwiseMrf& mrf, std::uint64_t seed, bool record_trace = false);

/// Sets the vertex to the smallest color no neighbor currently holds.
/// Needs Edge consistency for a proper result under parallel execution.
void greedy_color_update(Scope<GibbsGraph>& scope, const SharedDataTable& table, TaskSink& sink);

/// Colors every vertex; the engine config's scheduler must be dynamic or
/// RoundRobin with one sweep.
RunStats color_graph(GibbsGraph& graph, SharedDataTable& table, EngineConfig config);

bool is_proper_coloring(const GibbsGraph& graph);
std::size_t num_colors(const GibbsGraph& graph);
/// histogram[c] = number of vertices with color c.
std::vector<std::size_t> color_histogram(const GibbsGraph& graph);

/// Sets S_1..S_C of vertices by color, repeated `sweeps` times, each with
/// update function `f`. Throws ContractViolation on an uncolored vertex
/// or on adjacent vertices sharing a color.
std::vector<ScheduleSet> build_color_schedule(const GibbsGraph& graph, FunctionId f,
                                              std::size_t sweeps);

/**
 * One draw of x_v from P(x_v | x_N(v)) proportional to
 * phi_v(x_v) * prod_u exp(-lambda_uv |x_v - x_u|), using vertex v's stream.
 * Throws NumericalError on zero conditional mass.
 */
void gibbs_update(Scope<GibbsGraph>& scope, const SharedDataTable& table, TaskSink& sink);

/// Chromatic sampler: colors must be present. Runs the color schedule on
/// the set scheduler, locking with Vertex consistency; the plan is
/// compiled under Edge consistency so neighbors keep their sweep order.
RunStats run_chromatic_gibbs(GibbsGraph& graph, SharedDataTable& table, std::size_t workers,
                             std::size_t sweeps);

/// Single-threaded color-by-color sweeps without the engine.
void sequential_color_sweeps(GibbsGraph& graph, std::size_t sweeps);

/// counts normalized per vertex.
std::vector<std::vector<double>> empirical_marginals(const GibbsGraph& graph);

}  // namespace scopeflow

#endif
