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


#include "scopeflow/algorithms/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace scopeflow {

namespace {

struct Coupling {
  double lambda;
  std::uint32_t neighbor_sample;
};

// The single sampling kernel behind both the engine update and the
// sequential reference, so the two consume identical draws.
void draw(GibbsVertex& me, VertexId v, const std::vector<Coupling>& couplings) {
  const std::size_t k = me.potential.size();
  std::vector<double> p(me.potential);
  for (const auto& c : couplings) {
    const auto xu = static_cast<double>(c.neighbor_sample);
    for (std::size_t l = 0; l < k; ++l) {
      p[l] *= std::exp(-c.lambda * std::abs(static_cast<double>(l) - xu));
    }
  }
  double total = 0.0;
  for (double x : p) total += x;
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw NumericalError("degenerate potential: zero conditional mass at vertex " +
                         std::to_string(v));
  }
  double u = me.rng.next_unit() * total;
  std::size_t l = 0;
  while (l + 1 < k && (u >= p[l] || p[l] == 0.0)) {
    u -= p[l];
    ++l;
  }
  // Floating residue can leave u past the last positive entry.
  while (p[l] == 0.0 && l > 0) --l;
  me.sample = static_cast<std::uint32_t>(l);
  me.counts[l] += 1;
  if (me.record_trace) me.trace.push_back(me.sample);
}

}  // namespace

GibbsGraph build_gibbs_graph(const PairwiseMrf& mrf, std::uint64_t seed, bool record_trace) {
  mrf.validate();
  GibbsGraph g;
  g.reserve(mrf.num_vertices(), mrf.edges.size());
  for (std::size_t v = 0; v < mrf.num_vertices(); ++v) {
    GibbsVertex d;
    d.potential = mrf.node_potentials[v];
    d.counts.assign(mrf.labels, 0);
    d.rng = CounterRng(seed, v);
    d.record_trace = record_trace;
    g.add_vertex(std::move(d));
  }
  for (const auto& e : mrf.edges) g.add_edge(e.u, e.v, GibbsEdge{mrf.lambda[e.axis]});
  return g;
}

void greedy_color_update(Scope<GibbsGraph>& scope, const SharedDataTable&, TaskSink&) {
  std::vector<bool> used(scope.neighbors().size() + 1, false);
  for (VertexId u : scope.neighbors()) {
    const int c = scope.neighbor_data(u).color;
    if (c >= 0 && static_cast<std::size_t>(c) < used.size()) used[c] = true;
  }
  int c = 0;
  while (used[c]) ++c;
  scope.vertex_data().color = c;
}

RunStats color_graph(GibbsGraph& graph, SharedDataTable& table, EngineConfig config) {
  Engine<GibbsGraph> engine(graph, table, config);
  const FunctionId f = engine.add_function(greedy_color_update);
  if (!is_generated(config.scheduler.kind)) engine.add_task_to_all(f);
  return engine.run();
}

bool is_proper_coloring(const GibbsGraph& graph) {
  const GraphStructure& g = graph.structure();
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    if (graph.vertex_data(v).color < 0) return false;
  }
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (graph.vertex_data(g.source(e)).color == graph.vertex_data(g.target(e)).color) return false;
  }
  return true;
}

std::size_t num_colors(const GibbsGraph& graph) { return color_histogram(graph).size(); }

std::vector<std::size_t> color_histogram(const GibbsGraph& graph) {
  std::vector<std::size_t> h;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    const int c = graph.vertex_data(v).color;
    if (c < 0) continue;
    if (static_cast<std::size_t>(c) >= h.size()) h.resize(c + 1, 0);
    ++h[c];
  }
  return h;
}

std::vector<ScheduleSet> build_color_schedule(const GibbsGraph& graph, FunctionId f,
                                              std::size_t sweeps) {
  if (!is_proper_coloring(graph)) {
    throw ContractViolation("color schedule needs a proper coloring of every vertex");
  }
  std::vector<ScheduleSet> one(num_colors(graph));
  for (auto& s : one) s.function = f;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    one[graph.vertex_data(v).color].vertices.push_back(v);
  }
  std::vector<ScheduleSet> sets;
  sets.reserve(one.size() * sweeps);
  for (std::size_t s = 0; s < sweeps; ++s) sets.insert(sets.end(), one.begin(), one.end());
  return sets;
}

void gibbs_update(Scope<GibbsGraph>& scope, const SharedDataTable&, TaskSink&) {
  std::vector<Coupling> couplings;
  for (EdgeId e : scope.in_edges()) {
    couplings.push_back({scope.edge_data(e).lambda, scope.neighbor_data(scope.source(e)).sample});
  }
  for (EdgeId e : scope.out_edges()) {
    couplings.push_back({scope.edge_data(e).lambda, scope.neighbor_data(scope.target(e)).sample});
  }
  draw(scope.vertex_data(), scope.vertex(), couplings);
}

RunStats run_chromatic_gibbs(GibbsGraph& graph, SharedDataTable& table, std::size_t workers,
                             std::size_t sweeps) {
  EngineConfig config;
  config.workers = workers;
  config.model = ConsistencyModel::Vertex;
  config.scheduler.kind = SchedulerKind::Set;
  Engine<GibbsGraph> engine(graph, table, config);
  const FunctionId f = engine.add_function(gibbs_update);
  const auto sets = build_color_schedule(graph, f, sweeps);
  engine.set_schedule(sets, ConsistencyModel::Edge);
  return engine.run();
}

void sequential_color_sweeps(GibbsGraph& graph, std::size_t sweeps) {
  const auto sets = build_color_schedule(graph, 0, sweeps);
  for (const auto& s : sets) {
    for (VertexId v : s.vertices) {
      const GraphStructure& g = graph.structure();
      std::vector<Coupling> couplings;
      for (EdgeId e : g.in_edges(v)) {
        couplings.push_back({graph.edge_data(e).lambda, graph.vertex_data(g.source(e)).sample});
      }
      for (EdgeId e : g.out_edges(v)) {
        couplings.push_back({graph.edge_data(e).lambda, graph.vertex_data(g.target(e)).sample});
      }
      draw(graph.vertex_data(v), v, couplings);
    }
  }
}

std::vector<std::vector<double>> empirical_marginals(const GibbsGraph& graph) {
  std::vector<std::vector<double>> out;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    const auto& c = graph.vertex_data(v).counts;
    double total = 0.0;
    for (auto x : c) total += static_cast<double>(x);
    std::vector<double> m(c.size(), 0.0);
    if (total > 0) {
      for (std::size_t l = 0; l < c.size(); ++l) m[l] = static_cast<double>(c[l]) / total;
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace scopeflow
