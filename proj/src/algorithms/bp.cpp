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


#include "scopeflow/algorithms/bp.hpp"

#include <cmath>

namespace scopeflow {

namespace {

// Node potential times every incoming message except the one from `skip`.
template <typename Get>
std::vector<double> cavity(const GraphStructure& g, VertexId v, const std::vector<double>& phi,
                           VertexId skip, Get message) {
  std::vector<double> c = phi;
  for (EdgeId e : g.in_edges(v)) {
    if (g.source(e) == skip) continue;
    const std::vector<double>& m = message(e);
    for (std::size_t x = 0; x < c.size(); ++x) c[x] *= m[x];
  }
  normalize(c, "bp cavity");
  return c;
}

std::vector<double> propagate(const std::vector<double>& cav, double lambda) {
  const std::size_t k = cav.size();
  std::vector<double> out(k, 0.0);
  for (std::size_t xt = 0; xt < k; ++xt) {
    double s = 0.0;
    for (std::size_t xv = 0; xv < k; ++xv) s += laplace_potential(lambda, xv, xt) * cav[xv];
    out[xt] = s;
  }
  normalize(out, "bp message");
  return out;
}

double l1(const std::vector<double>& a, const std::vector<double>& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r += std::abs(a[i] - b[i]);
  return r;
}

}  // namespace

BpGraph build_bp_graph(const PairwiseMrf& mrf) {
  mrf.validate();
  BpGraph g;
  const std::size_t k = mrf.labels;
  g.reserve(mrf.num_vertices(), 2 * mrf.edges.size());
  for (const auto& phi : mrf.node_potentials) {
    BpVertex v;
    v.potential = phi;
    v.belief.assign(k, 1.0 / static_cast<double>(k));
    g.add_vertex(std::move(v));
  }
  const std::vector<double> uniform(k, 1.0 / static_cast<double>(k));
  for (const auto& e : mrf.edges) {
    g.add_edge(e.u, e.v, BpEdge{uniform, uniform, e.axis});
    g.add_edge(e.v, e.u, BpEdge{uniform, uniform, e.axis});
  }
  return g;
}

void bp_update(Scope<BpGraph>& scope, const SharedDataTable& table, TaskSink& sink,
               const BpOptions& options) {
  auto lambda = table.get_shared<std::vector<double>>(kBpLambdaKey);
  BpVertex& me = scope.vertex_data();
  const VertexId v = scope.vertex();
  const GraphStructure& g = scope.structure();
  auto message = [&](EdgeId e) -> const std::vector<double>& { return scope.edge_data(e).message; };

  me.belief = cavity(g, v, me.potential, kInvalidVertex, message);

  double worst = 0.0;
  for (EdgeId e : scope.out_edges()) {
    const VertexId t = scope.target(e);
    BpEdge& out = scope.edge_data(e);
    std::vector<double> next = propagate(cavity(g, v, me.potential, t, message),
                                         (*lambda)[out.axis]);
    out.old_message = std::move(out.message);
    out.message = std::move(next);
    const double residual = l1(out.message, out.old_message);
    worst = std::max(worst, residual);
    if (residual > options.bound) sink.add(t, residual);
  }
  if (options.keep_alive) sink.add(v, worst);
}

Engine<BpGraph>::update_function make_bp_update(BpOptions options) {
  return [options](Scope<BpGraph>& scope, const SharedDataTable& table, TaskSink& sink) {
    bp_update(scope, table, sink, options);
  };
}

RunStats run_bp(BpGraph& graph, SharedDataTable& table, const EngineConfig& config,
                const BpOptions& options) {
  Engine<BpGraph> engine(graph, table, config);
  const FunctionId f = engine.add_function(make_bp_update(options));
  if (!is_generated(config.scheduler.kind)) engine.add_task_to_all(f, 1.0);
  return engine.run();
}

void refresh_beliefs(BpGraph& graph) {
  const GraphStructure& g = graph.structure();
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    auto& d = graph.vertex_data(v);
    d.belief = cavity(g, v, d.potential, kInvalidVertex,
                      [&](EdgeId e) -> const std::vector<double>& { return graph.edge_data(e).message; });
  }
}

double bp_max_residual(const BpGraph& graph, const std::vector<double>& lambda) {
  const GraphStructure& g = graph.structure();
  auto message = [&](EdgeId e) -> const std::vector<double>& { return graph.edge_data(e).message; };
  double worst = 0.0;
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    const VertexId v = g.source(e);
    const BpEdge& d = graph.edge_data(e);
    auto next = propagate(cavity(g, v, graph.vertex_data(v).potential, g.target(e), message),
                          lambda.at(d.axis));
    worst = std::max(worst, l1(next, d.message));
  }
  return worst;
}

std::vector<std::vector<double>> bp_beliefs(const BpGraph& graph) {
  std::vector<std::vector<double>> out;
  out.reserve(graph.num_vertices());
  for (VertexId v = 0; v < graph.num_vertices(); ++v) out.push_back(graph.vertex_data(v).belief);
  return out;
}

std::vector<double> pairwise_belief(const std::vector<double>& bu, const std::vector<double>& bv,
                                    const std::vector<double>& m_uv,
                                    const std::vector<double>* m_vu, double lambda) {
  // b_u / m_{v->u} and b_v / m_{u->v}: endpoint beliefs with the edge's own
  // messages divided out. Messages are strictly positive for finite lambda.
  const std::size_t k = bu.size();
  std::vector<double> out(k * k);
  double sum = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    const double cu = m_vu ? bu[a] / (*m_vu)[a] : bu[a];
    for (std::size_t b = 0; b < k; ++b) {
      out[a * k + b] = laplace_potential(lambda, a, b) * cu * (bv[b] / m_uv[b]);
      sum += out[a * k + b];
    }
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw NumericalError("degenerate potential: zero normalizer in bp pairwise belief");
  }
  for (double& x : out) x /= sum;
  return out;
}

std::vector<double> bp_pairwise_belief(const BpGraph& graph, EdgeId e,
                                       const std::vector<double>& lambda) {
  const GraphStructure& g = graph.structure();
  const VertexId u = g.source(e);
  const VertexId v = g.target(e);
  const auto reverse = g.find_edge(v, u);
  const BpEdge& d = graph.edge_data(e);
  return pairwise_belief(graph.vertex_data(u).belief, graph.vertex_data(v).belief, d.message,
                         reverse ? &graph.edge_data(*reverse).message : nullptr,
                         lambda.at(d.axis));
}

}  // namespace scopeflow
