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


#include "scopeflow/algorithms/coem.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace scopeflow {

CoemInstance make_random_coem(std::size_t noun_phrases, std::size_t contexts, std::size_t classes,
                              double mean_degree, double seed_fraction, std::uint64_t seed) {
  if (noun_phrases == 0 || contexts == 0) throw ContractViolation("CoEM needs both vertex kinds");
  CoemInstance inst{classes, noun_phrases, contexts, {}, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::vector<std::vector<bool>> linked(noun_phrases, std::vector<bool>(contexts, false));
  auto link = [&](std::size_t np, std::size_t ct) {
    if (linked[np][ct]) return;
    linked[np][ct] = true;
    inst.links.push_back(CoemLink{static_cast<VertexId>(np),
                                  static_cast<VertexId>(noun_phrases + ct), weight(rng)});
  };
  for (std::size_t np = 0; np < noun_phrases; ++np) link(np, rng() % contexts);
  for (std::size_t ct = 0; ct < contexts; ++ct) link(rng() % noun_phrases, ct);
  const double p = std::min(1.0, mean_degree / static_cast<double>(contexts));
  std::bernoulli_distribution coin(p);
  for (std::size_t np = 0; np < noun_phrases; ++np) {
    for (std::size_t ct = 0; ct < contexts; ++ct) {
      if (coin(rng)) link(np, ct);
    }
  }
  const std::size_t n = noun_phrases + contexts;
  std::vector<VertexId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<VertexId>(i);
  std::shuffle(order.begin(), order.end(), rng);
  const auto seeds = std::max<std::size_t>(
      classes, static_cast<std::size_t>(std::lround(seed_fraction * static_cast<double>(n))));
  for (std::size_t i = 0; i < seeds && i < n; ++i) {
    inst.seeds.push_back(CoemSeed{order[i], i % classes});
  }
  return inst;
}

CoemGraph build_coem_graph(const CoemInstance& instance) {
  CoemGraph g;
  const std::size_t n = instance.noun_phrases + instance.contexts;
  const double u = 1.0 / static_cast<double>(instance.classes);
  g.reserve(n, instance.links.size());
  for (std::size_t v = 0; v < n; ++v) {
    CoemVertex d;
    d.belief.assign(instance.classes, u);
    d.kind = v < instance.noun_phrases ? CoemKind::NounPhrase : CoemKind::Context;
    g.add_vertex(std::move(d));
  }
  for (const auto& s : instance.seeds) {
    auto& d = g.vertex_data(s.vertex);
    if (s.label >= instance.classes) throw ContractViolation("seed label out of range");
    d.is_seed = true;
    d.belief.assign(instance.classes, 0.0);
    d.belief[s.label] = 1.0;
  }
  for (const auto& l : instance.links) {
    if (l.noun_phrase >= instance.noun_phrases || l.context < instance.noun_phrases) {
      throw ContractViolation("CoEM links join a noun phrase to a context");
    }
    g.add_edge(l.noun_phrase, l.context, CoemEdge{l.weight});
  }
  return g;
}

void coem_update(Scope<CoemGraph>& scope, const SharedDataTable&, TaskSink& sink,
                 const CoemOptions& options) {
  CoemVertex& me = scope.vertex_data();
  if (me.is_seed) return;
  std::vector<double> next(me.belief.size(), 0.0);
  double total = 0.0;
  auto accumulate = [&](EdgeId e, VertexId u) {
    const double c = scope.edge_data(e).weight;
    const auto& b = scope.neighbor_data(u).belief;
    for (std::size_t k = 0; k < next.size(); ++k) next[k] += c * b[k];
    total += c;
  };
  for (EdgeId e : scope.in_edges()) accumulate(e, scope.source(e));
  for (EdgeId e : scope.out_edges()) accumulate(e, scope.target(e));
  if (total <= 0.0) return;
  double change = 0.0;
  for (std::size_t k = 0; k < next.size(); ++k) {
    next[k] /= total;
    change += std::abs(next[k] - me.belief[k]);
  }
  me.belief = std::move(next);
  if (change > options.threshold) {
    for (VertexId u : scope.neighbors()) sink.add(u, change);
  }
}

RunStats run_coem(CoemGraph& graph, SharedDataTable& table, const EngineConfig& config,
                  const CoemOptions& options) {
  Engine<CoemGraph> engine(graph, table, config);
  const FunctionId f = engine.add_function(
      [options](Scope<CoemGraph>& s, const SharedDataTable& t, TaskSink& sink) {
        coem_update(s, t, sink, options);
      });
  if (!is_generated(config.scheduler.kind)) {
    for (VertexId v = 0; v < graph.num_vertices(); ++v) {
      if (!graph.vertex_data(v).is_seed) engine.add_task(v, f, 1.0);
    }
  }
  return engine.run();
}

std::vector<VertexId> coem_isolated(const CoemGraph& graph) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    if (!graph.vertex_data(v).is_seed && graph.structure().degree(v) == 0) out.push_back(v);
  }
  return out;
}

std::vector<std::vector<double>> coem_beliefs(const CoemGraph& graph) {
  std::vector<std::vector<double>> out;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) out.push_back(graph.vertex_data(v).belief);
  return out;
}

}  // namespace scopeflow
