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


#include "scopeflow/algorithms/gabp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace scopeflow {

namespace {

struct SystemEntries {
  std::vector<double> diagonal;
  std::map<std::pair<std::size_t, std::size_t>, double> off;
};

SystemEntries split_system(const SparseMatrix& A, const std::vector<double>& b) {
  A.validate();
  if (A.rows != A.cols) throw ContractViolation("GaBP needs a square matrix");
  if (b.size() != A.rows) throw ContractViolation("right-hand side size does not match A");
  SystemEntries s;
  s.diagonal.assign(A.rows, 0.0);
  double scale = 0.0;
  for (const auto& t : A.entries) {
    scale = std::max(scale, std::abs(t.value));
    if (t.row == t.col) {
      s.diagonal[t.row] = t.value;
    } else if (t.value != 0.0) {
      s.off[{t.row, t.col}] = t.value;
    }
  }
  for (const auto& [ij, v] : s.off) {
    auto it = s.off.find({ij.second, ij.first});
    if (it == s.off.end() || std::abs(it->second - v) > 1e-12 * std::max(scale, 1.0)) {
      throw ContractViolation("GaBP needs a symmetric matrix; entry (" + std::to_string(ij.first) +
                              ", " + std::to_string(ij.second) + ") has no mirror");
    }
  }
  return s;
}

}  // namespace

GabpGraph build_gabp_graph(const SparseMatrix& A, const std::vector<double>& b) {
  SystemEntries s = split_system(A, b);
  GabpGraph g;
  g.reserve(A.rows, s.off.size());
  for (std::size_t i = 0; i < A.rows; ++i) g.add_vertex(GabpVertex{s.diagonal[i], b[i]});
  for (const auto& [ij, v] : s.off) {
    g.add_edge(static_cast<VertexId>(ij.first), static_cast<VertexId>(ij.second), GabpEdge{v, 0.0, 0.0});
  }
  return g;
}

void set_gabp_system(GabpGraph& graph, const SparseMatrix& A, const std::vector<double>& b) {
  SystemEntries s = split_system(A, b);
  if (A.rows != graph.num_vertices()) throw ContractViolation("system size changed");
  for (VertexId i = 0; i < graph.num_vertices(); ++i) {
    graph.vertex_data(i).a_ii = s.diagonal[i];
    graph.vertex_data(i).b = b[i];
  }
  if (s.off.size() != graph.num_edges()) throw ContractViolation("system sparsity pattern changed");
  const auto& st = graph.structure();
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    auto it = s.off.find({st.source(e), st.target(e)});
    if (it == s.off.end()) throw ContractViolation("system sparsity pattern changed");
    graph.edge_data(e).a_ij = it->second;
  }
}

void reset_gabp_messages(GabpGraph& graph) {
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    graph.edge_data(e).precision = 0.0;
    graph.edge_data(e).shift = 0.0;
  }
}

void gabp_update(Scope<GabpGraph>& scope, const SharedDataTable&, TaskSink& sink,
                 const GabpOptions& options) {
  GabpVertex& me = scope.vertex_data();
  double p = me.a_ii;
  double h = me.b;
  for (EdgeId e : scope.in_edges()) {
    p += scope.edge_data(e).precision;
    h += scope.edge_data(e).shift;
  }
  if (!(p > 0.0)) {
    throw NumericalError("GaBP diverged: posterior precision " + std::to_string(p) + " at vertex " +
                         std::to_string(scope.vertex()) + " (system likely not walk-summable)");
  }
  me.precision = p;
  me.mean = h / p;
  for (EdgeId e : scope.out_edges()) {
    const VertexId j = scope.target(e);
    GabpEdge& out = scope.edge_data(e);
    double p_back = 0.0, h_back = 0.0;
    if (auto back = scope.find_edge(j, scope.vertex())) {
      p_back = scope.edge_data(*back).precision;
      h_back = scope.edge_data(*back).shift;
    }
    const double cavity_p = p - p_back;
    if (!(cavity_p > 0.0)) {
      throw NumericalError("GaBP diverged: cavity precision " + std::to_string(cavity_p) +
                           " on edge " + std::to_string(scope.vertex()) + "->" + std::to_string(j) +
                           " (system likely not walk-summable)");
    }
    const double next_p = -out.a_ij * out.a_ij / cavity_p;
    const double next_h = -out.a_ij * (h - h_back) / cavity_p;
    const double residual = std::abs(next_p - out.precision) + std::abs(next_h - out.shift);
    out.precision = next_p;
    out.shift = next_h;
    if (residual > options.bound) sink.add(j, residual);
  }
}

Engine<GabpGraph>::update_function make_gabp_update(GabpOptions options) {
  return [options](Scope<GabpGraph>& s, const SharedDataTable& t, TaskSink& sink) {
    gabp_update(s, t, sink, options);
  };
}

RunStats run_gabp(GabpGraph& graph, SharedDataTable& table, const EngineConfig& config,
                  const GabpOptions& options) {
  Engine<GabpGraph> engine(graph, table, config);
  const FunctionId f = engine.add_function(make_gabp_update(options));
  if (!is_generated(config.scheduler.kind)) engine.add_task_to_all(f, 1.0);
  return engine.run();
}

std::vector<double> gabp_solution(const GabpGraph& graph) {
  std::vector<double> x(graph.num_vertices());
  const auto& st = graph.structure();
  for (VertexId i = 0; i < graph.num_vertices(); ++i) {
    double p = graph.vertex_data(i).a_ii;
    double h = graph.vertex_data(i).b;
    for (EdgeId e : st.in_edges(i)) {
      p += graph.edge_data(e).precision;
      h += graph.edge_data(e).shift;
    }
    x[i] = h / p;
  }
  return x;
}

}  // namespace scopeflow
