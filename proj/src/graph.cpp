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

#include "scopeflow/graph.hpp"

#include <algorithm>
#include <string>

namespace scopeflow {

GraphStructure::GraphStructure(const GraphStructure& other)
    : edges_(other.edges_), out_(other.out_), in_(other.in_), nbrs_(other.nbrs_) {}

GraphStructure& GraphStructure::operator=(const GraphStructure& other) {
  check_mutable();
  edges_ = other.edges_;
  out_ = other.out_;
  in_ = other.in_;
  nbrs_ = other.nbrs_;
  return *this;
}

void GraphStructure::check_mutable() const {
  if (frozen()) {
    throw StructureError(StructureError::Kind::Frozen,
                         "graph structure is frozen while an engine is running");
  }
}

void GraphStructure::check_vertex(VertexId v) const {
  if (!contains(v)) {
    throw StructureError(StructureError::Kind::UnknownVertex,
                         "unknown vertex " + std::to_string(v));
  }
}

void GraphStructure::reserve(std::size_t vertices, std::size_t edges) {
  edges_.reserve(edges);
  out_.reserve(vertices);
  in_.reserve(vertices);
  nbrs_.reserve(vertices);
}

VertexId GraphStructure::add_vertex() {
  check_mutable();
  auto v = static_cast<VertexId>(out_.size());
  out_.emplace_back();
  in_.emplace_back();
  nbrs_.emplace_back();
  return v;
}

EdgeId GraphStructure::add_edge(VertexId source, VertexId target) {
  check_mutable();
  check_vertex(source);
  check_vertex(target);
  if (source == target) {
    throw StructureError(StructureError::Kind::SelfLoop,
                         "self loop on vertex " + std::to_string(source));
  }
  auto& outs = out_[source];
  auto out_pos = std::lower_bound(outs.begin(), outs.end(), target,
                                  [&](EdgeId e, VertexId t) { return edges_[e].target < t; });
  if (out_pos != outs.end() && edges_[*out_pos].target == target) {
    throw StructureError(StructureError::Kind::DuplicateEdge,
                         "duplicate edge " + std::to_string(source) + "->" +
                             std::to_string(target));
  }
  auto e = static_cast<EdgeId>(edges_.size());
  edges_.push_back({source, target});
  outs.insert(out_pos, e);

  auto& ins = in_[target];
  auto in_pos = std::lower_bound(ins.begin(), ins.end(), source,
                                 [&](EdgeId x, VertexId s) { return edges_[x].source < s; });
  ins.insert(in_pos, e);

  auto link = [](std::vector<VertexId>& list, VertexId u) {
    auto it = std::lower_bound(list.begin(), list.end(), u);
    if (it == list.end() || *it != u) list.insert(it, u);
  };
  link(nbrs_[source], target);
  link(nbrs_[target], source);
  return e;
}

std::optional<EdgeId> GraphStructure::find_edge(VertexId source, VertexId target) const {
  if (!contains(source) || !contains(target)) return std::nullopt;
  const auto& outs = out_[source];
  auto it = std::lower_bound(outs.begin(), outs.end(), target,
                             [&](EdgeId e, VertexId t) { return edges_[e].target < t; });
  if (it != outs.end() && edges_[*it].target == target) return *it;
  return std::nullopt;
}

ScopeDescriptor GraphStructure::scope_of(VertexId v) const {
  check_vertex(v);
  ScopeDescriptor s;
  s.center = v;
  s.in_edges.assign(in_[v].begin(), in_[v].end());
  s.out_edges.assign(out_[v].begin(), out_[v].end());
  s.neighbors.assign(nbrs_[v].begin(), nbrs_[v].end());
  return s;
}

}  // namespace scopeflow
