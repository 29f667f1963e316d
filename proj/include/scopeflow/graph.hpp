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

#ifndef SCOPEFLOW_GRAPH_HPP
#define SCOPEFLOW_GRAPH_HPP

#include <atomic>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "scopeflow/types.hpp"

namespace scopeflow {

/**
 * The neighborhood of a vertex: the vertex itself, its inbound and
 * outbound edges and the deduplicated set of adjacent vertices.
 */
struct ScopeDescriptor {
  VertexId center = kInvalidVertex;
  std::vector<EdgeId> in_edges;
  std::vector<EdgeId> out_edges;
  std::vector<VertexId> neighbors;
};

/**
 * \brief Structure of a directed data graph.
 *
 * Vertices and edges are identified by dense indices. For every vertex
 * the out-edges are kept sorted by target, the in-edges by source, and
 * the neighbor set (sources of in-edges and targets of out-edges) is kept
 * sorted and deduplicated. Self loops and parallel edges are rejected.
 *
 * While frozen (an engine is running over the graph) every structural
 * mutation throws StructureError::Kind::Frozen.
 */
class GraphStructure {
 public:
  struct Edge {
    VertexId source;
    VertexId target;
  };

  GraphStructure() = default;
  GraphStructure(const GraphStructure& other);
  GraphStructure& operator=(const GraphStructure& other);

  VertexId add_vertex();
  EdgeId add_edge(VertexId source, VertexId target);
  void reserve(std::size_t vertices, std::size_t edges);

  std::size_t num_vertices() const { return out_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  VertexId source(EdgeId e) const { return edges_[e].source; }
  VertexId target(EdgeId e) const { return edges_[e].target; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const EdgeId> out_edges(VertexId v) const { return out_[v]; }
  std::span<const EdgeId> in_edges(VertexId v) const { return in_[v]; }
  std::span<const VertexId> neighbors(VertexId v) const { return nbrs_[v]; }
  std::size_t degree(VertexId v) const { return in_[v].size() + out_[v].size(); }

  /// Binary search in the out-list of `source`.
  std::optional<EdgeId> find_edge(VertexId source, VertexId target) const;

  /// Throws StructureError(UnknownVertex) when `v` is out of range.
  ScopeDescriptor scope_of(VertexId v) const;

  bool contains(VertexId v) const { return v < num_vertices(); }
  void check_vertex(VertexId v) const;

  /// Freezing nests: the structure is mutable again once every freeze is
  /// matched by a thaw.
  void freeze() const { frozen_.fetch_add(1); }
  void thaw() const { frozen_.fetch_sub(1); }
  bool frozen() const { return frozen_.load() > 0; }

 private:
  void check_mutable() const;

  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  std::vector<std::vector<VertexId>> nbrs_;
  mutable std::atomic<int> frozen_{0};
};

/// RAII freeze of a graph structure for the lifetime of an engine run.
class FreezeGuard {
 public:
  explicit FreezeGuard(const GraphStructure& g) : g_(&g) { g_->freeze(); }
  ~FreezeGuard() { g_->thaw(); }
  FreezeGuard(const FreezeGuard&) = delete;
  FreezeGuard& operator=(const FreezeGuard&) = delete;

 private:
  const GraphStructure* g_;
};

/**
 * \brief A directed graph whose vertices and edges carry user data blocks.
 *
 * The engine never interprets VertexData or EdgeData; algorithms define
 * their own layouts.
 */
template <typename VertexData, typename EdgeData>
class DataGraph {
 public:
  using vertex_data_type = VertexData;
  using edge_data_type = EdgeData;

  VertexId add_vertex(VertexData data = VertexData()) {
    VertexId v = structure_.add_vertex();
    vertex_data_.push_back(std::move(data));
    return v;
  }

  EdgeId add_edge(VertexId source, VertexId target, EdgeData data = EdgeData()) {
    EdgeId e = structure_.add_edge(source, target);
    edge_data_.push_back(std::move(data));
    return e;
  }

  void reserve(std::size_t vertices, std::size_t edges) {
    structure_.reserve(vertices, edges);
    vertex_data_.reserve(vertices);
    edge_data_.reserve(edges);
  }

  std::size_t num_vertices() const { return structure_.num_vertices(); }
  std::size_t num_edges() const { return structure_.num_edges(); }

  VertexData& vertex_data(VertexId v) { return vertex_data_[v]; }
  const VertexData& vertex_data(VertexId v) const { return vertex_data_[v]; }
  EdgeData& edge_data(EdgeId e) { return edge_data_[e]; }
  const EdgeData& edge_data(EdgeId e) const { return edge_data_[e]; }

  const GraphStructure& structure() const { return structure_; }
  ScopeDescriptor scope_of(VertexId v) const { return structure_.scope_of(v); }

 private:
  GraphStructure structure_;
  std::vector<VertexData> vertex_data_;
  std::vector<EdgeData> edge_data_;
};

}  // namespace scopeflow

#endif
