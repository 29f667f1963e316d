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

#ifndef SCOPEFLOW_CONSISTENCY_HPP
#define SCOPEFLOW_CONSISTENCY_HPP

#include <atomic>
#include <cstddef>
#include <memory>
#include <shared_mutex>
#include <string_view>
#include <vector>

#include "scopeflow/graph.hpp"

namespace scopeflow {

/// Strength order: Full > Edge > Vertex.
enum class ConsistencyModel { Full, Edge, Vertex };

std::string_view to_string(ConsistencyModel model);
/// Accepts "full", "edge", "vertex"; throws ParseError otherwise.
ConsistencyModel parse_consistency_model(std::string_view name);

/**
 * Entities an update function on `center` excludes others from.
 *
 *   Vertex: {v}
 *   Edge:   {v} + adjacent edges
 *   Full:   {v} + adjacent edges + neighbors
 *
 * Both lists are sorted.
 */
struct ExclusionSet {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  bool intersects(const ExclusionSet& other) const;
  bool contains_vertex(VertexId v) const;
  bool contains_edge(EdgeId e) const;
  /// Every entity of *this is in `other`.
  bool subset_of(const ExclusionSet& other) const;
};

ExclusionSet exclusion_set(const GraphStructure& g, VertexId v, ConsistencyModel model);

class LockTable;

/**
 * Move-only handle on the locks covering one scope. Destruction releases;
 * an explicit second release() is a ContractViolation.
 */
class ScopeGuard {
 public:
  ScopeGuard() = default;
  ScopeGuard(ScopeGuard&& other) noexcept;
  ScopeGuard& operator=(ScopeGuard&& other) noexcept;
  ScopeGuard(const ScopeGuard&) = delete;
  ScopeGuard& operator=(const ScopeGuard&) = delete;
  ~ScopeGuard();

  void release();
  bool live() const { return table_ != nullptr; }
  VertexId vertex() const { return vertex_; }
  ConsistencyModel model() const { return model_; }

 private:
  friend class LockTable;
  ScopeGuard(LockTable* table, VertexId v, ConsistencyModel model)
      : table_(table), vertex_(v), model_(model) {}
  void release_unchecked() noexcept;

  LockTable* table_ = nullptr;
  VertexId vertex_ = kInvalidVertex;
  ConsistencyModel model_ = ConsistencyModel::Edge;
};

/**
 * \brief One reader/writer lock per vertex; realizes the three
 * consistency models with ordered acquisition.
 *
 * Lock plan per model, always taken in ascending VertexId order:
 *   Vertex: write v
 *   Edge:   write v, read every neighbor
 *   Full:   write v and every neighbor
 *
 * Edge data is protected through its endpoints: any writer of an edge
 * holds a write lock on one endpoint and at least a read lock on the other.
 *
 * A thread holds at most one scope at a time. With auditing enabled
 * (set_audit(true) or SCOPEFLOW_AUDIT_LOCKS=1 in the environment at
 * construction) per-entity in-flight counters are maintained and every
 * grant that would overlap a write-class hold is counted as a violation.
 */
class LockTable {
 public:
  explicit LockTable(const GraphStructure& g);
  ~LockTable();
  LockTable(const LockTable&) = delete;
  LockTable& operator=(const LockTable&) = delete;

  /// Blocks until granted. Throws ContractViolation if the calling thread
  /// already holds a scope.
  ScopeGuard acquire(VertexId v, ConsistencyModel model);

  void set_audit(bool enabled);
  bool audit_enabled() const { return audit_; }
  std::size_t audit_violations() const { return violations_.load(); }
  std::size_t grants() const { return grants_.load(); }

  const GraphStructure& structure() const { return *g_; }

 private:
  friend class ScopeGuard;
  void release(VertexId v, ConsistencyModel model) noexcept;
  void audit_enter(VertexId v, ConsistencyModel model);
  void audit_exit(VertexId v, ConsistencyModel model) noexcept;

  const GraphStructure* g_;
  std::unique_ptr<std::shared_mutex[]> locks_;
  bool audit_ = false;
  std::unique_ptr<std::atomic<int>[]> writers_;
  std::unique_ptr<std::atomic<int>[]> readers_;
  std::atomic<std::size_t> violations_{0};
  std::atomic<std::size_t> grants_{0};
};

}  // namespace scopeflow

#endif
