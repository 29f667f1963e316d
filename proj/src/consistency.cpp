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

#include "scopeflow/consistency.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace scopeflow {

namespace {

// Scopes held by the calling thread, across all lock tables.
thread_local int t_scopes_held = 0;

template <typename T>
bool sorted_intersect(const std::vector<T>& a, const std::vector<T>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(ConsistencyModel model) {
  switch (model) {
    case ConsistencyModel::Full: return "full";
    case ConsistencyModel::Edge: return "edge";
    case ConsistencyModel::Vertex: return "vertex";
  }
  return "?";
}

ConsistencyModel parse_consistency_model(std::string_view name) {
  if (name == "full") return ConsistencyModel::Full;
  if (name == "edge") return ConsistencyModel::Edge;
  if (name == "vertex") return ConsistencyModel::Vertex;
  throw ParseError("unknown consistency model '" + std::string(name) + "'");
}

bool ExclusionSet::intersects(const ExclusionSet& other) const {
  return sorted_intersect(vertices, other.vertices) || sorted_intersect(edges, other.edges);
}

bool ExclusionSet::contains_vertex(VertexId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool ExclusionSet::contains_edge(EdgeId e) const {
  return std::binary_search(edges.begin(), edges.end(), e);
}

bool ExclusionSet::subset_of(const ExclusionSet& other) const {
  return std::includes(other.vertices.begin(), other.vertices.end(), vertices.begin(),
                       vertices.end()) &&
         std::includes(other.edges.begin(), other.edges.end(), edges.begin(), edges.end());
}

ExclusionSet exclusion_set(const GraphStructure& g, VertexId v, ConsistencyModel model) {
  g.check_vertex(v);
  ExclusionSet set;
  set.vertices.push_back(v);
  if (model == ConsistencyModel::Vertex) return set;

  auto ins = g.in_edges(v);
  auto outs = g.out_edges(v);
  set.edges.reserve(ins.size() + outs.size());
  set.edges.insert(set.edges.end(), ins.begin(), ins.end());
  set.edges.insert(set.edges.end(), outs.begin(), outs.end());
  std::sort(set.edges.begin(), set.edges.end());

  if (model == ConsistencyModel::Full) {
    auto nbrs = g.neighbors(v);
    set.vertices.insert(set.vertices.end(), nbrs.begin(), nbrs.end());
    std::sort(set.vertices.begin(), set.vertices.end());
  }
  return set;
}

ScopeGuard::ScopeGuard(ScopeGuard&& other) noexcept
    : table_(other.table_), vertex_(other.vertex_), model_(other.model_) {
  other.table_ = nullptr;
}

ScopeGuard& ScopeGuard::operator=(ScopeGuard&& other) noexcept {
  if (this != &other) {
    release_unchecked();
    table_ = other.table_;
    vertex_ = other.vertex_;
    model_ = other.model_;
    other.table_ = nullptr;
  }
  return *this;
}

ScopeGuard::~ScopeGuard() { release_unchecked(); }

void ScopeGuard::release() {
  if (table_ == nullptr) throw ContractViolation("scope released twice");
  release_unchecked();
}

void ScopeGuard::release_unchecked() noexcept {
  if (table_ == nullptr) return;
  table_->release(vertex_, model_);
  table_ = nullptr;
}

LockTable::LockTable(const GraphStructure& g)
    : g_(&g), locks_(new std::shared_mutex[g.num_vertices()]) {
  const char* env = std::getenv("SCOPEFLOW_AUDIT_LOCKS");
  if (env != nullptr && std::string(env) == "1") set_audit(true);
}

LockTable::~LockTable() = default;

void LockTable::set_audit(bool enabled) {
  if (enabled && !writers_) {
    std::size_t entities = g_->num_vertices() + g_->num_edges();
    writers_.reset(new std::atomic<int>[entities]);
    readers_.reset(new std::atomic<int>[entities]);
    for (std::size_t i = 0; i < entities; ++i) {
      writers_[i].store(0);
      readers_[i].store(0);
    }
  }
  audit_ = enabled;
}

ScopeGuard LockTable::acquire(VertexId v, ConsistencyModel model) {
  g_->check_vertex(v);
  if (t_scopes_held > 0) {
    throw ContractViolation("thread already holds a scope; acquiring " + std::to_string(v));
  }
  switch (model) {
    case ConsistencyModel::Vertex:
      locks_[v].lock();
      break;
    case ConsistencyModel::Edge:
    case ConsistencyModel::Full: {
      bool self_locked = false;
      for (VertexId u : g_->neighbors(v)) {
        if (!self_locked && v < u) {
          locks_[v].lock();
          self_locked = true;
        }
        if (model == ConsistencyModel::Full) {
          locks_[u].lock();
        } else {
          locks_[u].lock_shared();
        }
      }
      if (!self_locked) locks_[v].lock();
      break;
    }
  }
  ++t_scopes_held;
  grants_.fetch_add(1, std::memory_order_relaxed);
  if (audit_) audit_enter(v, model);
  return ScopeGuard(this, v, model);
}

void LockTable::release(VertexId v, ConsistencyModel model) noexcept {
  if (audit_) audit_exit(v, model);
  locks_[v].unlock();
  if (model != ConsistencyModel::Vertex) {
    for (VertexId u : g_->neighbors(v)) {
      if (model == ConsistencyModel::Full) {
        locks_[u].unlock();
      } else {
        locks_[u].unlock_shared();
      }
    }
  }
  if (t_scopes_held > 0) --t_scopes_held;
}

void LockTable::audit_enter(VertexId v, ConsistencyModel model) {
  auto write = [&](std::size_t entity) {
    int w = writers_[entity].fetch_add(1) + 1;
    if (w > 1 || readers_[entity].load() > 0) violations_.fetch_add(1);
  };
  auto read = [&](std::size_t entity) {
    readers_[entity].fetch_add(1);
    if (writers_[entity].load() > 0) violations_.fetch_add(1);
  };
  const std::size_t edge_base = g_->num_vertices();
  ExclusionSet set = exclusion_set(*g_, v, model);
  for (VertexId u : set.vertices) write(u);
  for (EdgeId e : set.edges) write(edge_base + e);
  if (model == ConsistencyModel::Edge) {
    for (VertexId u : g_->neighbors(v)) read(u);
  }
}

void LockTable::audit_exit(VertexId v, ConsistencyModel model) noexcept {
  const std::size_t edge_base = g_->num_vertices();
  if (model == ConsistencyModel::Edge) {
    for (VertexId u : g_->neighbors(v)) readers_[u].fetch_sub(1);
  }
  auto set = exclusion_set(*g_, v, model);
  for (VertexId u : set.vertices) writers_[u].fetch_sub(1);
  for (EdgeId e : set.edges) writers_[edge_base + e].fetch_sub(1);
}

}  // namespace scopeflow
