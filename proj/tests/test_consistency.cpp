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


#include <atomic>
#include <random>
#include <thread>
#include <vector>

#include "doctest.h"
#include "scopeflow/consistency.hpp"

using namespace scopeflow;

namespace {

GraphStructure path(int n) {
  GraphStructure g;
  for (int i = 0; i < n; ++i) g.add_vertex();
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

GraphStructure random_graph(std::mt19937& rng, int n, int m) {
  GraphStructure g;
  for (int i = 0; i < n; ++i) g.add_vertex();
  for (int k = 0; k < m; ++k) {
    VertexId s = rng() % n, t = rng() % n;
    if (s != t && !g.find_edge(s, t) && !g.find_edge(t, s)) g.add_edge(s, t);
  }
  return g;
}

}  // namespace

TEST_CASE("model names round-trip") {
  for (auto m : {ConsistencyModel::Full, ConsistencyModel::Edge, ConsistencyModel::Vertex}) {
    CHECK(parse_consistency_model(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_consistency_model("strong"), ParseError);
}

TEST_CASE("exclusion sets on a path") {
  GraphStructure g = path(3);
  ExclusionSet v = exclusion_set(g, 1, ConsistencyModel::Vertex);
  CHECK(v.vertices == std::vector<VertexId>{1});
  CHECK(v.edges.empty());
  ExclusionSet e = exclusion_set(g, 1, ConsistencyModel::Edge);
  CHECK(e.vertices == std::vector<VertexId>{1});
  CHECK(e.edges == std::vector<EdgeId>{0, 1});
  ExclusionSet f = exclusion_set(g, 1, ConsistencyModel::Full);
  CHECK(f.vertices == std::vector<VertexId>{0, 1, 2});
  CHECK(f.edges == std::vector<EdgeId>{0, 1});
}

TEST_CASE("exclusion sets are monotone in model strength") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    GraphStructure g = random_graph(rng, 25, 60);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      auto vx = exclusion_set(g, v, ConsistencyModel::Vertex);
      auto ed = exclusion_set(g, v, ConsistencyModel::Edge);
      auto fu = exclusion_set(g, v, ConsistencyModel::Full);
      CHECK(vx.subset_of(ed));
      CHECK(ed.subset_of(fu));
    }
  }
}

TEST_CASE("vertex and edge exclusion of adjacent vertices") {
  GraphStructure g = path(2);
  CHECK_FALSE(exclusion_set(g, 0, ConsistencyModel::Vertex)
                  .intersects(exclusion_set(g, 1, ConsistencyModel::Vertex)));
  CHECK(exclusion_set(g, 0, ConsistencyModel::Edge)
            .intersects(exclusion_set(g, 1, ConsistencyModel::Edge)));
}

TEST_CASE("scope guard release contract") {
  GraphStructure g = path(3);
  LockTable locks(g);
  ScopeGuard guard = locks.acquire(1, ConsistencyModel::Full);
  CHECK(guard.live());
  CHECK_THROWS_AS(locks.acquire(0, ConsistencyModel::Vertex), ContractViolation);
  guard.release();
  CHECK_FALSE(guard.live());
  CHECK_THROWS_AS(guard.release(), ContractViolation);
  CHECK_NOTHROW(locks.acquire(0, ConsistencyModel::Vertex));
}

TEST_CASE("locks serialize exactly the intersecting exclusion sets") {
  // Try-lock probe: a second thread attempts a scope while the first holds
  // one; it must block iff the exclusion sets intersect.
  std::mt19937 rng(5);
  GraphStructure g = random_graph(rng, 8, 12);
  LockTable locks(g);
  for (auto model : {ConsistencyModel::Vertex, ConsistencyModel::Edge, ConsistencyModel::Full}) {
    for (VertexId a = 0; a < g.num_vertices(); ++a) {
      for (VertexId b = 0; b < g.num_vertices(); ++b) {
        if (a == b) continue;
        bool expect_block = exclusion_set(g, a, model).intersects(exclusion_set(g, b, model));
        ScopeGuard held = locks.acquire(a, model);
        std::atomic<bool> got{false};
        std::thread t([&] {
          ScopeGuard other = locks.acquire(b, model);
          got = true;
        });
        std::this_thread::sleep_for(std::chrono::milliseconds(expect_block ? 2 : 0));
        if (expect_block) CHECK_FALSE(got.load());
        held.release();
        t.join();
        CHECK(got.load());
        if (!expect_block) {
          // Non-intersecting scopes must be grantable concurrently.
          ScopeGuard first = locks.acquire(a, model);
          std::atomic<bool> concurrent{false};
          std::thread u([&] {
            ScopeGuard second = locks.acquire(b, model);
            concurrent = true;
          });
          u.join();
          CHECK(concurrent.load());
        }
      }
    }
  }
}

TEST_CASE("audited lock stress records no violations") {
  std::mt19937 rng(3);
  GraphStructure g = random_graph(rng, 200, 800);
  LockTable locks(g);
  locks.set_audit(true);
  for (auto model : {ConsistencyModel::Edge, ConsistencyModel::Full}) {
    std::vector<std::thread> threads;
    for (int w = 0; w < 8; ++w) {
      threads.emplace_back([&, w] {
        std::mt19937 local(100 + w);
        for (int k = 0; k < 2000; ++k) {
          ScopeGuard s = locks.acquire(local() % 200, model);
        }
      });
    }
    for (auto& t : threads) t.join();
  }
  CHECK(locks.grants() == 2 * 8 * 2000);
  CHECK(locks.audit_violations() == 0);
}
