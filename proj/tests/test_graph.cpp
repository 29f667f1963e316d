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


#include <algorithm>
#include <random>

#include "doctest.h"
#include "scopeflow/graph.hpp"
#include "scopeflow/shared_table.hpp"

using namespace scopeflow;

TEST_CASE("add_vertex returns consecutive ids") {
  GraphStructure g;
  CHECK(g.add_vertex() == 0);
  CHECK(g.add_vertex() == 1);
  CHECK(g.add_vertex() == 2);
  CHECK(g.num_vertices() == 3);
}

TEST_CASE("add_edge validates endpoints and duplicates") {
  GraphStructure g;
  for (int i = 0; i < 3; ++i) g.add_vertex();
  CHECK(g.add_edge(0, 1) == 0);
  CHECK(g.add_edge(1, 0) == 1);
  CHECK(g.num_edges() == 2);

  auto kind_of = [&](VertexId s, VertexId t) {
    try {
      g.add_edge(s, t);
    } catch (const StructureError& e) {
      return e.kind();
    }
    FAIL("expected StructureError");
    return StructureError::Kind::Frozen;
  };
  CHECK(kind_of(2, 2) == StructureError::Kind::SelfLoop);
  CHECK(kind_of(0, 1) == StructureError::Kind::DuplicateEdge);
  CHECK(kind_of(0, 7) == StructureError::Kind::UnknownVertex);
}

TEST_CASE("frozen structure rejects mutation") {
  GraphStructure g;
  g.add_vertex();
  g.add_vertex();
  {
    FreezeGuard guard(g);
    CHECK(g.frozen());
    CHECK_THROWS_AS(g.add_vertex(), StructureError);
    CHECK_THROWS_AS(g.add_edge(0, 1), StructureError);
  }
  CHECK_FALSE(g.frozen());
  CHECK_NOTHROW(g.add_edge(0, 1));
}

TEST_CASE("scope of a directed triangle") {
  GraphStructure g;
  for (int i = 0; i < 3; ++i) g.add_vertex();
  EdgeId e01 = g.add_edge(0, 1);
  EdgeId e12 = g.add_edge(1, 2);
  EdgeId e20 = g.add_edge(2, 0);
  ScopeDescriptor s = g.scope_of(0);
  CHECK(s.center == 0);
  CHECK(s.out_edges == std::vector<EdgeId>{e01});
  CHECK(s.in_edges == std::vector<EdgeId>{e20});
  CHECK(s.neighbors == std::vector<VertexId>{1, 2});
  CHECK(g.find_edge(1, 2) == e12);
  CHECK_FALSE(g.find_edge(2, 1).has_value());
}

TEST_CASE("isolated vertex has an empty scope") {
  GraphStructure g;
  g.add_vertex();
  ScopeDescriptor s = g.scope_of(0);
  CHECK(s.in_edges.empty());
  CHECK(s.out_edges.empty());
  CHECK(s.neighbors.empty());
  CHECK_THROWS_AS(g.scope_of(1), StructureError);
}

TEST_CASE("adjacency agrees with a brute-force scan on random graphs") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    GraphStructure g;
    const int n = 2 + static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) g.add_vertex();
    for (int k = 0; k < 3 * n; ++k) {
      VertexId s = rng() % n, t = rng() % n;
      if (s != t && !g.find_edge(s, t)) g.add_edge(s, t);
    }
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
      std::vector<EdgeId> in, out;
      std::vector<VertexId> nb;
      for (EdgeId e = 0; e < g.num_edges(); ++e) {
        if (g.source(e) == v) {
          out.push_back(e);
          nb.push_back(g.target(e));
        }
        if (g.target(e) == v) {
          in.push_back(e);
          nb.push_back(g.source(e));
        }
      }
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
      auto sorted = [](std::span<const EdgeId> s) {
        std::vector<EdgeId> v(s.begin(), s.end());
        std::sort(v.begin(), v.end());
        return v;
      };
      CHECK(sorted(g.in_edges(v)) == in);
      CHECK(sorted(g.out_edges(v)) == out);
      CHECK(std::vector<VertexId>(g.neighbors(v).begin(), g.neighbors(v).end()) == nb);
    }
  }
}

TEST_CASE("data graph stores vertex and edge blocks") {
  DataGraph<int, double> g;
  g.add_vertex(10);
  g.add_vertex(20);
  EdgeId e = g.add_edge(0, 1, 0.5);
  g.vertex_data(1) += 1;
  CHECK(g.vertex_data(1) == 21);
  CHECK(g.edge_data(e) == 0.5);
}

TEST_CASE("shared table get and set") {
  SharedDataTable t;
  t.set<int>("k", 3);
  CHECK(t.get<int>("k") == 3);
  CHECK_THROWS_AS(t.get<int>("missing"), KeyError);
  CHECK_THROWS_AS(t.get<double>("k"), KeyError);
  auto held = t.get_shared<int>("k");
  t.set<int>("k", 4);
  CHECK(*held == 3);
  CHECK(t.get<int>("k") == 4);
  t.mark_registered("k");
  CHECK_THROWS_AS(t.mark_registered("k"), KeyError);
}
