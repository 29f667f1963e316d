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


#include <random>
#include <vector>

#include "doctest.h"
#include "scopeflow/set_schedule.hpp"

using namespace scopeflow;

namespace {

// The set-scheduler example: v1, v2, v5 run first, then v3 and v4.
// Vertex k here is v(k+1). v3 touches v1, v2 and v5; v4 touches only v5.
GraphStructure planning_example() {
  GraphStructure g;
  for (int i = 0; i < 5; ++i) g.add_vertex();
  g.add_edge(0, 2);
  g.add_edge(1, 2);
  g.add_edge(4, 2);
  g.add_edge(4, 3);
  return g;
}

std::vector<std::vector<bool>> reachability(const ExecutionPlan& plan) {
  const std::size_t n = plan.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t d : plan.deps[i]) {
      reach[d][i] = true;
      for (std::size_t k = 0; k < n; ++k) {
        if (reach[k][d]) reach[k][i] = true;
      }
    }
  }
  return reach;
}

}  // namespace

TEST_CASE("planning example dependencies") {
  GraphStructure g = planning_example();
  std::vector<ScheduleSet> sets{{{0, 1, 4}, 0}, {{2, 3}, 0}};
  ExecutionPlan plan = compile_set_schedule(g, sets, ConsistencyModel::Edge);
  REQUIRE(plan.size() == 5);
  CHECK(plan.nodes[3].vertex == 2);
  CHECK(plan.nodes[4].vertex == 3);
  // Node indices 0, 1, 2 hold v1, v2, v5.
  CHECK(plan.deps[3] == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(plan.deps[4] == std::vector<std::uint32_t>{2});

  PlanRunner runner(plan);
  for (std::uint32_t expect : {0u, 1u, 2u}) {
    NextTask t = runner.next_ready();
    REQUIRE(t.status == PollStatus::Ready);
    CHECK(t.task.plan_node == expect);
  }
  CHECK(runner.next_ready().status == PollStatus::Blocked);
  runner.complete(2);
  NextTask early = runner.next_ready();
  CHECK(early.task.vertex == 3);
  CHECK(runner.next_ready().status == PollStatus::Blocked);
}

TEST_CASE("plan runner contract and chains") {
  GraphStructure g;
  for (int i = 0; i < 3; ++i) g.add_vertex();
  std::vector<ScheduleSet> sets{{{0}, 0}, {{0}, 0}, {{0}, 0}};
  ExecutionPlan plan = compile_set_schedule(g, sets, ConsistencyModel::Vertex);
  CHECK(plan.deps[1] == std::vector<std::uint32_t>{0});
  CHECK(plan.deps[2] == std::vector<std::uint32_t>{1});
  PlanRunner runner(plan);
  CHECK_THROWS_AS(runner.complete(0), ContractViolation);
  for (std::uint32_t i = 0; i < 3; ++i) {
    NextTask t = runner.next_ready();
    CHECK(t.task.plan_node == i);
    CHECK(runner.next_ready().status == (i < 2 ? PollStatus::Blocked : PollStatus::Exhausted));
    runner.complete(i);
  }
  CHECK(runner.all_completed());

  ExecutionPlan empty = compile_set_schedule(g, {}, ConsistencyModel::Edge);
  PlanRunner idle(empty);
  CHECK(idle.next_ready().status == PollStatus::Exhausted);

  std::vector<ScheduleSet> bad{{{5}, 0}};
  CHECK_THROWS_AS(compile_set_schedule(g, bad, ConsistencyModel::Edge), StructureError);
}

TEST_CASE("vertex model on non-adjacent sets has no dependencies") {
  GraphStructure g;
  for (int i = 0; i < 6; ++i) g.add_vertex();
  g.add_edge(0, 1);
  std::vector<ScheduleSet> sets{{{0, 2}, 0}, {{3, 4, 5}, 0}};
  ExecutionPlan plan = compile_set_schedule(g, sets, ConsistencyModel::Vertex);
  for (const auto& d : plan.deps) CHECK(d.empty());
}

TEST_CASE("plan orders every intersecting pair and keeps only intersecting deps") {
  // Exhaustive over random graphs with at most six vertices. Every dep is
  // a pair with intersecting exclusion sets; each such pair is ordered.
  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    GraphStructure g;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) g.add_vertex();
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (rng() % 3 == 0) g.add_edge(a, b);
      }
    }
    std::vector<ScheduleSet> sets(1 + rng() % 4);
    for (auto& s : sets) {
      for (int v = 0; v < n; ++v) {
        if (rng() % 2) s.vertices.push_back(v);
      }
    }
    for (auto model : {ConsistencyModel::Vertex, ConsistencyModel::Edge, ConsistencyModel::Full}) {
      ExecutionPlan plan = compile_set_schedule(g, sets, model);
      auto reach = reachability(plan);
      std::vector<ExclusionSet> ex;
      for (const auto& t : plan.nodes) ex.push_back(exclusion_set(g, t.vertex, model));
      for (std::size_t i = 0; i < plan.size(); ++i) {
        for (std::uint32_t d : plan.deps[i]) {
          CHECK(d < i);
          CHECK(ex[d].intersects(ex[i]));
        }
        for (std::size_t j = 0; j < i; ++j) {
          if (ex[j].intersects(ex[i])) CHECK(reach[j][i]);
        }
      }
    }
  }
}
