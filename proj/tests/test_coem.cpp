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

#include "doctest.h"
#include "oracles.hpp"
#include "scopeflow/algorithms/coem.hpp"

using namespace scopeflow;

namespace {

std::vector<std::vector<double>> solve(const CoemInstance& inst, EngineConfig config = {}) {
  CoemGraph g = build_coem_graph(inst);
  SharedDataTable table;
  run_coem(g, table, config, CoemOptions{});
  return coem_beliefs(g);
}

}  // namespace

TEST_CASE("coem: a noun phrase linked only to a seed copies it") {
  CoemInstance inst{2, 1, 1, {{0, 1, 1.0}}, {{1, 0}}};
  const auto b = solve(inst);
  CHECK(b[0] == std::vector<double>{1.0, 0.0});
  CHECK(b[1] == std::vector<double>{1.0, 0.0});
}

TEST_CASE("coem: symmetric instance has a symmetric fixed point") {
  // NPs 0,1; CTs 2,3 seeded with opposite labels; complete bipartite, equal weights.
  CoemInstance inst{2, 2, 2, {{0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}}, {{2, 0}, {3, 1}}};
  const auto b = solve(inst);
  for (int np = 0; np < 2; ++np) {
    CHECK(b[np][0] == doctest::Approx(0.5));
    CHECK(b[np][1] == doctest::Approx(0.5));
  }
}

TEST_CASE("coem: random 20-vertex instance matches the linear-system fixed point") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const CoemInstance inst = make_random_coem(12, 8, 3, 2.5, 0.15, seed);
    const auto exact = oracle::coem_fixed_point(inst);
    for (auto kind : {SchedulerKind::FifoSingle, SchedulerKind::Priority, SchedulerKind::FifoMultiQueue}) {
      CHECK(oracle::sup_diff(solve(inst, EngineConfig{2, ConsistencyModel::Edge, {kind}}), exact) < 1e-4);
    }
  }
}

TEST_CASE("coem: seeds never change and beliefs stay on the simplex") {
  const CoemInstance inst = make_random_coem(60, 30, 4, 3.0, 0.1, 9);
  const auto b = solve(inst, EngineConfig{3, ConsistencyModel::Edge, {SchedulerKind::ApproxPriority}});
  for (const auto& s : inst.seeds) CHECK(b[s.vertex][s.label] == 1.0);
  for (const auto& row : b) {
    double sum = 0.0;
    for (double x : row) {
      CHECK(x >= 0.0);
      CHECK(x <= 1.0);
      sum += x;
    }
    CHECK(sum == doctest::Approx(1.0));
  }
}

TEST_CASE("coem: changes at or below the threshold do not reschedule") {
  // NP 0 between two CTs; its belief is set so one update moves it by a known amount.
  CoemInstance inst{2, 1, 2, {{0, 1, 1.0}, {0, 2, 1.0}}, {{1, 0}, {2, 0}}};
  CoemGraph g = build_coem_graph(inst);
  SharedDataTable table;
  Scope<CoemGraph> scope(g, 0, ConsistencyModel::Edge);

  auto update_from = [&](double delta) {
    g.vertex_data(0).belief = {1.0 - delta / 2, delta / 2};
    TaskSink sink;
    coem_update(scope, table, sink, CoemOptions{kCoemThreshold});
    return sink.tasks().size();
  };
  CHECK(update_from(0.5e-5) == 0);
  CHECK(update_from(0.99e-5) == 0);
  CHECK(update_from(2e-5) == 2);
}
