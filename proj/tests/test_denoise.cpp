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


#include <memory>

#include "doctest.h"
#include "oracles.hpp"
#include "scopeflow/algorithms/denoise.hpp"

using namespace scopeflow;

namespace {

struct Denoised {
  BpGraph graph;
  RunStats stats;
};

Denoised denoise(const DenoiseInstance& inst, EngineConfig config, double bound = 1e-5) {
  Denoised d{build_denoise_graph(inst), {}};
  SharedDataTable table;
  table.set(kBpLambdaKey, std::vector<double>{1.0, 1.0});
  d.stats = run_bp(d.graph, table, config, BpOptions{bound});
  return d;
}

}  // namespace

TEST_CASE("denoise: inference beats the noisy input") {
  const DenoiseInstance inst = make_ring_instance(16, 16, 5, 0.5, 1);
  const double noisy = mean_abs_error(round_labels(inst.observed, 5), inst.clean);
  const Denoised d = denoise(inst, EngineConfig{2, ConsistencyModel::Edge, {SchedulerKind::Priority}});
  CHECK(mean_abs_error(argmax_labels(d.graph), inst.clean) < noisy);
}

TEST_CASE("denoise: noiseless input is returned unchanged") {
  const DenoiseInstance inst = make_ring_instance(12, 12, 4, 0.0, 3);
  CHECK(round_labels(inst.observed, 4) == inst.clean);
  const Denoised d = denoise(inst, EngineConfig{});
  CHECK(argmax_labels(d.graph) == inst.clean);
}

TEST_CASE("denoise: worker count does not change the converged beliefs") {
  const DenoiseInstance inst = make_ring_instance(16, 16, 5, 0.5, 7);
  const Denoised one = denoise(inst, EngineConfig{1, ConsistencyModel::Edge, {SchedulerKind::Priority}}, 1e-9);
  const Denoised four = denoise(inst, EngineConfig{4, ConsistencyModel::Edge, {SchedulerKind::Priority}}, 1e-9);
  BpGraph a = one.graph, b = four.graph;
  refresh_beliefs(a);
  refresh_beliefs(b);
  CHECK(oracle::sup_diff(bp_beliefs(a), bp_beliefs(b)) < 1e-6);
}

TEST_CASE("denoise: grid MRF matches enumeration on a tiny grid") {
  PairwiseMrf mrf = grid_mrf(1, 4, 3, {0.8, 1.3});
  const DenoiseInstance inst{1, 4, 3, 0.7, {0.2, 1.6, 1.1, 2.4}, {}};
  for (std::size_t v = 0; v < 4; ++v) mrf.node_potentials[v] = observation_potential(inst.observed[v], 3, 0.7);
  BpGraph g = build_denoise_graph(inst);
  SharedDataTable table;
  table.set(kBpLambdaKey, mrf.lambda);
  run_bp(g, table, EngineConfig{}, BpOptions{1e-13});
  refresh_beliefs(g);
  CHECK(oracle::sup_diff(bp_beliefs(g), oracle::enumerate_marginals(mrf)) < 1e-8);
}

TEST_CASE("denoise: sampled MRF images respect the requested labels") {
  const auto labels = sample_grid_labels(10, 12, 4, {0.5, 0.5}, 20, 9);
  CHECK(labels.size() == 120);
  for (int l : labels) {
    CHECK(l >= 0);
    CHECK(l < 4);
  }
  CHECK(labels == sample_grid_labels(10, 12, 4, {0.5, 0.5}, 20, 9));
}

TEST_CASE("denoise: learning raises lambda on a constant image") {
  // A flat image has no empirical label differences, so the gradient step
  // pushes both smoothing parameters up.
  DenoiseInstance inst{8, 8, 3, 0.3, std::vector<double>(64, 1.0), std::vector<int>(64, 1)};
  BpGraph g = build_denoise_graph(inst);
  SharedDataTable table;
  table.set(kBpLambdaKey, std::vector<double>{0.5, 0.5});
  LearningOptions lo;
  lo.max_steps = 5;
  const LearningResult r = learn_then_infer(g, table, EngineConfig{}, BpOptions{}, lo);
  CHECK(r.steps >= 1);
  CHECK(r.lambda[0] > 0.5);
  CHECK(r.lambda[1] > 0.5);
}

TEST_CASE("denoise: concurrent learning runs the background sync and stops") {
  const DenoiseInstance inst = make_mrf_instance(12, 12, 3, {0.8, 0.8}, 0.3, 5);
  BpGraph g = build_denoise_graph(inst);
  SharedDataTable table;
  table.set(kBpLambdaKey, std::vector<double>{0.3, 0.3});
  LearningOptions lo;
  lo.period = std::chrono::milliseconds(2);
  lo.max_steps = 30;
  const LearningResult r =
      learn_concurrently(g, table, EngineConfig{2, ConsistencyModel::Edge, {SchedulerKind::Priority}}, BpOptions{}, lo);
  CHECK(r.steps >= 1);
  CHECK(r.steps <= 30);
  for (double l : r.lambda) CHECK(l >= lo.lambda_min);
  CHECK(table.get<std::vector<double>>(kBpLambdaKey) == r.lambda);
}
