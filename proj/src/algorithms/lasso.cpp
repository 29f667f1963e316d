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


#include "scopeflow/algorithms/lasso.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <random>

namespace scopeflow {

void LassoProblem::validate() const {
  X.validate();
  if (y.size() != X.rows) {
    throw ContractViolation("targets have " + std::to_string(y.size()) + " entries, X has " +
                            std::to_string(X.rows) + " rows");
  }
  if (!(lambda >= 0.0)) throw ContractViolation("lambda must be non-negative");
}

RegressionInstance make_sparse_regression(std::size_t observations, std::size_t features,
                                          double density, double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::bernoulli_distribution coin(density);
  std::vector<bool> used(observations * features, false);
  RegressionInstance inst;
  inst.X = SparseMatrix{observations, features, {}};
  auto put = [&](std::size_t r, std::size_t c) {
    if (used[r * features + c]) return;
    used[r * features + c] = true;
    inst.X.entries.push_back({r, c, gauss(rng)});
  };
  for (std::size_t c = 0; c < features; ++c) put(rng() % observations, c);
  for (std::size_t r = 0; r < observations; ++r) put(r, rng() % features);
  for (std::size_t r = 0; r < observations; ++r) {
    for (std::size_t c = 0; c < features; ++c) {
      if (coin(rng)) put(r, c);
    }
  }
  inst.w_true.assign(features, 0.0);
  for (std::size_t c = 0; c < features; ++c) {
    if (coin(rng)) inst.w_true[c] = 2.0 * gauss(rng);
  }
  inst.w_true[rng() % features] = 1.0 + std::abs(gauss(rng));
  inst.y = inst.X.multiply(inst.w_true);
  for (double& v : inst.y) v += noise * gauss(rng);
  return inst;
}

LassoGraph build_lasso_graph(const LassoProblem& problem) {
  problem.validate();
  const std::size_t p = problem.features();
  const std::size_t n = problem.observations();
  LassoGraph g;
  g.reserve(p + n, problem.X.entries.size());
  for (std::size_t i = 0; i < p; ++i) g.add_vertex(LassoVertex{true, 0.0, 0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) {
    g.add_vertex(LassoVertex{false, problem.y[j], problem.y[j], 0.0});
  }
  for (const auto& t : problem.X.entries) {
    if (t.value == 0.0) continue;
    g.add_edge(static_cast<VertexId>(t.col), static_cast<VertexId>(p + t.row), LassoEdge{t.value});
    g.vertex_data(static_cast<VertexId>(t.col)).a += 2.0 * t.value * t.value;
  }
  return g;
}

double soft_threshold(double c, double lambda) {
  if (c > lambda) return c - lambda;
  if (c < -lambda) return c + lambda;
  return 0.0;
}

void shooting_update(Scope<LassoGraph>& scope, const SharedDataTable&, TaskSink& sink,
                     const ShootingOptions& options) {
  LassoVertex& me = scope.vertex_data();
  if (!me.is_weight) return;
  const auto out = scope.out_edges();
  double next = 0.0;
  if (me.a > 0.0) {
    double c = me.a * me.value;
    for (EdgeId e : out) {
      const double r = std::atomic_ref<double>(scope.neighbor_data(scope.target(e)).residual).load(
          std::memory_order_relaxed);
      c += 2.0 * scope.edge_data(e).x * r;
    }
    next = soft_threshold(c, options.lambda) / me.a;
  }
  const double delta = next - me.value;
  me.value = next;
  if (delta == 0.0) return;
  for (EdgeId e : out) {
    std::atomic_ref<double>(scope.neighbor_data(scope.target(e)).residual)
        .fetch_add(-delta * scope.edge_data(e).x, std::memory_order_relaxed);
  }
  if (std::abs(delta) <= options.epsilon) return;
  const GraphStructure& g = scope.structure();
  const VertexId self = scope.vertex();
  for (EdgeId e : out) {
    for (EdgeId back : g.in_edges(scope.target(e))) {
      const VertexId w = g.source(back);
      if (w != self) sink.add(w, std::abs(delta));
    }
  }
}

namespace {

double load(const double& x) {
  return std::atomic_ref<double>(const_cast<double&>(x)).load(std::memory_order_relaxed);
}

SyncRegistration<LassoGraph> objective_sync(double lambda) {
  auto fold = [lambda](Scope<LassoGraph>& s, double acc) {
    const LassoVertex& d = s.vertex_data();
    if (d.is_weight) return acc + lambda * std::abs(d.value);
    const double r = load(d.residual);
    return acc + r * r;
  };
  return make_sync<LassoGraph>(
      kLassoObjectiveKey, 0.0, fold, [](double a, double b) { return a + b; },
      [](const double& a) { return a; });
}

SyncRegistration<LassoGraph> kkt_sync(double lambda) {
  auto fold = [lambda](Scope<LassoGraph>& s, double acc) {
    const LassoVertex& d = s.vertex_data();
    if (!d.is_weight) return acc;
    double grad = 0.0;
    for (EdgeId e : s.out_edges()) {
      grad -= 2.0 * s.edge_data(e).x * load(s.neighbor_data(s.target(e)).residual);
    }
    const double kappa = d.value != 0.0 ? std::abs(grad + lambda * (d.value > 0 ? 1.0 : -1.0))
                                        : std::max(0.0, std::abs(grad) - lambda);
    return std::max(acc, kappa);
  };
  return make_sync<LassoGraph>(
      kLassoKktKey, 0.0, fold, [](double a, double b) { return std::max(a, b); },
      [](const double& a) { return a; });
}

}  // namespace

LassoResult solve_lasso(const LassoProblem& problem, const LassoOptions& options) {
  LassoGraph graph = build_lasso_graph(problem);
  SharedDataTable table;
  Engine<LassoGraph> engine(graph, table, options.config);
  const ShootingOptions shooting{problem.lambda, options.epsilon};
  const FunctionId f = engine.add_function(
      [shooting](Scope<LassoGraph>& s, const SharedDataTable& t, TaskSink& sink) {
        shooting_update(s, t, sink, shooting);
      });
  engine.register_sync(objective_sync(problem.lambda));
  engine.register_sync(kkt_sync(problem.lambda));

  LassoResult result;
  if (is_generated(options.config.scheduler.kind)) {
    while (result.sweeps < options.max_sweeps) {
      RunStats stats = engine.run();
      result.updates += stats.updates_applied;
      result.wall_time_s += stats.wall_time_s;
      ++result.sweeps;
      result.objective_trace.push_back(std::any_cast<double>(engine.sync_now(kLassoObjectiveKey)));
      if (std::any_cast<double>(engine.sync_now(kLassoKktKey)) <= options.kkt_tolerance) break;
    }
  } else {
    for (VertexId i = 0; i < problem.features(); ++i) {
      engine.add_task(i, f, std::numeric_limits<double>::max());
    }
    RunStats stats = engine.run();
    result.updates = stats.updates_applied;
    result.wall_time_s = stats.wall_time_s;
  }
  result.objective = std::any_cast<double>(engine.sync_now(kLassoObjectiveKey));
  result.kkt = std::any_cast<double>(engine.sync_now(kLassoKktKey));
  for (VertexId i = 0; i < problem.features(); ++i) result.w.push_back(graph.vertex_data(i).value);
  return result;
}

double lasso_objective(const LassoProblem& problem, const std::vector<double>& w) {
  std::vector<double> r = problem.X.multiply(w);
  double obj = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double d = r[j] - problem.y[j];
    obj += d * d;
  }
  for (double x : w) obj += problem.lambda * std::abs(x);
  return obj;
}

double lasso_kkt(const LassoProblem& problem, const std::vector<double>& w) {
  std::vector<double> r = problem.X.multiply(w);
  for (std::size_t j = 0; j < r.size(); ++j) r[j] -= problem.y[j];
  std::vector<double> g = problem.X.multiply_transpose(r);
  double worst = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double grad = 2.0 * g[i];
    const double kappa = w[i] != 0.0
                             ? std::abs(grad + problem.lambda * (w[i] > 0 ? 1.0 : -1.0))
                             : std::max(0.0, std::abs(grad) - problem.lambda);
    worst = std::max(worst, kappa);
  }
  return worst;
}

}  // namespace scopeflow
