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


#include "scopeflow/algorithms/denoise.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>

#include "scopeflow/rng.hpp"

namespace scopeflow {

DenoiseInstance make_ring_instance(std::size_t height, std::size_t width, std::size_t labels,
                                   double noise, std::uint64_t seed) {
  if (labels < 2) throw ContractViolation("denoising needs at least two labels");
  DenoiseInstance inst{height, width, labels, noise, {}, {}};
  const double cy = 0.5 * static_cast<double>(height - 1);
  const double cx = 0.5 * static_cast<double>(width - 1);
  const double band =
      std::max(2.0, static_cast<double>(std::min(height, width)) / (2.0 * static_cast<double>(labels)));
  const long period = 2 * static_cast<long>(labels) - 2;
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const double d = std::hypot(static_cast<double>(r) - cy, static_cast<double>(c) - cx);
      // Triangle wave over bands so neighboring rings differ by one label.
      const long k = static_cast<long>(d / band) % period;
      inst.clean.push_back(static_cast<int>(k < static_cast<long>(labels) ? k : period - k));
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int x : inst.clean) inst.observed.push_back(x + (noise > 0 ? noise * gauss(rng) : 0.0));
  return inst;
}

std::vector<int> sample_grid_labels(std::size_t height, std::size_t width, std::size_t labels,
                                    const std::vector<double>& lambda, std::size_t sweeps,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> x(height * width);
  for (int& v : x) v = static_cast<int>(rng() % labels);
  std::vector<double> p(labels);
  for (std::size_t s = 0; s < sweeps; ++s) {
    for (std::size_t parity = 0; parity < 2; ++parity) {
      for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
          if ((r + c) % 2 != parity) continue;
          for (std::size_t l = 0; l < labels; ++l) {
            double e = 0.0;
            auto add = [&](std::size_t rr, std::size_t cc, double lam) {
              e += lam * std::abs(static_cast<double>(l) - x[rr * width + cc]);
            };
            if (c > 0) add(r, c - 1, lambda[0]);
            if (c + 1 < width) add(r, c + 1, lambda[0]);
            if (r > 0) add(r - 1, c, lambda[1]);
            if (r + 1 < height) add(r + 1, c, lambda[1]);
            p[l] = std::exp(-e);
          }
          double u = unit(rng) * std::accumulate(p.begin(), p.end(), 0.0);
          std::size_t l = 0;
          while (l + 1 < labels && u >= p[l]) u -= p[l++];
          x[r * width + c] = static_cast<int>(l);
        }
      }
    }
  }
  return x;
}

DenoiseInstance make_mrf_instance(std::size_t height, std::size_t width, std::size_t labels,
                                  const std::vector<double>& lambda, double noise,
                                  std::uint64_t seed, std::size_t sweeps) {
  DenoiseInstance inst{height, width, labels, noise, {}, {}};
  inst.clean = sample_grid_labels(height, width, labels, lambda, sweeps, seed);
  std::mt19937_64 rng(splitmix64(seed));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int x : inst.clean) inst.observed.push_back(x + (noise > 0 ? noise * gauss(rng) : 0.0));
  return inst;
}

std::vector<double> observation_potential(double y, std::size_t labels, double noise) {
  const double s = std::max(noise, 0.05);
  std::vector<double> p(labels);
  for (std::size_t l = 0; l < labels; ++l) {
    const double d = y - static_cast<double>(l);
    p[l] = std::max(std::exp(-d * d / (2.0 * s * s)), 1e-12);
  }
  return p;
}

BpGraph build_denoise_graph(const DenoiseInstance& instance) {
  if (instance.observed.size() != instance.height * instance.width) {
    throw ContractViolation("observation count does not match the grid size");
  }
  PairwiseMrf mrf = grid_mrf(instance.height, instance.width, instance.labels, {1.0, 1.0});
  for (std::size_t v = 0; v < instance.observed.size(); ++v) {
    mrf.node_potentials[v] = observation_potential(instance.observed[v], instance.labels, instance.noise);
  }
  BpGraph g = build_bp_graph(mrf);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    g.vertex_data(v).observation = instance.observed[v];
    g.vertex_data(v).proxy.assign(2, instance.observed[v]);
    if (!instance.clean.empty()) g.vertex_data(v).reference = instance.clean[v];
  }
  return g;
}

std::vector<int> argmax_labels(const BpGraph& graph) {
  std::vector<int> out;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    const auto& b = graph.vertex_data(v).belief;
    out.push_back(static_cast<int>(std::max_element(b.begin(), b.end()) - b.begin()));
  }
  return out;
}

std::vector<double> expected_labels(const BpGraph& graph) {
  std::vector<double> out;
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    const auto& b = graph.vertex_data(v).belief;
    double e = 0.0;
    for (std::size_t l = 0; l < b.size(); ++l) e += static_cast<double>(l) * b[l];
    out.push_back(e);
  }
  return out;
}

std::vector<int> round_labels(const std::vector<double>& observed, std::size_t labels) {
  std::vector<int> out;
  for (double y : observed) {
    out.push_back(static_cast<int>(std::clamp(std::lround(y), 0L, static_cast<long>(labels) - 1)));
  }
  return out;
}

SyncRegistration<BpGraph> make_proxy_sync(std::size_t axes) {
  auto fold = [axes](Scope<BpGraph>& s, std::size_t acc) {
    BpVertex& me = s.vertex_data();
    std::vector<double> sum(axes, me.observation);
    std::vector<double> n(axes, 1.0);
    for (EdgeId e : s.out_edges()) {
      const std::uint8_t a = s.edge_data(e).axis;
      if (a >= axes) continue;
      sum[a] += s.neighbor_data(s.target(e)).observation;
      n[a] += 1.0;
    }
    me.proxy.resize(axes);
    for (std::size_t a = 0; a < axes; ++a) me.proxy[a] = sum[a] / n[a];
    return acc + 1;
  };
  auto merge = [](std::size_t a, std::size_t b) { return a + b; };
  auto apply = [](const std::size_t& n) { return n; };
  return make_sync<BpGraph>(kProxyKey, std::size_t{0}, fold, merge, apply);
}

namespace {

struct LearnAcc {
  std::vector<double> model;
  std::vector<double> empirical;
  std::vector<double> count;
};

}  // namespace

SyncRegistration<BpGraph> make_param_learning_sync(const SharedDataTable& table,
                                                   std::size_t axes,
                                                   const LearningOptions& options,
                                                   std::shared_ptr<LearningProgress> progress,
                                                   bool periodic) {
  const SharedDataTable* t = &table;
  const EmpiricalSource source = options.source;
  auto fold = [t, source](Scope<BpGraph>& s, LearnAcc acc) {
    auto lambda = t->get_shared<std::vector<double>>(kBpLambdaKey);
    const VertexId v = s.vertex();
    const BpVertex& me = s.vertex_data();
    for (EdgeId e : s.out_edges()) {
      const VertexId u = s.target(e);
      if (u < v) continue;  // each undirected pair once
      const BpEdge& d = s.edge_data(e);
      if (d.axis >= acc.model.size()) continue;
      const BpVertex& other = s.neighbor_data(u);
      const auto reverse = s.find_edge(u, v);
      const auto pb = pairwise_belief(me.belief, other.belief, d.message,
                                      reverse ? &s.edge_data(*reverse).message : nullptr,
                                      (*lambda)[d.axis]);
      const std::size_t k = me.belief.size();
      double expect = 0.0;
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
          expect += pb[a * k + b] * std::abs(static_cast<double>(a) - static_cast<double>(b));
        }
      }
      acc.model[d.axis] += expect;
      acc.empirical[d.axis] += source == EmpiricalSource::Reference
                                   ? std::abs(me.reference - other.reference)
                                   : std::abs(me.proxy.at(d.axis) - other.proxy.at(d.axis));
      acc.count[d.axis] += 1.0;
    }
    return acc;
  };
  auto merge = [](LearnAcc a, LearnAcc b) {
    for (std::size_t i = 0; i < a.model.size(); ++i) {
      a.model[i] += b.model[i];
      a.empirical[i] += b.empirical[i];
      a.count[i] += b.count[i];
    }
    return a;
  };
  auto apply = [t, options, progress](const LearnAcc& acc) {
    std::vector<double> lambda = t->get<std::vector<double>>(kBpLambdaKey);
    double change = 0.0;
    bool any = false;
    std::vector<double> model(acc.model.size(), 0.0), empirical(acc.model.size(), 0.0);
    for (std::size_t a = 0; a < acc.model.size() && a < lambda.size(); ++a) {
      if (acc.count[a] == 0.0) continue;
      any = true;
      model[a] = acc.model[a] / acc.count[a];
      empirical[a] = acc.empirical[a] / acc.count[a];
      const double next = std::max(options.lambda_min, lambda[a] + options.step * (model[a] - empirical[a]));
      change = std::max(change, std::abs(next - lambda[a]));
      lambda[a] = next;
    }
    if (any && progress) {
      std::lock_guard lock(progress->mu);
      ++progress->steps;
      progress->last_change = change;
      progress->stable = change < options.tolerance ? progress->stable + 1 : 0;
      progress->model_stat = model;
      progress->empirical_stat = empirical;
    }
    return lambda;
  };
  LearnAcc initial{std::vector<double>(axes, 0.0), std::vector<double>(axes, 0.0),
                   std::vector<double>(axes, 0.0)};
  std::optional<std::chrono::milliseconds> period;
  if (periodic) period = options.period;
  return make_sync<BpGraph>(kBpLambdaKey, initial, fold, merge, apply, period);
}

namespace {

bool learning_done(const LearningProgress& p, const LearningOptions& o) {
  return p.steps >= o.max_steps || p.stable >= o.stable_steps;
}

std::size_t axes_of(const SharedDataTable& table) {
  return table.get<std::vector<double>>(kBpLambdaKey).size();
}

}  // namespace

LearningResult learn_concurrently(BpGraph& graph, SharedDataTable& table,
                                  const EngineConfig& config, const BpOptions& bp,
                                  const LearningOptions& options) {
  const std::size_t axes = axes_of(table);
  auto progress = std::make_shared<LearningProgress>();
  LearningResult result;
  {
    Engine<BpGraph> engine(graph, table, config);
    BpOptions alive = bp;
    alive.keep_alive = true;
    const FunctionId f = engine.add_function(make_bp_update(alive));
    engine.register_sync(make_proxy_sync(axes));
    engine.sync_now(kProxyKey);
    engine.register_sync(make_param_learning_sync(table, axes, options, progress, true));
    engine.add_termination([progress, options](const SharedDataTable&) {
      std::lock_guard lock(progress->mu);
      return learning_done(*progress, options);
    });
    for (;;) {
      if (!is_generated(config.scheduler.kind)) engine.add_task_to_all(f, 1.0);
      RunStats stats = engine.run();
      result.updates += stats.updates_applied;
      std::lock_guard lock(progress->mu);
      if (learning_done(*progress, options)) break;
    }
  }
  result.lambda = table.get<std::vector<double>>(kBpLambdaKey);
  result.steps = progress->steps;
  result.converged = progress->stable >= options.stable_steps;
  result.final_inference = run_bp(graph, table, config, bp);
  result.updates += result.final_inference.updates_applied;
  return result;
}

LearningResult learn_then_infer(BpGraph& graph, SharedDataTable& table,
                                const EngineConfig& config, const BpOptions& bp,
                                const LearningOptions& options) {
  const std::size_t axes = axes_of(table);
  auto progress = std::make_shared<LearningProgress>();
  LearningResult result;
  {
    Engine<BpGraph> engine(graph, table, config);
    const FunctionId f = engine.add_function(make_bp_update(bp));
    engine.register_sync(make_proxy_sync(axes));
    engine.sync_now(kProxyKey);
    engine.register_sync(make_param_learning_sync(table, axes, options, progress, false));
    while (!learning_done(*progress, options)) {
      if (!is_generated(config.scheduler.kind)) engine.add_task_to_all(f, 1.0);
      result.updates += engine.run().updates_applied;
      engine.sync_now(kBpLambdaKey);
    }
  }
  result.lambda = table.get<std::vector<double>>(kBpLambdaKey);
  result.steps = progress->steps;
  result.converged = progress->stable >= options.stable_steps;
  result.final_inference = run_bp(graph, table, config, bp);
  result.updates += result.final_inference.updates_applied;
  return result;
}

}  // namespace scopeflow
