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


#ifndef SCOPEFLOW_ALGORITHMS_DENOISE_HPP
#define SCOPEFLOW_ALGORITHMS_DENOISE_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "scopeflow/algorithms/bp.hpp"

namespace scopeflow {

/// A grid of real observations in label units plus, for synthetic data,
/// the clean labels it was generated from.
struct DenoiseInstance {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t labels = 2;
  double noise = 0.0;
  std::vector<double> observed;
  /// Empty for real inputs.
  std::vector<int> clean;
};

/// Concentric rings of labels, plus Gaussian noise of std-dev `noise`.
DenoiseInstance make_ring_instance(std::size_t height, std::size_t width, std::size_t labels,
                                   double noise, std::uint64_t seed);

/// Labels drawn from the grid MRF with per-axis `lambda` and uniform node
/// potentials by `sweeps` checkerboard Gibbs sweeps.
std::vector<int> sample_grid_labels(std::size_t height, std::size_t width, std::size_t labels,
                                    const std::vector<double>& lambda, std::size_t sweeps,
                                    std::uint64_t seed);

/// sample_grid_labels plus Gaussian noise.
DenoiseInstance make_mrf_instance(std::size_t height, std::size_t width, std::size_t labels,
                                  const std::vector<double>& lambda, double noise,
                                  std::uint64_t seed, std::size_t sweeps = 500);

/// Node potentials exp(-(y - l)^2 / 2s^2) with s = max(noise, 0.05),
/// floored at 1e-12 so every label keeps positive mass.
std::vector<double> observation_potential(double y, std::size_t labels, double noise);

/// Grid BP graph with observation potentials; vertex (r, c) = r * width + c.
BpGraph build_denoise_graph(const DenoiseInstance& instance);

std::vector<int> argmax_labels(const BpGraph& graph);
std::vector<double> expected_labels(const BpGraph& graph);

template <typename A, typename B>
double mean_abs_error(const std::vector<A>& a, const std::vector<B>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += std::abs(static_cast<double>(a[i]) - static_cast<double>(b[i]));
  }
  return a.empty() ? 0.0 : s / static_cast<double>(a.size());
}

/// Nearest label for every observation.
std::vector<int> round_labels(const std::vector<double>& observed, std::size_t labels);

// ---------------------------------------------------------------------------
// Parameter learning

/// Which statistic the model statistic is matched against.
enum class EmpiricalSource {
  /// Per-axis 3-tap moving averages of the observations.
  AxisAverage,
  /// Clean labels retained by a synthetic generator.
  Reference
};

struct LearningOptions {
  double step = 1.0;
  double lambda_min = 1e-3;
  EmpiricalSource source = EmpiricalSource::AxisAverage;
  std::chrono::milliseconds period{10};
  /// Learning stops after this many gradient steps ...
  std::size_t max_steps = 200;
  /// ... or once `stable_steps` consecutive steps move lambda by less than
  /// `tolerance` (sup-norm).
  double tolerance = 1e-4;
  std::size_t stable_steps = 5;
};

inline const std::string kProxyKey = "bp.proxy";

/// Progress of the learning sync, shared with termination checks.
struct LearningProgress {
  mutable std::mutex mu;
  std::size_t steps = 0;
  std::size_t stable = 0;
  double last_change = 0.0;
  std::vector<double> model_stat;
  std::vector<double> empirical_stat;
};

/**
 * Computes each vertex's per-axis proxy: the mean observation over the
 * vertex and its neighbors along that axis. Registered under kProxyKey
 * (the stored value is the number of vertices visited).
 */
SyncRegistration<BpGraph> make_proxy_sync(std::size_t axes);

/**
 * Fold: per axis, the expected |x_u - x_v| under the current pairwise
 * beliefs and the empirical |.| difference of the chosen source, over
 * every edge once. Apply: lambda_a <- max(lambda_min, lambda_a +
 * step * (model_a - empirical_a)) with per-edge means; the result is
 * written to kBpLambdaKey. `progress` is updated on every apply.
 */
SyncRegistration<BpGraph> make_param_learning_sync(const SharedDataTable& table,
                                                   std::size_t axes,
                                                   const LearningOptions& options,
                                                   std::shared_ptr<LearningProgress> progress,
                                                   bool periodic);

struct LearningResult {
  std::vector<double> lambda;
  std::size_t steps = 0;
  bool converged = false;
  std::size_t updates = 0;
  RunStats final_inference;
};

/// Inference and learning in one engine run: BP keeps running while the
/// learning sync fires in the background, then a final BP pass with the
/// learned lambda.
LearningResult learn_concurrently(BpGraph& graph, SharedDataTable& table,
                                  const EngineConfig& config, const BpOptions& bp,
                                  const LearningOptions& options);

/// Baseline: alternate BP to convergence and one learning step.
LearningResult learn_then_infer(BpGraph& graph, SharedDataTable& table,
                                const EngineConfig& config, const BpOptions& bp,
                                const LearningOptions& options);

}  // namespace scopeflow

#endif
