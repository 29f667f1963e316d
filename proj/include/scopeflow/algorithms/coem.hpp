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


#ifndef SCOPEFLOW_ALGORITHMS_COEM_HPP
#define SCOPEFLOW_ALGORITHMS_COEM_HPP

#include <cstdint>
#include <vector>

#include "scopeflow/engine.hpp"

namespace scopeflow {

enum class CoemKind : std::uint8_t { NounPhrase, Context };

struct CoemVertex {
  std::vector<double> belief;
  bool is_seed = false;
  CoemKind kind = CoemKind::NounPhrase;
};

struct CoemEdge {
  double weight = 1.0;
};

using CoemGraph = DataGraph<CoemVertex, CoemEdge>;

inline constexpr double kCoemThreshold = 1e-5;

struct CoemOptions {
  /// Neighbors are rescheduled when a belief moves by more than this (L1).
  double threshold = kCoemThreshold;
};

struct CoemLink {
  VertexId noun_phrase = 0;
  VertexId context = 0;
  double weight = 1.0;
};

struct CoemSeed {
  VertexId vertex = 0;
  std::size_t label = 0;
};

/// Noun phrases take ids 0..NP-1 and contexts NP..NP+CT-1.
struct CoemInstance {
  std::size_t classes = 2;
  std::size_t noun_phrases = 0;
  std::size_t contexts = 0;
  std::vector<CoemLink> links;
  std::vector<CoemSeed> seeds;
};

/// Random bipartite co-occurrence graph; every vertex gets at least one
/// link and `seed_fraction` of the vertices are seeds.
CoemInstance make_random_coem(std::size_t noun_phrases, std::size_t contexts, std::size_t classes,
                              double mean_degree, double seed_fraction, std::uint64_t seed);

/// Links become NP -> CT edges. Seeds hold one-hot beliefs, everything
/// else starts uniform.
CoemGraph build_coem_graph(const CoemInstance& instance);

/// Non-seed: belief <- weighted average of neighbor beliefs. If the belief
/// moved by more than the threshold, every neighbor is rescheduled.
/// Seeds and isolated vertices are left unchanged.
void coem_update(Scope<CoemGraph>& scope, const SharedDataTable& table, TaskSink& sink,
                 const CoemOptions& options);

RunStats run_coem(CoemGraph& graph, SharedDataTable& table, const EngineConfig& config,
                  const CoemOptions& options);

/// Non-seed vertices without neighbors; they keep the uniform belief.
std::vector<VertexId> coem_isolated(const CoemGraph& graph);

std::vector<std::vector<double>> coem_beliefs(const CoemGraph& graph);

}  // namespace scopeflow

#endif
