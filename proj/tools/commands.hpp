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


#ifndef SCOPEFLOW_TOOLS_COMMANDS_HPP
#define SCOPEFLOW_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scopeflow/engine.hpp"

namespace scopeflow::cli {

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::string stats_out;
  std::string scheduler = "priority";
  std::string model;
  std::size_t workers = 1;
  /// Gibbs sweeps, or the pass limit of generated schedules.
  std::optional<std::size_t> sweeps;

  /// `default_model` applies when --model was not given.
  EngineConfig engine(ConsistencyModel default_model) const;
};

struct DenoiseArgs {
  std::string synthetic;
  std::string input;
  std::string output;
  std::string noisy_out;
  std::size_t labels = 5;
  double noise = 0.5;
  std::vector<double> lambda{1.0};
  std::vector<double> true_lambda;
  double bound = 1e-5;
  bool learn_params = false;
  std::size_t learn_period_ms = 10;
  bool expectation = false;
};

struct GibbsArgs {
  std::string graph;
  std::string synthetic;
  std::size_t labels = 2;
  double coupling = 1.0;
  std::string marginals_out;
  std::string histogram_out;
};

struct CoemArgs {
  std::string graph;
  std::string seeds;
  std::string synthetic;
  std::size_t classes = 2;
  double degree = 4.0;
  double seed_fraction = 0.1;
  double threshold = 1e-5;
  std::string beliefs_out;
};

struct LassoArgs {
  std::string x;
  std::string y;
  std::string synthetic;
  double density = 0.05;
  double noise = 0.1;
  double lambda = 1.0;
  std::size_t max_sweeps = 100000;
  std::string weights_out;
};

struct GabpArgs {
  std::string a;
  std::string b;
  std::size_t synthetic = 0;
  bool check = false;
  double bound = 1e-10;
  std::string solution_out;
};

struct BenchArgs {
  std::string algorithm = "denoise";
  std::string size;
  std::vector<std::size_t> workers{1};
  std::vector<std::string> schedulers{"priority"};
  std::vector<std::string> models{"edge"};
  std::string out = "bench.csv";
};

int run_denoise(const GlobalOptions& g, const DenoiseArgs& a);
int run_gibbs(const GlobalOptions& g, const GibbsArgs& a);
int run_coem(const GlobalOptions& g, const CoemArgs& a);
int run_lasso(const GlobalOptions& g, const LassoArgs& a);
int run_gabp(const GlobalOptions& g, const GabpArgs& a);
int run_bench(const GlobalOptions& g, const BenchArgs& a);

/// "HxW" -> (H, W). Throws ParseError.
std::pair<std::size_t, std::size_t> parse_dims(const std::string& text);

}  // namespace scopeflow::cli

#endif
