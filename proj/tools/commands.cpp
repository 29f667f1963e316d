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


#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "scopeflow/algorithms/coem.hpp"
#include "scopeflow/algorithms/denoise.hpp"
#include "scopeflow/algorithms/gabp.hpp"
#include "scopeflow/algorithms/gibbs.hpp"
#include "scopeflow/algorithms/lasso.hpp"
#include "scopeflow/io/bench.hpp"
#include "scopeflow/io/matrix_market.hpp"
#include "scopeflow/io/pgm.hpp"
#include "scopeflow/io/text.hpp"

namespace scopeflow::cli {

namespace {

constexpr std::size_t kDefaultSweeps = 100;
constexpr std::size_t kMaxCheckSize = 500;

std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size() || v == 0) {
    throw ParseError("invalid " + what + " '" + text + "'");
  }
  return static_cast<std::size_t>(v);
}

void write_stats(const GlobalOptions& g, const RunStats& stats, const EngineConfig& config) {
  if (g.stats_out.empty()) return;
  auto out = open_output(g.stats_out);
  write_run_stats_csv(out, stats, config.workers, config.scheduler.kind, config.model);
}

/// Pixel value of a label on a 0..maxval scale.
int label_to_pixel(double label, std::size_t labels, int maxval) {
  return static_cast<int>(std::lround(label * maxval / static_cast<double>(labels - 1)));
}

// Dense Gaussian elimination with partial pivoting; row-major A.
std::vector<double> dense_solve(std::vector<double> A, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(A[i * n + k]) > std::abs(A[pivot * n + k])) pivot = i;
    }
    if (A[pivot * n + k] == 0.0) throw NumericalError("system is singular");
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A[k * n + j], A[pivot * n + j]);
      std::swap(b[k], b[pivot]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = A[i * n + k] / A[k * n + k];
      for (std::size_t j = k; j < n; ++j) A[i * n + j] -= f * A[k * n + j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= A[i * n + j] * x[j];
    x[i] = s / A[i * n + i];
  }
  return x;
}

/// Random symmetric, strictly diagonally dominant system.
std::pair<SparseMatrix, std::vector<double>> random_dominant_system(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::bernoulli_distribution link(std::min(1.0, 4.0 / static_cast<double>(std::max<std::size_t>(n, 1))));
  std::vector<double> dense(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (link(rng)) dense[i * n + j] = dense[j * n + i] = unit(rng);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j) off += std::abs(dense[i * n + j]);
    dense[i * n + i] = off + 0.5 + 0.5 * std::abs(unit(rng));
  }
  std::vector<double> b(n);
  for (double& v : b) v = unit(rng);
  return {from_dense(n, n, dense), b};
}

struct DenoiseOutcome {
  RunStats stats;
  double error = 0.0;
};

DenoiseOutcome denoise_once(const DenoiseInstance& inst, const EngineConfig& config,
                            std::vector<double> lambda, double bound) {
  BpGraph graph = build_denoise_graph(inst);
  SharedDataTable table;
  table.set(kBpLambdaKey, std::move(lambda));
  DenoiseOutcome out;
  out.stats = run_bp(graph, table, config, BpOptions{bound});
  out.error = mean_abs_error(argmax_labels(graph), inst.clean);
  return out;
}

}  // namespace

EngineConfig GlobalOptions::engine(ConsistencyModel default_model) const {
  if (workers == 0) throw ContractViolation("--workers must be at least 1");
  EngineConfig config;
  config.workers = workers;
  config.model = model.empty() ? default_model : parse_consistency_model(model);
  config.scheduler.kind = parse_scheduler_kind(scheduler);
  if (config.scheduler.kind == SchedulerKind::Set) {
    throw ContractViolation("scheduler 'set' is only used internally by the gibbs subcommand");
  }
  config.scheduler.sweeps = sweeps.value_or(kDefaultSweeps);
  return config;
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw ParseError("expected HxW, got '" + text + "'");
  return {parse_count(text.substr(0, x), "height"), parse_count(text.substr(x + 1), "width")};
}

int run_denoise(const GlobalOptions& g, const DenoiseArgs& a) {
  if (a.labels < 2) throw ContractViolation("--labels must be at least 2");
  if (a.synthetic.empty() == a.input.empty()) throw ContractViolation("give exactly one of --synthetic or --input");
  if (a.lambda.empty() || a.lambda.size() > 2) throw ContractViolation("--lambda takes one or two values");

  DenoiseInstance inst;
  int maxval = static_cast<int>(a.labels - 1);
  if (!a.synthetic.empty()) {
    const auto [h, w] = parse_dims(a.synthetic);
    inst = a.true_lambda.empty() ? make_ring_instance(h, w, a.labels, a.noise, g.seed)
                                 : make_mrf_instance(h, w, a.labels, a.true_lambda, a.noise, g.seed);
  } else {
    const GrayImage img = read_pgm_file(a.input);
    maxval = img.maxval;
    inst.height = img.height;
    inst.width = img.width;
    inst.labels = a.labels;
    inst.noise = a.noise;
    for (int p : img.pixels) {
      inst.observed.push_back(p * static_cast<double>(a.labels - 1) / img.maxval);
    }
  }
  if (!a.noisy_out.empty()) {
    GrayImage noisy{inst.width, inst.height, maxval, {}};
    for (int l : round_labels(inst.observed, inst.labels)) noisy.pixels.push_back(label_to_pixel(l, inst.labels, maxval));
    write_pgm_file(a.noisy_out, noisy);
  }

  const EngineConfig config = g.engine(ConsistencyModel::Edge);
  BpGraph graph = build_denoise_graph(inst);
  SharedDataTable table;
  std::vector<double> lambda = a.lambda;
  if (lambda.size() == 1) lambda.push_back(lambda[0]);
  table.set(kBpLambdaKey, lambda);
  const BpOptions bp{a.bound};

  RunStats stats;
  std::size_t updates = 0;
  if (a.learn_params) {
    LearningOptions lo;
    lo.period = std::chrono::milliseconds(a.learn_period_ms);
    const LearningResult learned = learn_concurrently(graph, table, config, bp, lo);
    stats = learned.final_inference;
    updates = learned.updates;
    std::cout << "learned_lambda";
    for (double l : learned.lambda) std::cout << '\t' << format_double(l);
    std::cout << "\nlearning_steps\t" << learned.steps << "\nlearning_converged\t"
              << (learned.converged ? 1 : 0) << '\n';
  } else {
    stats = run_bp(graph, table, config, bp);
    updates = stats.updates_applied;
  }

  GrayImage result{inst.width, inst.height, maxval, {}};
  if (a.expectation) {
    for (double e : expected_labels(graph)) result.pixels.push_back(label_to_pixel(e, inst.labels, maxval));
  } else {
    for (int l : argmax_labels(graph)) result.pixels.push_back(label_to_pixel(l, inst.labels, maxval));
  }
  if (!a.output.empty()) write_pgm_file(a.output, result);

  std::cout << "updates\t" << updates << '\n';
  if (!inst.clean.empty()) {
    std::vector<int> labels;
    for (int p : result.pixels) labels.push_back(static_cast<int>(std::lround(p * static_cast<double>(inst.labels - 1) / maxval)));
    std::cout << "noisy_mae\t" << format_double(mean_abs_error(round_labels(inst.observed, inst.labels), inst.clean))
              << "\ndenoised_mae\t" << format_double(mean_abs_error(labels, inst.clean)) << '\n';
  }
  write_stats(g, stats, config);
  return 0;
}

int run_gibbs(const GlobalOptions& g, const GibbsArgs& a) {
  if (a.labels < 2) throw ContractViolation("--labels must be at least 2");
  if (a.graph.empty() == a.synthetic.empty()) throw ContractViolation("give exactly one of --graph or --synthetic");
  PairwiseMrf mrf;
  mrf.labels = a.labels;
  mrf.lambda = {a.coupling};
  std::vector<double> weights;
  std::size_t n = 0;
  if (!a.graph.empty()) {
    const EdgeList list = read_edge_list_file(a.graph);
    n = list.num_vertices;
    for (const auto& e : list.edges) {
      mrf.edges.push_back({e.source, e.target, 0});
      weights.push_back(e.weight);
    }
  } else {
    // chain:N, grid:HxW, triangle, random:N:DEGREE
    const auto parts = [&] {
      std::vector<std::string> p;
      std::stringstream ss(a.synthetic);
      std::string item;
      while (std::getline(ss, item, ':')) p.push_back(item);
      return p;
    }();
    const std::string& kind = parts.at(0);
    if (kind == "triangle" && parts.size() == 1) {
      n = 3;
      mrf.edges = {{0, 1, 0}, {1, 2, 0}, {0, 2, 0}};
    } else if (kind == "chain" && parts.size() == 2) {
      n = parse_count(parts[1], "chain length");
      for (VertexId v = 0; v + 1 < n; ++v) mrf.edges.push_back({v, v + 1, 0});
    } else if (kind == "grid" && parts.size() == 2) {
      const auto [h, w] = parse_dims(parts[1]);
      mrf = grid_mrf(h, w, a.labels, {a.coupling, a.coupling});
      n = h * w;
    } else if (kind == "random" && parts.size() == 3) {
      n = parse_count(parts[1], "vertex count");
      const double degree = std::stod(parts[2]);
      std::mt19937_64 rng(g.seed ^ 0x5eedULL);
      std::bernoulli_distribution link(std::min(1.0, degree / static_cast<double>(std::max<std::size_t>(n - 1, 1))));
      for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = u + 1; v < n; ++v) {
          if (link(rng)) mrf.edges.push_back({u, v, 0});
        }
      }
    } else {
      throw ParseError("unknown --synthetic spec '" + a.synthetic + "' (chain:N, grid:HxW, triangle, random:N:DEGREE)");
    }
  }
  std::mt19937_64 rng(g.seed);
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  mrf.node_potentials.assign(n, std::vector<double>(a.labels));
  for (auto& p : mrf.node_potentials) {
    for (double& v : p) v = unit(rng);
    normalize(p, "node potential");
  }
  mrf.validate();

  GibbsGraph graph = build_gibbs_graph(mrf, g.seed);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const auto e = graph.structure().find_edge(mrf.edges[i].u, mrf.edges[i].v);
    graph.edge_data(*e).lambda = weights[i];
  }
  SharedDataTable table;
  EngineConfig coloring = g.engine(ConsistencyModel::Edge);
  const RunStats color_stats = color_graph(graph, table, coloring);
  const std::size_t sweeps = g.sweeps.value_or(1000);
  RunStats stats = run_chromatic_gibbs(graph, table, g.workers, sweeps);
  stats.updates_applied += color_stats.updates_applied;

  const auto histogram = color_histogram(graph);
  std::ostringstream hist;
  for (std::size_t c = 0; c < histogram.size(); ++c) hist << c << '\t' << histogram[c] << '\n';
  std::cout << "colors\t" << num_colors(graph) << '\n' << hist.str();
  if (!a.histogram_out.empty()) open_output(a.histogram_out) << hist.str();
  if (!a.marginals_out.empty()) write_vertex_tsv_file(a.marginals_out, empirical_marginals(graph));
  EngineConfig reported = coloring;
  reported.scheduler.kind = SchedulerKind::Set;
  write_stats(g, stats, reported);
  return 0;
}

int run_coem(const GlobalOptions& g, const CoemArgs& a) {
  if (a.graph.empty() == a.synthetic.empty()) throw ContractViolation("give exactly one of --graph or --synthetic");
  CoemInstance inst;
  if (!a.synthetic.empty()) {
    const auto [np, ct] = parse_dims(a.synthetic);
    inst = make_random_coem(np, ct, a.classes, a.degree, a.seed_fraction, g.seed);
  } else {
    // Noun phrases and contexts have separate id spaces in the file.
    const EdgeList list = read_edge_list_file(a.graph);
    inst.classes = a.classes;
    for (const auto& e : list.edges) {
      inst.noun_phrases = std::max<std::size_t>(inst.noun_phrases, e.source + 1);
      inst.contexts = std::max<std::size_t>(inst.contexts, e.target + 1);
    }
    for (const auto& e : list.edges) {
      inst.links.push_back({e.source, static_cast<VertexId>(inst.noun_phrases + e.target), e.weight});
    }
    if (!a.seeds.empty()) {
      auto in = open_input(a.seeds);
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::string kind;
        long long id = -1, label = -1;
        if (!(fields >> kind)) continue;
        if (!(fields >> id >> label) || id < 0 || label < 0 || (kind != "np" && kind != "ct")) {
          throw ParseError("seed file line " + std::to_string(line_no) + ": expected 'np|ct id label'");
        }
        const std::size_t limit = kind == "np" ? inst.noun_phrases : inst.contexts;
        if (static_cast<std::size_t>(id) >= limit) {
          throw ParseError("seed file line " + std::to_string(line_no) + ": unknown " + kind + " id");
        }
        const std::size_t v = kind == "np" ? static_cast<std::size_t>(id) : inst.noun_phrases + static_cast<std::size_t>(id);
        inst.seeds.push_back({static_cast<VertexId>(v), static_cast<std::size_t>(label)});
      }
    }
  }
  CoemGraph graph = build_coem_graph(inst);
  SharedDataTable table;
  const EngineConfig config = g.engine(ConsistencyModel::Edge);
  const RunStats stats = run_coem(graph, table, config, CoemOptions{a.threshold});
  if (!a.beliefs_out.empty()) write_vertex_tsv_file(a.beliefs_out, coem_beliefs(graph));
  std::cout << "vertices\t" << graph.num_vertices() << "\nupdates\t" << stats.updates_applied << '\n';
  write_stats(g, stats, config);
  return 0;
}

int run_lasso(const GlobalOptions& g, const LassoArgs& a) {
  LassoProblem problem;
  if (!a.synthetic.empty()) {
    if (!a.x.empty() || !a.y.empty()) throw ContractViolation("--synthetic excludes --X and --y");
    const auto [n, p] = parse_dims(a.synthetic);
    RegressionInstance inst = make_sparse_regression(n, p, a.density, a.noise, g.seed);
    problem.X = std::move(inst.X);
    problem.y = std::move(inst.y);
  } else {
    if (a.x.empty() || a.y.empty()) throw ContractViolation("give --X and --y, or --synthetic");
    problem.X = read_matrix_market_file(a.x);
    problem.y = read_matrix_market_vector_file(a.y);
  }
  problem.lambda = a.lambda;
  problem.validate();

  LassoOptions options;
  options.config = g.engine(ConsistencyModel::Full);
  options.max_sweeps = a.max_sweeps;
  const LassoResult result = solve_lasso(problem, options);
  std::cout << "objective\t" << format_double(result.objective) << "\nkkt\t" << format_double(result.kkt)
            << "\nnonzeros\t" << std::count_if(result.w.begin(), result.w.end(), [](double w) { return w != 0.0; })
            << "\nupdates\t" << result.updates << '\n';
  if (!a.weights_out.empty()) {
    std::vector<std::vector<double>> rows;
    for (double w : result.w) rows.push_back({w});
    write_vertex_tsv_file(a.weights_out, rows);
  }
  RunStats stats;
  stats.updates_applied = result.updates;
  stats.wall_time_s = result.wall_time_s;
  write_stats(g, stats, options.config);
  return 0;
}

int run_gabp(const GlobalOptions& g, const GabpArgs& a) {
  SparseMatrix A;
  std::vector<double> b;
  if (a.synthetic > 0) {
    if (!a.a.empty() || !a.b.empty()) throw ContractViolation("--synthetic excludes --A and --b");
    std::tie(A, b) = random_dominant_system(a.synthetic, g.seed);
  } else {
    if (a.a.empty() || a.b.empty()) throw ContractViolation("give --A and --b, or --synthetic N");
    A = read_matrix_market_file(a.a);
    b = read_matrix_market_vector_file(a.b);
  }
  GabpGraph graph = build_gabp_graph(A, b);
  SharedDataTable table;
  const EngineConfig config = g.engine(ConsistencyModel::Edge);
  const RunStats stats = scopeflow::run_gabp(graph, table, config, GabpOptions{a.bound});
  const std::vector<double> x = gabp_solution(graph);
  std::cout << "n\t" << x.size() << "\nupdates\t" << stats.updates_applied << '\n';
  if (a.check) {
    if (x.size() > kMaxCheckSize) {
      std::cout << "check\tskipped (n > " << kMaxCheckSize << ")\n";
    } else {
      const std::vector<double> direct = dense_solve(A.dense(), b);
      double err = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) err = std::max(err, std::abs(x[i] - direct[i]));
      std::cout << "sup_error\t" << format_double(err) << '\n';
    }
  }
  if (!a.solution_out.empty()) {
    std::vector<std::vector<double>> rows;
    for (double v : x) rows.push_back({v});
    write_vertex_tsv_file(a.solution_out, rows);
  }
  write_stats(g, stats, config);
  return 0;
}

int run_bench(const GlobalOptions& g, const BenchArgs& a) {
  std::size_t rows = 0;
  for (std::size_t workers : a.workers) {
    for (const auto& scheduler : a.schedulers) {
      for (const auto& model : a.models) {
        GlobalOptions run = g;
        run.workers = workers;
        run.scheduler = scheduler;
        run.model = model;
        const EngineConfig config = run.engine(ConsistencyModel::Edge);
        BenchmarkRecord rec;
        rec.algorithm = a.algorithm;
        rec.workers = workers;
        rec.scheduler = std::string(to_string(config.scheduler.kind));
        rec.model = std::string(to_string(config.model));
        rec.seed = g.seed;
        if (a.algorithm == "denoise") {
          const std::string size = a.size.empty() ? "64x64" : a.size;
          const auto [h, w] = parse_dims(size);
          rec.dataset = "rings-" + size;
          const DenoiseOutcome out = denoise_once(make_ring_instance(h, w, 5, 0.5, g.seed), config, {1.0, 1.0}, 1e-5);
          rec.updates = out.stats.updates_applied;
          rec.wall_time_s = out.stats.wall_time_s;
          rec.objective_or_residual = out.error;
        } else if (a.algorithm == "lasso") {
          const std::string size = a.size.empty() ? "500x200" : a.size;
          const auto [n, p] = parse_dims(size);
          rec.dataset = "sparse-" + size;
          RegressionInstance inst = make_sparse_regression(n, p, 0.05, 0.1, g.seed);
          LassoOptions options;
          options.config = config;
          const LassoResult r = solve_lasso(LassoProblem{inst.X, inst.y, 1.0}, options);
          rec.updates = r.updates;
          rec.wall_time_s = r.wall_time_s;
          rec.objective_or_residual = r.objective;
        } else if (a.algorithm == "gabp") {
          const std::size_t n = a.size.empty() ? 200 : parse_count(a.size, "system size");
          rec.dataset = "dominant-" + std::to_string(n);
          auto [A, b] = random_dominant_system(n, g.seed);
          GabpGraph graph = build_gabp_graph(A, b);
          SharedDataTable table;
          const RunStats s = scopeflow::run_gabp(graph, table, config, GabpOptions{});
          const std::vector<double> x = gabp_solution(graph);
          const std::vector<double> Ax = A.multiply(x);
          double res = 0.0;
          for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(Ax[i] - b[i]));
          rec.updates = s.updates_applied;
          rec.wall_time_s = s.wall_time_s;
          rec.objective_or_residual = res;
        } else if (a.algorithm == "coem") {
          const std::string size = a.size.empty() ? "1000x200" : a.size;
          const auto [np, ct] = parse_dims(size);
          rec.dataset = "bipartite-" + size;
          CoemGraph graph = build_coem_graph(make_random_coem(np, ct, 2, 4.0, 0.1, g.seed));
          SharedDataTable table;
          const RunStats s = scopeflow::run_coem(graph, table, config, CoemOptions{});
          rec.updates = s.updates_applied;
          rec.wall_time_s = s.wall_time_s;
        } else {
          throw ContractViolation("unknown bench algorithm '" + a.algorithm + "' (denoise, lasso, gabp, coem)");
        }
        append_benchmark(a.out, rec);
        std::cout << to_row(rec) << '\n';
        ++rows;
      }
    }
  }
  std::cout << "rows\t" << rows << '\n';
  return 0;
}

}  // namespace scopeflow::cli
