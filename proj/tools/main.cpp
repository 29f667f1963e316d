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


#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDivergence = 3;

// Maps an exception to the documented exit code, unwrapping update errors.
int report(std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const scopeflow::UpdateError& e) {
    std::cerr << "error: " << e.what() << '\n';
    try {
      std::rethrow_exception(e.cause());
    } catch (const scopeflow::NumericalError&) {
      return kExitDivergence;
    } catch (...) {
      return kExitFailure;
    }
  } catch (const scopeflow::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const scopeflow::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const scopeflow::ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace scopeflow::cli;
  CLI::App app{"scopeflow: asynchronous graph-parallel machine learning"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--stats-out", g.stats_out, "Write run statistics CSV here");
  app.add_option("--scheduler", g.scheduler,
                 "sync, round-robin, fifo, multiqueue, partitioned, priority, approx-priority")
      ->capture_default_str();
  app.add_option("--model", g.model, "Consistency model: full, edge, vertex");
  app.add_option("--workers", g.workers, "Worker threads")->capture_default_str();
  app.add_option("--sweeps", g.sweeps, "Gibbs sweeps, or passes of sync/round-robin schedules");

  DenoiseArgs denoise;
  auto* d = app.add_subcommand("denoise", "Loopy BP image denoising on a grid MRF");
  auto* d_syn = d->add_option("--synthetic,--grid", denoise.synthetic, "Synthetic HxW ring image");
  auto* d_in = d->add_option("--input", denoise.input, "Noisy plain PGM input");
  d_syn->excludes(d_in);
  d->add_option("--output", denoise.output, "Denoised PGM output");
  d->add_option("--noisy-out", denoise.noisy_out, "Write the rounded noisy input as PGM");
  d->add_option("--labels", denoise.labels, "Number of labels K")->capture_default_str();
  d->add_option("--noise", denoise.noise, "Observation noise std-dev, in label units")->capture_default_str();
  d->add_option("--lambda", denoise.lambda, "Smoothing per axis (one or two values)")->delimiter(',');
  d->add_option("--true-lambda", denoise.true_lambda, "Sample the synthetic image from a grid MRF with these parameters")
      ->delimiter(',');
  d->add_option("--bound", denoise.bound, "Residual below which messages are not rescheduled")->capture_default_str();
  d->add_flag("--learn-params", denoise.learn_params, "Learn the smoothing parameters during inference");
  d->add_option("--learn-period", denoise.learn_period_ms, "Learning sync period in ms")->capture_default_str();
  d->add_flag("--expectation", denoise.expectation, "Output the belief expectation instead of the argmax");

  GibbsArgs gibbs;
  auto* gs = app.add_subcommand("gibbs", "Graph coloring followed by chromatic Gibbs sampling");
  auto* gs_graph = gs->add_option("--graph", gibbs.graph, "Edge list (src dst coupling)");
  auto* gs_syn = gs->add_option("--synthetic", gibbs.synthetic, "chain:N, grid:HxW, triangle or random:N:DEGREE");
  gs_graph->excludes(gs_syn);
  gs->add_option("--labels", gibbs.labels, "Labels per vertex")->capture_default_str();
  gs->add_option("--coupling", gibbs.coupling, "Laplace coupling of synthetic edges")->capture_default_str();
  gs->add_option("--marginals-out", gibbs.marginals_out, "Empirical marginals TSV");
  gs->add_option("--histogram-out", gibbs.histogram_out, "Color histogram TSV");

  CoemArgs coem;
  auto* ce = app.add_subcommand("coem", "Co-EM label propagation on a bipartite graph");
  auto* ce_graph = ce->add_option("--graph", coem.graph, "Edge list (noun-phrase context weight)");
  auto* ce_syn = ce->add_option("--synthetic", coem.synthetic, "NPxCT random bipartite instance");
  ce_graph->excludes(ce_syn);
  ce->add_option("--seeds", coem.seeds, "Seed labels: 'np|ct id label' per line");
  ce->add_option("--classes", coem.classes, "Number of classes")->capture_default_str();
  ce->add_option("--degree", coem.degree, "Mean noun-phrase degree of synthetic instances")->capture_default_str();
  ce->add_option("--seed-fraction", coem.seed_fraction, "Fraction of seeded vertices")->capture_default_str();
  ce->add_option("--threshold", coem.threshold, "Belief change that reschedules neighbors")->capture_default_str();
  ce->add_option("--beliefs-out", coem.beliefs_out, "Beliefs TSV");

  LassoArgs lasso;
  auto* la = app.add_subcommand("lasso", "Shooting coordinate descent for the Lasso");
  la->add_option("--X", lasso.x, "MatrixMarket design matrix, observations x features");
  la->add_option("--y", lasso.y, "MatrixMarket target vector");
  la->add_option("--synthetic", lasso.synthetic, "NxP random sparse regression");
  la->add_option("--density", lasso.density, "Synthetic nonzero fraction")->capture_default_str();
  la->add_option("--noise", lasso.noise, "Synthetic target noise")->capture_default_str();
  la->add_option("--lambda", lasso.lambda, "L1 penalty")->capture_default_str();
  la->add_option("--max-sweeps", lasso.max_sweeps, "Pass limit for sync/round-robin schedules")->capture_default_str();
  la->add_option("--weights-out", lasso.weights_out, "Weights TSV");

  GabpArgs gabp;
  auto* gb = app.add_subcommand("gabp", "Gaussian BP linear solver");
  gb->add_option("--A", gabp.a, "MatrixMarket symmetric matrix");
  gb->add_option("--b", gabp.b, "MatrixMarket right-hand side");
  gb->add_option("--synthetic", gabp.synthetic, "Random diagonally dominant system of size N");
  gb->add_flag("--check", gabp.check, "Report the sup-norm error against a direct solve");
  gb->add_option("--bound", gabp.bound, "Message residual that reschedules")->capture_default_str();
  gb->add_option("--solution-out", gabp.solution_out, "Solution TSV");

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "Sweep workers x schedulers x models and append CSV records");
  be->add_option("--algorithm", bench.algorithm, "denoise, lasso, gabp or coem")->capture_default_str();
  be->add_option("--size", bench.size, "Dataset size (HxW, NxP, N or NPxCT)");
  be->add_option("--workers-list", bench.workers, "Worker counts")->delimiter(',');
  be->add_option("--schedulers", bench.schedulers, "Scheduler names")->delimiter(',');
  be->add_option("--models", bench.models, "Consistency models")->delimiter(',');
  be->add_option("--out", bench.out, "CSV file to append to")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*d) return run_denoise(g, denoise);
    if (*gs) return run_gibbs(g, gibbs);
    if (*ce) return run_coem(g, coem);
    if (*la) return run_lasso(g, lasso);
    if (*gb) return run_gabp(g, gabp);
    if (*be) return run_bench(g, bench);
  } catch (...) {
    return report(std::current_exception());
  }
  return kExitFailure;
}
