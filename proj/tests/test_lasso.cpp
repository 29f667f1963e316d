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


#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "scopeflow/algorithms/lasso.hpp"

using namespace scopeflow;

namespace {

LassoOptions options_for(SchedulerKind kind, ConsistencyModel model, std::size_t workers = 1) {
  LassoOptions o;
  o.config = EngineConfig{workers, model, {kind}};
  return o;
}

}  // namespace

TEST_CASE("lasso: soft threshold") {
  CHECK(soft_threshold(3.0, 1.0) == 2.0);
  CHECK(soft_threshold(-3.0, 1.0) == -2.0);
  CHECK(soft_threshold(0.5, 1.0) == 0.0);
  CHECK(soft_threshold(-1.0, 1.0) == 0.0);
}

TEST_CASE("lasso: scalar instance has the analytic minimizer") {
  // (w - 1)^2 + lambda |w|: w = 0.5 at lambda = 1, w = 0 once lambda >= 2.
  const SparseMatrix X = from_dense(1, 1, {1.0});
  for (auto kind : {SchedulerKind::Priority, SchedulerKind::RoundRobin}) {
    CHECK(solve_lasso(LassoProblem{X, {1.0}, 1.0}, options_for(kind, ConsistencyModel::Full)).w[0] ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(solve_lasso(LassoProblem{X, {1.0}, 2.0}, options_for(kind, ConsistencyModel::Full)).w[0] == 0.0);
    CHECK(solve_lasso(LassoProblem{X, {1.0}, 3.5}, options_for(kind, ConsistencyModel::Full)).w[0] == 0.0);
  }
}

TEST_CASE("lasso: lambda zero on a square well-conditioned design is least squares") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  const std::size_t n = 8;
  std::vector<double> dense(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dense[i * n + j] = (i == j ? 3.0 : 0.0) + 0.3 * normal(rng);
  }
  std::vector<double> y(n);
  for (double& v : y) v = normal(rng);
  const LassoProblem problem{from_dense(n, n, dense), y, 0.0};
  LassoOptions o = options_for(SchedulerKind::Priority, ConsistencyModel::Full);
  o.epsilon = 1e-14;
  const LassoResult r = solve_lasso(problem, o);
  CHECK(oracle::sup_diff(r.w, oracle::least_squares(problem.X, y)) < 1e-6);
}

TEST_CASE("lasso: an all-zero column keeps its weight at zero") {
  const LassoProblem problem{from_dense(3, 2, {1.0, 0.0, 2.0, 0.0, -1.0, 0.0}), {1.0, 2.0, 0.5}, 0.1};
  const LassoResult r = solve_lasso(problem, options_for(SchedulerKind::FifoSingle, ConsistencyModel::Full));
  CHECK(r.w[1] == 0.0);
  CHECK(r.kkt < 1e-6);
}

TEST_CASE("lasso: round-robin objective never increases and reaches the KKT tolerance") {
  const RegressionInstance inst = make_sparse_regression(120, 60, 0.1, 0.1, 13);
  const LassoProblem problem{inst.X, inst.y, 0.5};
  const LassoResult r = solve_lasso(problem, options_for(SchedulerKind::RoundRobin, ConsistencyModel::Full, 2));
  REQUIRE(r.objective_trace.size() >= 2);
  for (std::size_t i = 1; i < r.objective_trace.size(); ++i) {
    CHECK(r.objective_trace[i] <= r.objective_trace[i - 1] * (1 + 1e-12));
  }
  CHECK(r.kkt <= 1e-4);
  CHECK(lasso_kkt(problem, r.w) == doctest::Approx(r.kkt).epsilon(1e-6));
  CHECK(lasso_objective(problem, r.w) == doctest::Approx(r.objective).epsilon(1e-9));
}

TEST_CASE("lasso: dynamic schedules agree with the sequential reference") {
  const RegressionInstance inst = make_sparse_regression(200, 80, 0.05, 0.1, 2);
  const LassoProblem problem{inst.X, inst.y, 1.0};
  const double reference =
      solve_lasso(problem, options_for(SchedulerKind::RoundRobin, ConsistencyModel::Full, 1)).objective;
  for (auto kind : {SchedulerKind::Priority, SchedulerKind::FifoMultiQueue, SchedulerKind::ApproxPriority}) {
    for (auto model : {ConsistencyModel::Full, ConsistencyModel::Vertex}) {
      const LassoResult r = solve_lasso(problem, options_for(kind, model, 3));
      CHECK(r.kkt <= 1e-4);
      CHECK(r.objective == doctest::Approx(reference).epsilon(1e-6));
    }
  }
}

TEST_CASE("lasso: large lambda zeroes every weight") {
  const RegressionInstance inst = make_sparse_regression(50, 20, 0.2, 0.1, 5);
  const std::vector<double> xty = inst.X.multiply_transpose(inst.y);
  double max_corr = 0.0;
  for (double v : xty) max_corr = std::max(max_corr, std::abs(v));
  const LassoResult r =
      solve_lasso(LassoProblem{inst.X, inst.y, 2.0 * max_corr * 1.001},
                  options_for(SchedulerKind::Priority, ConsistencyModel::Full));
  for (double w : r.w) CHECK(w == 0.0);
}

TEST_CASE("lasso: graph has an edge exactly where X is nonzero") {
  const RegressionInstance inst = make_sparse_regression(30, 10, 0.2, 0.0, 6);
  const LassoGraph g = build_lasso_graph(LassoProblem{inst.X, inst.y, 1.0});
  CHECK(g.num_edges() == inst.X.entries.size());
  for (const auto& t : inst.X.entries) {
    const auto e = g.structure().find_edge(static_cast<VertexId>(t.col), static_cast<VertexId>(10 + t.row));
    REQUIRE(e);
    CHECK(g.edge_data(*e).x == t.value);
  }
}

TEST_CASE("lasso: invalid problems are rejected") {
  CHECK_THROWS_AS((LassoProblem{from_dense(2, 1, {1.0, 1.0}), {1.0}, 1.0}.validate()), ContractViolation);
  CHECK_THROWS_AS((LassoProblem{from_dense(1, 1, {1.0}), {1.0}, -1.0}.validate()), ContractViolation);
}
