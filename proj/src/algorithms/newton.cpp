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


#include "scopeflow/algorithms/newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace scopeflow {

namespace {

/// Dense Gram matrix X^T X, row-major p x p.
std::vector<double> gram(const SparseMatrix& X) {
  const std::size_t p = X.cols;
  std::vector<std::vector<Triplet>> rows(X.rows);
  for (const auto& t : X.entries) rows[t.row].push_back(t);
  std::vector<double> G(p * p, 0.0);
  for (const auto& row : rows) {
    for (const auto& a : row) {
      for (const auto& b : row) G[a.col * p + b.col] += a.value * b.value;
    }
  }
  return G;
}

struct GapInputs {
  double zz = 0.0;  // |X~ w - y~|^2
  double zy = 0.0;  // (X~ w - y~)^T y~
  double lambda1 = 0.0;
};

struct GapAcc {
  double max_grad = 0.0;
  double l1 = 0.0;
};

}  // namespace

void ElasticNetProblem::validate() const {
  X.validate();
  if (y.size() != X.rows) throw ContractViolation("y has " + std::to_string(y.size()) +
                                                  " entries but X has " +
                                                  std::to_string(X.rows) + " rows");
  if (!(lambda1 > 0.0)) throw ContractViolation("lambda1 must be positive");
  if (!(lambda2 >= 0.0)) throw ContractViolation("lambda2 must be non-negative");
}

double dominance_ridge(const SparseMatrix& X) {
  const std::size_t p = X.cols;
  const std::vector<double> G = gram(X);
  double ridge = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      if (j != i) off += std::abs(G[i * p + j]);
    }
    ridge = std::max(ridge, off - G[i * p + i]);
  }
  return ridge;
}

double elastic_net_objective(const ElasticNetProblem& problem, const std::vector<double>& w) {
  std::vector<double> r = problem.X.multiply(w);
  double value = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) value += (r[j] - problem.y[j]) * (r[j] - problem.y[j]);
  for (double wi : w) value += problem.lambda1 * std::abs(wi) + problem.lambda2 * wi * wi;
  return value;
}

NewtonResult solve_elastic_net(const ElasticNetProblem& problem, const NewtonOptions& options) {
  problem.validate();
  const std::size_t p = problem.X.cols;
  const double l1 = problem.lambda1;

  // Everything below works on the augmented design through its Gram matrix.
  std::vector<double> G = gram(problem.X);
  for (std::size_t i = 0; i < p; ++i) G[i * p + i] += problem.lambda2;
  const std::vector<double> c = problem.X.multiply_transpose(problem.y);
  double yy = 0.0;
  for (double v : problem.y) yy += v * v;

  auto gw = [&](const std::vector<double>& w) {
    std::vector<double> out(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) out[i] += G[i * p + j] * w[j];
    }
    return out;
  };
  auto rss = [&](const std::vector<double>& w) {
    const std::vector<double> Gw = gw(w);
    double v = yy;
    for (std::size_t i = 0; i < p; ++i) v += w[i] * Gw[i] - 2.0 * c[i] * w[i];
    return v;
  };
  auto barrier = [&](const std::vector<double>& w, const std::vector<double>& u, double t) {
    double v = t * rss(w);
    for (std::size_t i = 0; i < p; ++i) {
      const double s = (u[i] + w[i]) * (u[i] - w[i]);
      if (!(u[i] + w[i] > 0.0) || !(u[i] - w[i] > 0.0)) return std::numeric_limits<double>::infinity();
      v += t * l1 * u[i] - std::log(s);
    }
    return v;
  };

  // Sparsity pattern of every Newton system is that of G.
  SparseMatrix pattern{p, p, {}};
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (i == j || G[i * p + j] != 0.0) pattern.entries.push_back({i, j, i == j ? 1.0 : G[i * p + j]});
    }
  }
  GabpGraph graph = build_gabp_graph(pattern, std::vector<double>(p, 0.0));
  SharedDataTable table;
  Engine<GabpGraph> engine(graph, table, options.config);
  const FunctionId f = engine.add_function(make_gabp_update(options.gabp));

  auto inputs = std::make_shared<GapInputs>();
  inputs->lambda1 = l1;
  engine.register_sync(make_sync<GabpGraph>(
      kDualityGapKey, GapAcc{},
      [](Scope<GabpGraph>& s, GapAcc acc) {
        acc.max_grad = std::max(acc.max_grad, std::abs(2.0 * s.vertex_data().gradient));
        acc.l1 += std::abs(s.vertex_data().iterate);
        return acc;
      },
      [](GapAcc a, GapAcc b) {
        return GapAcc{std::max(a.max_grad, b.max_grad), a.l1 + b.l1};
      },
      [inputs](const GapAcc& acc) {
        // Dual point nu = 2 s z with s scaled so |X~^T nu|_inf <= lambda1.
        const double s = acc.max_grad > inputs->lambda1 ? inputs->lambda1 / acc.max_grad : 1.0;
        const double dual = -s * s * inputs->zz - 2.0 * s * inputs->zy;
        const double primal = inputs->zz + inputs->lambda1 * acc.l1;
        return primal - dual;
      }));

  std::vector<double> w(p, 0.0), u(p, 1.0);
  double t = std::min(std::max(1.0, 1.0 / l1), 2.0 * static_cast<double>(p) / 1e-3);

  NewtonResult result;
  std::vector<double> D1(p), D2(p), grad_w(p), grad_u(p), scale(p);
  std::vector<double> rhs(p);
  while (true) {
    // Refresh the outer-loop state on the graph, then sync the gap.
    const std::vector<double> Gw = gw(w);
    double cw = 0.0, wGw = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      cw += c[i] * w[i];
      wGw += w[i] * Gw[i];
      graph.vertex_data(static_cast<VertexId>(i)).iterate = w[i];
      graph.vertex_data(static_cast<VertexId>(i)).gradient = Gw[i] - c[i];
    }
    inputs->zz = wGw - 2.0 * cw + yy;
    inputs->zy = cw - yy;
    const double gap = std::any_cast<double>(engine.sync_now(kDualityGapKey));
    result.gap = gap;
    result.gap_trace.push_back(gap);
    if (gap < options.gap_tolerance) {
      result.converged = true;
      result.stop_reason = "gap";
      break;
    }
    if (result.iterations >= options.max_iterations) {
      result.stop_reason = "max_iterations";
      break;
    }

    // Reduced Newton system, posed for the next iterate w + dw so that
    // consecutive solutions (and converged messages) stay close, and
    // symmetrically scaled to unit diagonal.
    for (std::size_t i = 0; i < p; ++i) {
      const double q1 = 1.0 / (u[i] + w[i]);
      const double q2 = 1.0 / (u[i] - w[i]);
      grad_w[i] = 2.0 * t * (Gw[i] - c[i]) - q1 + q2;
      grad_u[i] = t * l1 - q1 - q2;
      D1[i] = q1 * q1 + q2 * q2;
      D2[i] = q1 * q1 - q2 * q2;
    }
    SparseMatrix system{p, p, {}};
    system.entries.reserve(pattern.entries.size());
    std::vector<double> diag(p);
    for (std::size_t i = 0; i < p; ++i) {
      diag[i] = 2.0 * t * G[i * p + i] + D1[i] - D2[i] * D2[i] / D1[i];
      scale[i] = 1.0 / std::sqrt(diag[i]);
    }
    for (std::size_t i = 0; i < p; ++i) {
      double aw = diag[i] * w[i];
      for (std::size_t j = 0; j < p; ++j) {
        if (j != i) aw += 2.0 * t * G[i * p + j] * w[j];
      }
      rhs[i] = (aw - grad_w[i] + D2[i] * grad_u[i] / D1[i]) * scale[i];
    }
    for (const auto& e : pattern.entries) {
      const double a = e.row == e.col ? 1.0 : 2.0 * t * G[e.row * p + e.col] * scale[e.row] * scale[e.col];
      system.entries.push_back({e.row, e.col, a});
    }
    set_gabp_system(graph, system, rhs);
    if (!options.warm_start) reset_gabp_messages(graph);
    if (!is_generated(options.config.scheduler.kind)) engine.add_task_to_all(f, 1.0);
    const RunStats stats = engine.run();
    result.gabp_updates.push_back(stats.updates_applied);

    const std::vector<double> x = gabp_solution(graph);
    std::vector<double> dw(p), du(p);
    double slope = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      dw[i] = x[i] * scale[i] - w[i];
      du[i] = (-grad_u[i] - D2[i] * dw[i]) / D1[i];
      slope += grad_w[i] * dw[i] + grad_u[i] * du[i];
    }

    const double phi = barrier(w, u, t);
    double step = 1.0;
    bool accepted = false;
    std::vector<double> nw(p), nu(p);
    for (std::size_t k = 0; k < options.max_line_search; ++k) {
      for (std::size_t i = 0; i < p; ++i) {
        nw[i] = w[i] + step * dw[i];
        nu[i] = u[i] + step * du[i];
      }
      if (barrier(nw, nu, t) <= phi + options.alpha * step * slope) {
        accepted = true;
        break;
      }
      step *= options.beta;
    }
    ++result.iterations;
    if (!accepted) {
      result.stop_reason = "line_search";
      break;
    }
    w = nw;
    u = nu;
    if (step >= 0.5) {
      t = std::max(std::min(2.0 * static_cast<double>(p) * options.mu / gap, options.mu * t), t);
    }
  }
  result.w = w;
  return result;
}

}  // namespace scopeflow
