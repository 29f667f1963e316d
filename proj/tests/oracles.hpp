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


// Independent reference computations for tests: brute-force enumeration
// and dense Eigen solves. Nothing here calls the engine.

#ifndef SCOPEFLOW_TESTS_ORACLES_HPP
#define SCOPEFLOW_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <vector>

#include "scopeflow/algorithms/coem.hpp"
#include "scopeflow/algorithms/mrf.hpp"
#include "scopeflow/sparse.hpp"

namespace scopeflow::oracle {

/// Exact single-vertex marginals by enumerating every joint state.
inline std::vector<std::vector<double>> enumerate_marginals(const PairwiseMrf& mrf) {
  const std::size_t n = mrf.num_vertices();
  const std::size_t K = mrf.labels;
  std::vector<std::vector<double>> marg(n, std::vector<double>(K, 0.0));
  std::vector<std::size_t> x(n, 0);
  double z = 0.0;
  while (true) {
    double p = 1.0;
    for (std::size_t v = 0; v < n; ++v) p *= mrf.node_potentials[v][x[v]];
    for (const auto& e : mrf.edges) {
      const double d = std::abs(static_cast<double>(x[e.u]) - static_cast<double>(x[e.v]));
      p *= std::exp(-mrf.lambda[e.axis] * d);
    }
    z += p;
    for (std::size_t v = 0; v < n; ++v) marg[v][x[v]] += p;
    std::size_t i = 0;
    while (i < n && ++x[i] == K) x[i++] = 0;
    if (i == n) break;
  }
  for (auto& m : marg) {
    for (double& v : m) v /= z;
  }
  return marg;
}

inline double sup_diff(const std::vector<std::vector<double>>& a,
                       const std::vector<std::vector<double>>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < a[i].size(); ++k) worst = std::max(worst, std::abs(a[i][k] - b[i][k]));
  }
  return worst;
}

inline double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

/// Random MRF whose edges form a random recursive tree.
inline PairwiseMrf random_tree_mrf(std::mt19937_64& rng, std::size_t n, std::size_t labels) {
  std::uniform_real_distribution<double> pot(0.05, 1.0);
  std::uniform_real_distribution<double> lam(0.1, 2.0);
  PairwiseMrf mrf;
  mrf.labels = labels;
  mrf.lambda = {lam(rng), lam(rng)};
  mrf.node_potentials.assign(n, std::vector<double>(labels));
  for (auto& p : mrf.node_potentials) {
    for (double& v : p) v = pot(rng);
  }
  for (std::size_t v = 1; v < n; ++v) {
    const auto parent = static_cast<VertexId>(rng() % v);
    mrf.edges.push_back({parent, static_cast<VertexId>(v), static_cast<std::uint8_t>(rng() % 2)});
  }
  return mrf;
}

/// Random MRF with an arbitrary (possibly cyclic) edge set.
inline PairwiseMrf random_mrf(std::mt19937_64& rng, std::size_t n, std::size_t labels, double p_edge) {
  std::uniform_real_distribution<double> pot(0.05, 1.0);
  std::uniform_real_distribution<double> lam(0.1, 1.5);
  std::bernoulli_distribution coin(p_edge);
  PairwiseMrf mrf;
  mrf.labels = labels;
  mrf.lambda = {lam(rng)};
  mrf.node_potentials.assign(n, std::vector<double>(labels));
  for (auto& p : mrf.node_potentials) {
    for (double& v : p) v = pot(rng);
  }
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (coin(rng)) mrf.edges.push_back({u, v, 0});
    }
  }
  return mrf;
}

inline Eigen::MatrixXd to_eigen(const SparseMatrix& m) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
  for (const auto& t : m.entries) out(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) = t.value;
  return out;
}

inline std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

inline std::vector<double> dense_solve(const SparseMatrix& A, const std::vector<double>& b) {
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  return to_std(to_eigen(A).fullPivLu().solve(rhs));
}

/// Random symmetric strictly diagonally dominant system.
inline std::pair<SparseMatrix, std::vector<double>> random_dominant_system(std::mt19937_64& rng, std::size_t n,
                                                                           double density) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::bernoulli_distribution coin(density);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < A.cols(); ++j) {
      if (coin(rng)) A(i, j) = A(j, i) = unit(rng);
    }
  }
  for (Eigen::Index i = 0; i < A.rows(); ++i) A(i, i) = A.row(i).cwiseAbs().sum() + 0.1 + std::abs(unit(rng));
  std::vector<double> dense(n * n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dense[i * n + j] = A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    b[i] = unit(rng);
  }
  return {from_dense(n, n, dense), b};
}

/**
 * CoEM fixed point: every unseeded vertex holds the weighted average of
 * its neighbors. Vertices in components without seeds keep the uniform
 * start; the rest solve (D - W) b = W_seed b_seed per class.
 */
inline std::vector<std::vector<double>> coem_fixed_point(const CoemInstance& inst) {
  const std::size_t n = inst.noun_phrases + inst.contexts;
  const std::size_t K = inst.classes;
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& l : inst.links) {
    adj[l.noun_phrase].push_back({l.context, l.weight});
    adj[l.context].push_back({l.noun_phrase, l.weight});
  }
  std::vector<int> seed_label(n, -1);
  for (const auto& s : inst.seeds) seed_label[s.vertex] = static_cast<int>(s.label);

  // Components reachable from a seed.
  std::vector<bool> anchored(n, false);
  std::queue<std::size_t> q;
  for (std::size_t v = 0; v < n; ++v) {
    if (seed_label[v] >= 0) {
      anchored[v] = true;
      q.push(v);
    }
  }
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop();
    for (auto [u, w] : adj[v]) {
      if (!anchored[u]) {
        anchored[u] = true;
        q.push(u);
      }
    }
  }

  std::vector<std::vector<double>> belief(n, std::vector<double>(K, 1.0 / static_cast<double>(K)));
  std::vector<int> index(n, -1);
  int m = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (seed_label[v] >= 0) {
      belief[v].assign(K, 0.0);
      belief[v][static_cast<std::size_t>(seed_label[v])] = 1.0;
    } else if (anchored[v] && !adj[v].empty()) {
      index[v] = m++;
    }
  }
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, static_cast<Eigen::Index>(K));
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) continue;
    for (auto [u, w] : adj[v]) {
      L(index[v], index[v]) += w;
      if (index[u] >= 0) {
        L(index[v], index[u]) -= w;
      } else {
        for (std::size_t k = 0; k < K; ++k) rhs(index[v], static_cast<Eigen::Index>(k)) += w * belief[u][k];
      }
    }
  }
  const Eigen::MatrixXd sol = L.fullPivLu().solve(rhs);
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) continue;
    for (std::size_t k = 0; k < K; ++k) belief[v][k] = sol(index[v], static_cast<Eigen::Index>(k));
  }
  return belief;
}

/// Lasso minimizer with lambda = 0: least squares via normal equations.
inline std::vector<double> least_squares(const SparseMatrix& X, const std::vector<double>& y) {
  const Eigen::MatrixXd A = to_eigen(X);
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  return to_std((A.transpose() * A).ldlt().solve(A.transpose() * rhs));
}

}  // namespace scopeflow::oracle

#endif
