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


#include "scopeflow/algorithms/mrf.hpp"

#include <cmath>
#include <string>

namespace scopeflow {

void PairwiseMrf::validate() const {
  if (labels < 2) throw ContractViolation("an MRF needs at least two labels");
  for (std::size_t v = 0; v < node_potentials.size(); ++v) {
    const auto& p = node_potentials[v];
    if (p.size() != labels) {
      throw ContractViolation("vertex " + std::to_string(v) + " has " + std::to_string(p.size()) +
                              " potentials, expected " + std::to_string(labels));
    }
    for (double x : p) {
      if (!(x >= 0.0) || !std::isfinite(x)) {
        throw ContractViolation("vertex " + std::to_string(v) + " has an invalid potential");
      }
    }
  }
  for (const auto& e : edges) {
    if (e.u == e.v || e.u >= num_vertices() || e.v >= num_vertices()) {
      throw ContractViolation("invalid MRF edge " + std::to_string(e.u) + "-" +
                              std::to_string(e.v));
    }
    if (e.axis >= lambda.size()) {
      throw ContractViolation("MRF edge axis " + std::to_string(e.axis) + " has no lambda");
    }
  }
  for (double l : lambda) {
    if (!(l >= 0.0)) throw ContractViolation("lambda must be non-negative");
  }
}

std::vector<double> laplace_table(double lambda, std::size_t labels) {
  std::vector<double> t(labels * labels);
  for (std::size_t a = 0; a < labels; ++a) {
    for (std::size_t b = 0; b < labels; ++b) t[a * labels + b] = laplace_potential(lambda, a, b);
  }
  return t;
}

PairwiseMrf grid_mrf(std::size_t height, std::size_t width, std::size_t labels,
                     std::vector<double> lambda) {
  PairwiseMrf mrf;
  mrf.labels = labels;
  mrf.lambda = std::move(lambda);
  mrf.node_potentials.assign(height * width, std::vector<double>(labels, 1.0));
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const auto v = static_cast<VertexId>(r * width + c);
      if (c + 1 < width) mrf.edges.push_back(MrfEdge{v, v + 1, 0});
      if (r + 1 < height) mrf.edges.push_back(MrfEdge{v, static_cast<VertexId>(v + width), 1});
    }
  }
  return mrf;
}

void normalize(std::vector<double>& p, const char* what) {
  double sum = 0.0;
  for (double x : p) sum += x;
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw NumericalError(std::string("degenerate potential: zero normalizer in ") + what);
  }
  for (double& x : p) x /= sum;
}

}  // namespace scopeflow
