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


#ifndef SCOPEFLOW_ALGORITHMS_MRF_HPP
#define SCOPEFLOW_ALGORITHMS_MRF_HPP

#include <cstddef>
#include <cmath>
#include <cstdint>
#include <vector>

#include "scopeflow/types.hpp"

namespace scopeflow {

struct MrfEdge {
  VertexId u = 0;
  VertexId v = 0;
  std::uint8_t axis = 0;
};

/**
 * \brief Discrete pairwise MRF with Laplace smoothing potentials
 * psi(a, b) = exp(-lambda[axis] * |a - b|) on labels 0..K-1.
 *
 * Edges are undirected; each unordered pair appears at most once.
 */
struct PairwiseMrf {
  std::size_t labels = 2;
  std::vector<std::vector<double>> node_potentials;
  std::vector<MrfEdge> edges;
  std::vector<double> lambda{1.0};

  std::size_t num_vertices() const { return node_potentials.size(); }
  /// Throws ContractViolation on wrong potential sizes, negative entries,
  /// unknown axes, self loops or out-of-range endpoints.
  void validate() const;
};

inline double laplace_potential(double lambda, std::size_t a, std::size_t b) {
  return std::exp(-lambda * static_cast<double>(a > b ? a - b : b - a));
}

/// K x K table of psi values for one lambda.
std::vector<double> laplace_table(double lambda, std::size_t labels);

/// Vertex (r, c) has id r * width + c. Axis 0 joins horizontal
/// neighbors, axis 1 vertical ones. Potentials start uniform.
PairwiseMrf grid_mrf(std::size_t height, std::size_t width, std::size_t labels,
                     std::vector<double> lambda);

/// Normalizes a non-negative vector in place. Throws NumericalError when
/// the sum is zero or not finite.
void normalize(std::vector<double>& p, const char* what);

}  // namespace scopeflow

#endif
