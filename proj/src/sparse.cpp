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


#include "scopeflow/sparse.hpp"

#include <algorithm>
#include <string>

#include "scopeflow/types.hpp"

namespace scopeflow {

void SparseMatrix::validate() const {
  std::vector<std::pair<std::size_t, std::size_t>> coords;
  coords.reserve(entries.size());
  for (const auto& t : entries) {
    if (t.row >= rows || t.col >= cols) {
      throw ContractViolation("matrix entry (" + std::to_string(t.row) + ", " +
                              std::to_string(t.col) + ") outside " + std::to_string(rows) + "x" +
                              std::to_string(cols));
    }
    coords.emplace_back(t.row, t.col);
  }
  std::sort(coords.begin(), coords.end());
  if (std::adjacent_find(coords.begin(), coords.end()) != coords.end()) {
    throw ContractViolation("matrix has a repeated entry");
  }
}

std::vector<double> SparseMatrix::multiply(const std::vector<double>& x) const {
  if (x.size() != cols) throw ContractViolation("dimension mismatch in matrix-vector product");
  std::vector<double> y(rows, 0.0);
  for (const auto& t : entries) y[t.row] += t.value * x[t.col];
  return y;
}

std::vector<double> SparseMatrix::multiply_transpose(const std::vector<double>& x) const {
  if (x.size() != rows) throw ContractViolation("dimension mismatch in transposed product");
  std::vector<double> y(cols, 0.0);
  for (const auto& t : entries) y[t.col] += t.value * x[t.row];
  return y;
}

std::vector<double> SparseMatrix::dense() const {
  std::vector<double> d(rows * cols, 0.0);
  for (const auto& t : entries) d[t.row * cols + t.col] += t.value;
  return d;
}

std::vector<std::vector<Triplet>> SparseMatrix::by_column() const {
  std::vector<std::vector<Triplet>> out(cols);
  for (const auto& t : entries) out[t.col].push_back(t);
  return out;
}

SparseMatrix from_dense(std::size_t rows, std::size_t cols, const std::vector<double>& values) {
  if (values.size() != rows * cols) throw ContractViolation("dense size mismatch");
  SparseMatrix m{rows, cols, {}};
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (values[r * cols + c] != 0.0) m.entries.push_back({r, c, values[r * cols + c]});
    }
  }
  return m;
}

}  // namespace scopeflow
