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


#ifndef SCOPEFLOW_SPARSE_HPP
#define SCOPEFLOW_SPARSE_HPP

#include <cstddef>
#include <vector>

namespace scopeflow {

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

/// Coordinate-format matrix. Entries are unique per (row, col).
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Triplet> entries;

  /// Throws ContractViolation on out-of-range or repeated coordinates.
  void validate() const;
  std::vector<double> multiply(const std::vector<double>& x) const;
  std::vector<double> multiply_transpose(const std::vector<double>& x) const;
  /// Row-major dense copy.
  std::vector<double> dense() const;
  /// Entries of column j, in entry order.
  std::vector<std::vector<Triplet>> by_column() const;
};

SparseMatrix from_dense(std::size_t rows, std::size_t cols, const std::vector<double>& values);

}  // namespace scopeflow

#endif
