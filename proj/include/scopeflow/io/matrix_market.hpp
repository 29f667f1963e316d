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


#ifndef SCOPEFLOW_IO_MATRIX_MARKET_HPP
#define SCOPEFLOW_IO_MATRIX_MARKET_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "scopeflow/sparse.hpp"

namespace scopeflow {

/**
 * Reads "matrix coordinate" (real, integer or pattern; general or
 * symmetric) and "matrix array" (real or integer, general). Symmetric
 * files are expanded to both triangles. Throws ParseError.
 */
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market_file(const std::string& path);

/// Reads a vector stored as an n x 1 (or 1 x n) matrix in either format.
std::vector<double> read_matrix_market_vector(std::istream& in);
std::vector<double> read_matrix_market_vector_file(const std::string& path);

/// Coordinate real general, 1-based, entries in stored order.
void write_matrix_market(std::ostream& out, const SparseMatrix& m);
void write_matrix_market_file(const std::string& path, const SparseMatrix& m);

/// Array real general, n x 1.
void write_matrix_market_vector(std::ostream& out, const std::vector<double>& v);
void write_matrix_market_vector_file(const std::string& path, const std::vector<double>& v);

}  // namespace scopeflow

#endif
