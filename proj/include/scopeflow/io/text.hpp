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


#ifndef SCOPEFLOW_IO_TEXT_HPP
#define SCOPEFLOW_IO_TEXT_HPP

#include <fstream>
#include <string>
#include <vector>

#include "scopeflow/types.hpp"

namespace scopeflow {

struct WeightedEdge {
  VertexId source = 0;
  VertexId target = 0;
  double weight = 1.0;
};

/// Vertices are 0..num_vertices-1, implied by the largest id.
struct EdgeList {
  std::size_t num_vertices = 0;
  std::vector<WeightedEdge> edges;
};

/**
 * One `src<TAB>dst<TAB>weight` per line; any whitespace separates fields
 * and the weight defaults to 1. Blank lines and '#' comments are skipped.
 * Throws ParseError with the line number.
 */
EdgeList read_edge_list(std::istream& in);
EdgeList read_edge_list_file(const std::string& path);

/// Shortest round-trip text for a double ("%.17g" trimmed).
std::string format_double(double value);

/// One line per row: id, then values, tab separated.
void write_vertex_tsv(std::ostream& out, const std::vector<std::vector<double>>& rows);
void write_vertex_tsv_file(const std::string& path, const std::vector<std::vector<double>>& rows);

/// Opens for writing or throws Error naming the path.
std::ofstream open_output(const std::string& path);
std::ifstream open_input(const std::string& path);

}  // namespace scopeflow

#endif
