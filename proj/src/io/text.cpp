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


#include "scopeflow/io/text.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <sstream>

namespace scopeflow {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing: " + std::strerror(errno));
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "': " + std::strerror(errno));
  return in;
}

EdgeList read_edge_list(std::istream& in) {
  EdgeList list;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string a, b, w, extra;
    if (!(fields >> a)) continue;
    auto fail = [&](const std::string& what) {
      throw ParseError("edge list line " + std::to_string(line_no) + ": " + what);
    };
    if (!(fields >> b)) fail("expected 'src dst [weight]'");
    fields >> w;
    if (fields >> extra) fail("too many fields");
    auto parse_id = [&](const std::string& s) {
      std::uint64_t id = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), id);
      if (ec != std::errc{} || p != s.data() + s.size() || id >= kInvalidVertex) {
        fail("invalid vertex id '" + s + "'");
      }
      return static_cast<VertexId>(id);
    };
    WeightedEdge e{parse_id(a), parse_id(b), 1.0};
    if (!w.empty()) {
      std::size_t used = 0;
      try {
        e.weight = std::stod(w, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != w.size()) fail("invalid weight '" + w + "'");
    }
    list.num_vertices = std::max<std::size_t>(list.num_vertices, std::max(e.source, e.target) + 1);
    list.edges.push_back(e);
  }
  return list;
}

EdgeList read_edge_list_file(const std::string& path) {
  auto in = open_input(path);
  return read_edge_list(in);
}

std::string format_double(double value) {
  char buf[32];
  for (int precision = 6; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

void write_vertex_tsv(std::ostream& out, const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << i;
    for (double v : rows[i]) out << '\t' << format_double(v);
    out << '\n';
  }
}

void write_vertex_tsv_file(const std::string& path, const std::vector<std::vector<double>>& rows) {
  auto out = open_output(path);
  write_vertex_tsv(out, rows);
}

}  // namespace scopeflow
