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


#include "scopeflow/io/matrix_market.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "scopeflow/io/text.hpp"
#include "scopeflow/types.hpp"

namespace scopeflow {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct Reader {
  std::istream& in;
  std::size_t line_no = 0;

  // Next non-comment, non-blank line.
  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '%') continue;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("MatrixMarket line " + std::to_string(line_no) + ": " + what);
  }
};

}  // namespace

SparseMatrix read_matrix_market(std::istream& in) {
  Reader r{in};
  std::string banner;
  if (!std::getline(in, banner)) r.fail("empty input");
  r.line_no = 1;
  std::istringstream b(banner);
  std::string tag, object, format, field, symmetry;
  b >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || lower(object) != "matrix") r.fail("missing '%%MatrixMarket matrix' banner");
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format != "coordinate" && format != "array") r.fail("unsupported format '" + format + "'");
  if (field != "real" && field != "integer" && field != "double" &&
      !(field == "pattern" && format == "coordinate")) {
    r.fail("unsupported field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric") r.fail("unsupported symmetry '" + symmetry + "'");
  if (format == "array" && symmetry != "general") r.fail("symmetric array format is not supported");

  std::string line;
  if (!r.next(line)) r.fail("missing size line");
  std::istringstream size_line(line);
  long rows = -1, cols = -1, nnz = -1;
  size_line >> rows >> cols;
  if (format == "coordinate") size_line >> nnz;
  if (!size_line || rows < 0 || cols < 0 || (format == "coordinate" && nnz < 0)) r.fail("invalid size line");
  if (symmetry == "symmetric" && rows != cols) r.fail("symmetric matrix must be square");

  SparseMatrix m{static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), {}};
  if (format == "array") {
    std::vector<double> values;
    while (values.size() < static_cast<std::size_t>(rows * cols) && r.next(line)) {
      std::istringstream ls(line);
      double v;
      while (ls >> v) values.push_back(v);
      if (!ls.eof()) r.fail("invalid number");
    }
    if (values.size() != static_cast<std::size_t>(rows * cols)) r.fail("expected " + std::to_string(rows * cols) + " values");
    // Column-major.
    for (long c = 0; c < cols; ++c) {
      for (long rr = 0; rr < rows; ++rr) {
        const double v = values[c * rows + rr];
        if (v != 0.0) m.entries.push_back({static_cast<std::size_t>(rr), static_cast<std::size_t>(c), v});
      }
    }
  } else {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (long k = 0; k < nnz; ++k) {
      if (!r.next(line)) r.fail("expected " + std::to_string(nnz) + " entries, got " + std::to_string(k));
      std::istringstream ls(line);
      long i = 0, j = 0;
      double v = 1.0;
      ls >> i >> j;
      if (field != "pattern") ls >> v;
      if (!ls) r.fail("invalid entry");
      if (i < 1 || j < 1 || i > rows || j > cols) r.fail("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
      const auto ii = static_cast<std::size_t>(i - 1), jj = static_cast<std::size_t>(j - 1);
      if (symmetry == "symmetric" && jj > ii) r.fail("symmetric entries must lie in the lower triangle");
      if (!seen.insert({ii, jj}).second) r.fail("duplicate entry");
      m.entries.push_back({ii, jj, v});
      if (symmetry == "symmetric" && ii != jj) m.entries.push_back({jj, ii, v});
    }
  }
  return m;
}

SparseMatrix read_matrix_market_file(const std::string& path) {
  auto in = open_input(path);
  return read_matrix_market(in);
}

std::vector<double> read_matrix_market_vector(std::istream& in) {
  SparseMatrix m = read_matrix_market(in);
  if (m.rows != 1 && m.cols != 1) {
    throw ParseError("expected a vector, got a " + std::to_string(m.rows) + " x " + std::to_string(m.cols) + " matrix");
  }
  std::vector<double> v(std::max(m.rows, m.cols), 0.0);
  for (const auto& t : m.entries) v[m.cols == 1 ? t.row : t.col] = t.value;
  return v;
}

std::vector<double> read_matrix_market_vector_file(const std::string& path) {
  auto in = open_input(path);
  return read_matrix_market_vector(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& m) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows << ' ' << m.cols << ' ' << m.entries.size() << '\n';
  for (const auto& t : m.entries) out << t.row + 1 << ' ' << t.col + 1 << ' ' << format_double(t.value) << '\n';
}

void write_matrix_market_file(const std::string& path, const SparseMatrix& m) {
  auto out = open_output(path);
  write_matrix_market(out, m);
}

void write_matrix_market_vector(std::ostream& out, const std::vector<double>& v) {
  out << "%%MatrixMarket matrix array real general\n" << v.size() << " 1\n";
  for (double x : v) out << format_double(x) << '\n';
}

void write_matrix_market_vector_file(const std::string& path, const std::vector<double>& v) {
  auto out = open_output(path);
  write_matrix_market_vector(out, v);
}

}  // namespace scopeflow
