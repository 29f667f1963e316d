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


#include "scopeflow/io/bench.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <vector>

#include "scopeflow/io/text.hpp"
#include "scopeflow/types.hpp"

namespace scopeflow {

namespace {

void check_field(const std::string& s, const char* name) {
  if (s.find_first_of(",\n\r") != std::string::npos) {
    throw ContractViolation(std::string("benchmark field '") + name + "' contains a comma or newline");
  }
}

template <typename T>
T parse_number(std::string_view s, const char* name) {
  T value{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw ParseError(std::string("benchmark row: invalid ") + name + " '" + std::string(s) + "'");
  }
  return value;
}

double parse_real(std::string_view s, const char* name) {
  std::string copy(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(copy, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (copy.empty() || used != copy.size()) {
    throw ParseError(std::string("benchmark row: invalid ") + name + " '" + copy + "'");
  }
  return v;
}

}  // namespace

std::string to_row(const BenchmarkRecord& r) {
  check_field(r.algorithm, "algorithm");
  check_field(r.dataset, "dataset");
  check_field(r.scheduler, "scheduler");
  check_field(r.model, "model");
  return std::to_string(kBenchSchemaVersion) + ',' + r.algorithm + ',' + r.dataset + ',' +
         std::to_string(r.workers) + ',' + r.scheduler + ',' + r.model + ',' +
         std::to_string(r.updates) + ',' + format_double(r.wall_time_s) + ',' +
         format_double(r.objective_or_residual) + ',' + std::to_string(r.seed);
}

BenchmarkRecord parse_row(std::string_view row) {
  if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
  std::vector<std::string_view> f;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = row.find(',', start);
    f.push_back(row.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (f.size() != 10) throw ParseError("benchmark row: expected 10 fields, got " + std::to_string(f.size()));
  if (parse_number<int>(f[0], "schema") != kBenchSchemaVersion) {
    throw ParseError("benchmark row: schema version " + std::string(f[0]) + " is not " +
                     std::to_string(kBenchSchemaVersion));
  }
  BenchmarkRecord r;
  r.algorithm = f[1];
  r.dataset = f[2];
  r.workers = parse_number<std::size_t>(f[3], "workers");
  r.scheduler = f[4];
  r.model = f[5];
  r.updates = parse_number<std::size_t>(f[6], "updates");
  r.wall_time_s = parse_real(f[7], "wall_time_s");
  r.objective_or_residual = parse_real(f[8], "objective_or_residual");
  r.seed = parse_number<std::uint64_t>(f[9], "seed");
  return r;
}

void append_benchmark(const std::string& path, const BenchmarkRecord& record) {
  const std::string row = to_row(record);
  bool need_header = true;
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    std::string first;
    if (std::getline(in, first)) {
      if (first != kBenchHeader) throw ParseError("'" + path + "' has a different benchmark header");
      need_header = false;
    }
  }
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for appending");
  if (need_header) out << kBenchHeader << '\n';
  out << row << '\n';
}

}  // namespace scopeflow
