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


#ifndef SCOPEFLOW_IO_BENCH_HPP
#define SCOPEFLOW_IO_BENCH_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace scopeflow {

/// Bumped whenever the column set changes.
inline constexpr int kBenchSchemaVersion = 1;
inline constexpr std::string_view kBenchHeader =
    "schema,algorithm,dataset,workers,scheduler,model,updates,wall_time_s,objective_or_residual,"
    "seed";

/// One benchmark run.
struct BenchmarkRecord {
  std::string algorithm;
  std::string dataset;
  std::size_t workers = 1;
  std::string scheduler;
  std::string model;
  std::size_t updates = 0;
  double wall_time_s = 0.0;
  double objective_or_residual = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const BenchmarkRecord&, const BenchmarkRecord&) = default;
};

/// Text fields must not contain commas or newlines (ContractViolation).
std::string to_row(const BenchmarkRecord& record);
/// Throws ParseError on a wrong field count, schema version or number.
BenchmarkRecord parse_row(std::string_view row);

/// Appends a row, writing the header first when the file is new or empty.
/// Throws ParseError if an existing file has a different header.
void append_benchmark(const std::string& path, const BenchmarkRecord& record);

}  // namespace scopeflow

#endif
