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


#include "scopeflow/run_stats.hpp"

#include <cstdio>

namespace scopeflow {

std::string_view to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::SchedulerExhausted:
      return "scheduler_exhausted";
    case TerminationReason::TerminationFunction:
      return "termination_function";
    case TerminationReason::SweepLimit:
      return "sweep_limit";
  }
  return "unknown";
}

std::string run_stats_row(const RunStats& stats, std::size_t workers, SchedulerKind scheduler,
                          ConsistencyModel model) {
  char wall[64];
  std::snprintf(wall, sizeof(wall), "%.6f", stats.wall_time_s);
  std::string row = std::to_string(workers);
  row += ',';
  row += to_string(scheduler);
  row += ',';
  row += to_string(model);
  row += ',';
  row += std::to_string(stats.updates_applied);
  row += ',';
  row += wall;
  row += ',';
  row += to_string(stats.reason);
  return row;
}

void write_run_stats_csv(std::ostream& out, const RunStats& stats, std::size_t workers,
                         SchedulerKind scheduler, ConsistencyModel model) {
  out << kRunStatsHeader << '\n' << run_stats_row(stats, workers, scheduler, model) << '\n';
}

}  // namespace scopeflow
