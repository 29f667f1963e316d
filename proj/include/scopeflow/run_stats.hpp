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


#ifndef SCOPEFLOW_RUN_STATS_HPP
#define SCOPEFLOW_RUN_STATS_HPP

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "scopeflow/consistency.hpp"
#include "scopeflow/scheduler.hpp"

namespace scopeflow {

enum class TerminationReason { SchedulerExhausted, TerminationFunction, SweepLimit };

std::string_view to_string(TerminationReason reason);

struct RunStats {
  std::size_t updates_applied = 0;
  double wall_time_s = 0.0;
  std::vector<std::size_t> per_worker_updates;
  TerminationReason reason = TerminationReason::SchedulerExhausted;
  /// Tasks emitted under a generated schedule, which ignores emissions.
  std::size_t dropped_tasks = 0;
};

inline constexpr std::string_view kRunStatsHeader =
    "workers,scheduler,model,updates,wall_time_s,reason";

/// One CSV row matching kRunStatsHeader, without a trailing newline.
std::string run_stats_row(const RunStats& stats, std::size_t workers, SchedulerKind scheduler,
                          ConsistencyModel model);

/// Writes the header followed by one row.
void write_run_stats_csv(std::ostream& out, const RunStats& stats, std::size_t workers,
                         SchedulerKind scheduler, ConsistencyModel model);

}  // namespace scopeflow

#endif
