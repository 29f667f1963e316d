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

#ifndef SCOPEFLOW_SCHEDULER_HPP
#define SCOPEFLOW_SCHEDULER_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string_view>

#include "scopeflow/types.hpp"

namespace scopeflow {

inline constexpr std::uint32_t kNoPlanNode = std::numeric_limits<std::uint32_t>::max();
/// Worker index used for tasks added from outside the worker pool.
inline constexpr std::size_t kExternalWorker = std::numeric_limits<std::size_t>::max();

/// A (vertex, update function) pair with an optional priority.
struct Task {
  VertexId vertex = kInvalidVertex;
  FunctionId function = 0;
  double priority = 0.0;
  /// Index into the execution plan when issued by the set scheduler.
  std::uint32_t plan_node = kNoPlanNode;

  friend bool operator==(const Task& a, const Task& b) {
    return a.vertex == b.vertex && a.function == b.function;
  }
};

/**
 *                 Strict order     Relaxed order
 *   FIFO          FifoSingle       FifoMultiQueue / FifoPartitioned
 *   Prioritized   Priority         ApproxPriority
 *
 * Synchronous, RoundRobin and Set generate their own schedules.
 */
enum class SchedulerKind {
  Synchronous,
  RoundRobin,
  FifoSingle,
  FifoMultiQueue,
  FifoPartitioned,
  Priority,
  ApproxPriority,
  Set
};

std::string_view to_string(SchedulerKind kind);
/// Accepts the command-line names: sync, round-robin, fifo, multiqueue,
/// partitioned, priority, approx-priority, set.
SchedulerKind parse_scheduler_kind(std::string_view name);
bool is_generated(SchedulerKind kind);
bool is_prioritized(SchedulerKind kind);

enum class PollStatus { Ready, Blocked, Exhausted };

struct NextTask {
  PollStatus status = PollStatus::Exhausted;
  Task task;
};

/**
 * \brief Common interface of every scheduler.
 *
 * All implementations are safe for concurrent add_task/next_task from
 * many workers, and never hold internal locks across calls.
 */
class Scheduler {
 public:
  virtual ~Scheduler() = default;

  virtual SchedulerKind kind() const = 0;
  bool accepts_dynamic_tasks() const { return !is_generated(kind()); }

  /**
   * Enqueue a task. Returns false when it was merged into an existing
   * entry (prioritized kinds keep the larger priority). Generated kinds
   * throw UnsupportedOperation.
   */
  virtual bool add_task(const Task& task, std::size_t worker = kExternalWorker) = 0;

  /// Ready: a task was issued. Blocked: nothing issuable now but work is
  /// still pending. Exhausted: nothing issuable and nothing pending.
  virtual NextTask next_task(std::size_t worker) = 0;

  /// Called by the engine after the issued task finished. Returns true if
  /// the completion may have made new tasks issuable.
  virtual bool task_done(const Task&) { return false; }

  /// Nothing left to issue. Only meaningful while no task is executing.
  virtual bool exhausted() const = 0;

  /// Approximate number of queued tasks.
  virtual std::size_t pending() const = 0;
};

struct SchedulerConfig {
  SchedulerKind kind = SchedulerKind::FifoSingle;
  /// Passes over all vertices for Synchronous and RoundRobin; nullopt
  /// means unbounded (a termination function must stop the run).
  std::optional<std::size_t> sweeps = 1;
  /// Update function applied by generated schedules.
  FunctionId function = 0;
};

/// Builds any dynamic or generated kind except Set, which needs a plan.
std::unique_ptr<Scheduler> make_scheduler(const SchedulerConfig& config,
                                          std::size_t num_vertices, std::size_t workers);

}  // namespace scopeflow

#endif
