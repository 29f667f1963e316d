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

#ifndef SCOPEFLOW_SET_SCHEDULE_HPP
#define SCOPEFLOW_SET_SCHEDULE_HPP

#include <cstdint>
#include <mutex>
#include <queue>
#include <span>
#include <vector>

#include "scopeflow/consistency.hpp"
#include "scopeflow/scheduler.hpp"

namespace scopeflow {

/// One step of a set schedule: apply `function` to every vertex in the set.
struct ScheduleSet {
  std::vector<VertexId> vertices;
  FunctionId function = 0;
};

/**
 * \brief Dependency DAG over the tasks of a set schedule.
 *
 * Nodes are listed set by set, ascending VertexId within a set. deps[i]
 * holds, for every entity in node i's exclusion set, the latest earlier
 * node whose exclusion set also contains that entity (sorted, unique).
 * Every index in deps[i] is smaller than i.
 */
struct ExecutionPlan {
  std::vector<Task> nodes;
  std::vector<std::vector<std::uint32_t>> deps;
  std::vector<std::vector<std::uint32_t>> dependents;

  std::size_t size() const { return nodes.size(); }
  bool empty() const { return nodes.empty(); }
};

/// Throws StructureError(UnknownVertex) for vertices outside the graph.
ExecutionPlan compile_set_schedule(const GraphStructure& g, std::span<const ScheduleSet> sets,
                                   ConsistencyModel model);

/**
 * Greedy list scheduling over an ExecutionPlan: any node whose
 * dependencies completed may be issued; the lowest such index is issued
 * first so single-worker runs are deterministic.
 */
class PlanRunner {
 public:
  explicit PlanRunner(const ExecutionPlan& plan);

  /// Ready with the issued node's task, Blocked if nodes remain but none
  /// is ready, Exhausted once every node was issued.
  NextTask next_ready();
  /// Throws ContractViolation if `node` was not issued or already completed.
  /// Returns the number of nodes that became ready.
  std::size_t complete(std::uint32_t node);

  bool all_issued() const;
  bool all_completed() const;
  std::size_t completed() const;

 private:
  const ExecutionPlan* plan_;
  mutable std::mutex mu_;
  std::vector<std::uint32_t> indegree_;
  std::vector<std::uint8_t> state_;  // 0 waiting, 1 issued, 2 completed
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready_;
  std::size_t issued_ = 0;
  std::size_t completed_ = 0;
};

/// Scheduler adapter that issues the nodes of a compiled plan.
class SetScheduler final : public Scheduler {
 public:
  explicit SetScheduler(const ExecutionPlan& plan) : runner_(plan) {}

  SchedulerKind kind() const override { return SchedulerKind::Set; }
  bool add_task(const Task& task, std::size_t worker) override;
  NextTask next_task(std::size_t) override { return runner_.next_ready(); }
  bool task_done(const Task& task) override { return runner_.complete(task.plan_node) > 0; }
  bool exhausted() const override { return runner_.all_issued(); }
  std::size_t pending() const override;

  const PlanRunner& runner() const { return runner_; }

 private:
  PlanRunner runner_;
};

}  // namespace scopeflow

#endif
