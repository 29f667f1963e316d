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

#include "scopeflow/set_schedule.hpp"

#include <algorithm>
#include <string>

namespace scopeflow {

ExecutionPlan compile_set_schedule(const GraphStructure& g, std::span<const ScheduleSet> sets,
                                   ConsistencyModel model) {
  constexpr std::int64_t kNone = -1;
  const std::size_t nv = g.num_vertices();
  // Latest node holding each entity; vertices first, then edges.
  std::vector<std::int64_t> last(nv + g.num_edges(), kNone);

  ExecutionPlan plan;
  for (const auto& set : sets) {
    std::vector<VertexId> members = set.vertices;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (VertexId v : members) {
      ExclusionSet ex = exclusion_set(g, v, model);
      const auto node = static_cast<std::uint32_t>(plan.nodes.size());
      std::vector<std::uint32_t> deps;
      auto visit = [&](std::size_t entity) {
        if (last[entity] != kNone) deps.push_back(static_cast<std::uint32_t>(last[entity]));
        last[entity] = node;
      };
      for (VertexId u : ex.vertices) visit(u);
      for (EdgeId e : ex.edges) visit(nv + e);
      std::sort(deps.begin(), deps.end());
      deps.erase(std::unique(deps.begin(), deps.end()), deps.end());

      plan.nodes.push_back(Task{v, set.function, 0.0, node});
      plan.deps.push_back(std::move(deps));
    }
  }
  plan.dependents.resize(plan.nodes.size());
  for (std::uint32_t i = 0; i < plan.nodes.size(); ++i) {
    for (std::uint32_t d : plan.deps[i]) plan.dependents[d].push_back(i);
  }
  return plan;
}

PlanRunner::PlanRunner(const ExecutionPlan& plan)
    : plan_(&plan), indegree_(plan.size()), state_(plan.size(), 0) {
  for (std::uint32_t i = 0; i < plan.size(); ++i) {
    indegree_[i] = static_cast<std::uint32_t>(plan.deps[i].size());
    if (indegree_[i] == 0) ready_.push(i);
  }
}

NextTask PlanRunner::next_ready() {
  std::lock_guard lock(mu_);
  if (issued_ == plan_->size()) return {PollStatus::Exhausted, {}};
  if (ready_.empty()) return {PollStatus::Blocked, {}};
  std::uint32_t node = ready_.top();
  ready_.pop();
  state_[node] = 1;
  ++issued_;
  return {PollStatus::Ready, plan_->nodes[node]};
}

std::size_t PlanRunner::complete(std::uint32_t node) {
  std::lock_guard lock(mu_);
  if (node >= plan_->size() || state_[node] != 1) {
    throw ContractViolation("plan node " + std::to_string(node) +
                            " completed without being issued");
  }
  state_[node] = 2;
  ++completed_;
  std::size_t released = 0;
  for (std::uint32_t d : plan_->dependents[node]) {
    if (--indegree_[d] == 0) {
      ready_.push(d);
      ++released;
    }
  }
  return released;
}

bool PlanRunner::all_issued() const {
  std::lock_guard lock(mu_);
  return issued_ == plan_->size();
}

bool PlanRunner::all_completed() const {
  std::lock_guard lock(mu_);
  return completed_ == plan_->size();
}

std::size_t PlanRunner::completed() const {
  std::lock_guard lock(mu_);
  return completed_;
}

bool SetScheduler::add_task(const Task&, std::size_t) {
  throw UnsupportedOperation("scheduler 'set' generates its own schedule and does not accept tasks");
}

std::size_t SetScheduler::pending() const {
  return runner_.all_issued() ? 0 : 1;
}

}  // namespace scopeflow
