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

#ifndef SCOPEFLOW_ENGINE_HPP
#define SCOPEFLOW_ENGINE_HPP

#include <algorithm>
#include <any>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "scopeflow/consistency.hpp"
#include "scopeflow/graph.hpp"
#include "scopeflow/run_stats.hpp"
#include "scopeflow/scheduler.hpp"
#include "scopeflow/set_schedule.hpp"
#include "scopeflow/shared_table.hpp"

namespace scopeflow {

/**
 * \brief The data an update function may touch: the center vertex, its
 * adjacent edges and its neighbors.
 *
 * What may be written depends on the consistency model the scope was
 * granted under; see ConsistencyModel.
 */
template <typename Graph>
class Scope {
 public:
  using vertex_data_type = typename Graph::vertex_data_type;
  using edge_data_type = typename Graph::edge_data_type;

  Scope(Graph& graph, VertexId v, ConsistencyModel model)
      : graph_(&graph), vertex_(v), model_(model) {}

  VertexId vertex() const { return vertex_; }
  ConsistencyModel model() const { return model_; }

  vertex_data_type& vertex_data() { return graph_->vertex_data(vertex_); }
  const vertex_data_type& vertex_data() const { return graph_->vertex_data(vertex_); }

  vertex_data_type& neighbor_data(VertexId u) { return graph_->vertex_data(u); }
  const vertex_data_type& neighbor_data(VertexId u) const { return graph_->vertex_data(u); }

  edge_data_type& edge_data(EdgeId e) { return graph_->edge_data(e); }
  const edge_data_type& edge_data(EdgeId e) const { return graph_->edge_data(e); }

  std::span<const EdgeId> in_edges() const { return structure().in_edges(vertex_); }
  std::span<const EdgeId> out_edges() const { return structure().out_edges(vertex_); }
  std::span<const VertexId> neighbors() const { return structure().neighbors(vertex_); }

  VertexId source(EdgeId e) const { return structure().source(e); }
  VertexId target(EdgeId e) const { return structure().target(e); }
  std::optional<EdgeId> find_edge(VertexId s, VertexId t) const {
    return structure().find_edge(s, t);
  }

  const GraphStructure& structure() const { return graph_->structure(); }

 private:
  Graph* graph_;
  VertexId vertex_;
  ConsistencyModel model_;
};

/**
 * Collects the tasks an update function emits. The engine hands them to
 * the scheduler once the emitting function's scope is released. Under
 * generated schedules emissions are dropped and counted.
 */
class TaskSink {
 public:
  TaskSink() = default;
  explicit TaskSink(bool accepts) : accepts_(accepts) {}

  /// Same update function as the task being executed.
  void add(VertexId v, double priority = 0.0) { add(v, current_, priority); }
  void add(VertexId v, FunctionId f, double priority) {
    if (!accepts_) {
      ++dropped_;
      return;
    }
    tasks_.push_back(Task{v, f, priority});
  }

  /// Ask the engine to run the sync for `key` after this task completes.
  void request_sync(std::string key) { sync_requests_.push_back(std::move(key)); }

  bool accepts_tasks() const { return accepts_; }
  std::span<const Task> tasks() const { return tasks_; }
  std::span<const std::string> sync_requests() const { return sync_requests_; }
  std::size_t dropped() const { return dropped_; }

  void reset(FunctionId current) {
    current_ = current;
    tasks_.clear();
    sync_requests_.clear();
  }

 private:
  bool accepts_ = true;
  FunctionId current_ = 0;
  std::vector<Task> tasks_;
  std::vector<std::string> sync_requests_;
  std::size_t dropped_ = 0;
};

/**
 * \brief A fold / optional merge / apply aggregation bound to a shared
 * data table key.
 *
 * Accumulators are type-erased; build registrations with make_sync().
 */
template <typename Graph>
struct SyncRegistration {
  std::string key;
  std::function<std::any()> initial;
  std::function<void(Scope<Graph>&, std::any&)> fold;
  /// Empty when the sync has no merge; it then runs as one sequential fold.
  std::function<void(std::any&, std::any&&)> merge;
  std::function<std::any(const std::any&)> apply;
  std::optional<std::chrono::milliseconds> period;
};

/**
 * Fold: Acc(Scope<Graph>&, Acc). The scope's vertex_data() is the vertex
 * being folded; the fold runs under the engine's consistency model.
 * Apply: Value(const Acc&). The value is stored under `key`.
 */
template <typename Graph, typename Acc, typename Fold, typename Apply>
SyncRegistration<Graph> make_sync(std::string key, Acc initial, Fold fold, Apply apply,
                                  std::optional<std::chrono::milliseconds> period = {}) {
  SyncRegistration<Graph> reg;
  reg.key = std::move(key);
  reg.initial = [initial = std::move(initial)]() { return std::any(initial); };
  reg.fold = [fold = std::move(fold)](Scope<Graph>& scope, std::any& acc) {
    Acc& a = *std::any_cast<Acc>(&acc);
    a = fold(scope, std::move(a));
  };
  reg.apply = [apply = std::move(apply)](const std::any& acc) {
    return std::any(apply(*std::any_cast<Acc>(&acc)));
  };
  reg.period = period;
  return reg;
}

/// As above, with an associative Merge: Acc(Acc, Acc) enabling a parallel
/// reduction over contiguous vertex ranges.
template <typename Graph, typename Acc, typename Fold, typename Merge, typename Apply>
  requires std::is_invocable_r_v<Acc, Merge, Acc, Acc>
SyncRegistration<Graph> make_sync(std::string key, Acc initial, Fold fold, Merge merge,
                                  Apply apply,
                                  std::optional<std::chrono::milliseconds> period = {}) {
  auto reg = make_sync<Graph>(std::move(key), std::move(initial), std::move(fold),
                              std::move(apply), period);
  reg.merge = [merge = std::move(merge)](std::any& left, std::any&& right) {
    Acc& l = *std::any_cast<Acc>(&left);
    l = merge(std::move(l), std::move(*std::any_cast<Acc>(&right)));
  };
  return reg;
}

struct EngineConfig {
  std::size_t workers = 1;
  ConsistencyModel model = ConsistencyModel::Edge;
  SchedulerConfig scheduler;
  /// Period of the monitor that runs background syncs and polls
  /// termination functions.
  std::chrono::milliseconds sync_poll_interval{5};
};

/**
 * \brief Shared-memory execution engine.
 *
 * Each worker repeatedly takes a task from the scheduler, acquires the
 * task vertex's scope under the configured consistency model, applies the
 * update function and releases the scope, after which emitted tasks are
 * handed to the scheduler. A run ends when the scheduler is exhausted
 * with every worker idle, or when a termination function returns true.
 *
 * Graph structure is frozen for the duration of run(). run() is not
 * reentrant; it may be called repeatedly on the same graph, and vertex
 * and edge data persist between runs.
 */
template <typename Graph>
class Engine {
 public:
  using scope_type = Scope<Graph>;
  using update_function = std::function<void(scope_type&, const SharedDataTable&, TaskSink&)>;
  using termination_function = std::function<bool(const SharedDataTable&)>;

  Engine(Graph& graph, SharedDataTable& table, EngineConfig config)
      : graph_(graph), table_(table), config_(std::move(config)) {
    if (config_.workers == 0) throw ContractViolation("engine needs at least one worker");
    if (!is_generated(config_.scheduler.kind)) {
      scheduler_ = make_scheduler(config_.scheduler, graph_.num_vertices(), config_.workers);
    }
  }

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  /// Sync registrations live with the engine; their keys become
  /// registrable again, while the last synced values stay in the table.
  ~Engine() {
    stop_monitor();
    for (const auto& s : syncs_) table_.unmark_registered(s->reg.key);
  }

  FunctionId add_function(update_function f) {
    functions_.push_back(std::move(f));
    return static_cast<FunctionId>(functions_.size() - 1);
  }

  void add_task(VertexId v, FunctionId f, double priority = 0.0) {
    graph_.structure().check_vertex(v);
    check_function(f);
    if (!scheduler_ || !scheduler_->accepts_dynamic_tasks()) {
      throw UnsupportedOperation("scheduler '" + std::string(to_string(config_.scheduler.kind)) +
                                 "' generates its own schedule and does not accept tasks");
    }
    scheduler_->add_task(Task{v, f, priority});
  }

  void add_task_to_all(FunctionId f, double priority = 0.0) {
    for (VertexId v = 0; v < graph_.num_vertices(); ++v) add_task(v, f, priority);
  }

  /**
   * Compile a set schedule for the Set scheduler kind. `plan_model`
   * selects the exclusion sets the plan's dependencies are derived from;
   * it defaults to the engine's locking model.
   */
  void set_schedule(std::span<const ScheduleSet> sets,
                    std::optional<ConsistencyModel> plan_model = std::nullopt) {
    if (config_.scheduler.kind != SchedulerKind::Set) {
      throw UnsupportedOperation("set_schedule requires the set scheduler");
    }
    for (const auto& s : sets) check_function(s.function);
    plan_ = std::make_unique<ExecutionPlan>(
        compile_set_schedule(graph_.structure(), sets, plan_model.value_or(config_.model)));
  }

  const ExecutionPlan* plan() const { return plan_.get(); }

  void add_termination(termination_function f) { terminations_.push_back(std::move(f)); }

  /// Stores the registration and initializes T[key] = apply(initial).
  /// Throws KeyError if the key already carries a registration.
  void register_sync(SyncRegistration<Graph> reg) {
    table_.mark_registered(reg.key);
    table_.set_any(reg.key, reg.apply(reg.initial()));
    auto state = std::make_unique<SyncState>();
    state->reg = std::move(reg);
    sync_index_[state->reg.key] = syncs_.size();
    syncs_.push_back(std::move(state));
  }

  /// Runs the sync for `key` now and returns the value written to the table.
  std::any sync_now(const std::string& key) { return run_sync(find_sync(key), true); }

  std::size_t sync_count(const std::string& key) const {
    return syncs_[find_sync(key)]->completions.load();
  }

  RunStats run();

  const EngineConfig& config() const { return config_; }
  Scheduler* scheduler() { return scheduler_.get(); }
  const LockTable& locks() {
    ensure_locks();
    return *locks_;
  }
  Graph& graph() { return graph_; }
  SharedDataTable& table() { return table_; }

 private:
  struct SyncState {
    SyncRegistration<Graph> reg;
    std::atomic<std::size_t> completions{0};
    std::mutex running;
    std::chrono::steady_clock::time_point due;
  };

  struct alignas(64) WorkerCounter {
    std::size_t updates = 0;
  };

  void check_function(FunctionId f) const {
    if (f >= functions_.size()) {
      throw ContractViolation("update function " + std::to_string(f) + " is not registered");
    }
  }

  std::size_t find_sync(const std::string& key) const {
    auto it = sync_index_.find(key);
    if (it == sync_index_.end()) throw KeyError("no sync registered for key '" + key + "'");
    return it->second;
  }

  void ensure_locks() {
    if (!locks_ || &locks_->structure() != &graph_.structure() ||
        lock_vertices_ != graph_.num_vertices() || lock_edges_ != graph_.num_edges()) {
      locks_ = std::make_unique<LockTable>(graph_.structure());
      lock_vertices_ = graph_.num_vertices();
      lock_edges_ = graph_.num_edges();
    }
  }

  std::any run_sync(std::size_t index, bool parallel);
  void worker_loop(std::size_t worker);
  void execute(std::size_t worker, const Task& task, TaskSink& sink);
  bool wait_idle(std::uint64_t epoch);
  void wake_workers();
  void request_stop(TerminationReason reason);
  bool poll_terminations();
  void monitor_loop();
  void stop_monitor();

  Graph& graph_;
  SharedDataTable& table_;
  EngineConfig config_;
  std::vector<update_function> functions_;
  std::vector<termination_function> terminations_;
  std::unique_ptr<Scheduler> scheduler_;
  std::unique_ptr<ExecutionPlan> plan_;
  std::unique_ptr<LockTable> locks_;
  std::size_t lock_vertices_ = 0;
  std::size_t lock_edges_ = 0;
  std::vector<std::unique_ptr<SyncState>> syncs_;
  std::map<std::string, std::size_t> sync_index_;

  // Per-run state.
  std::atomic<bool> running_{false};
  std::atomic<bool> stop_{false};
  std::optional<TerminationReason> reason_;
  std::mutex reason_mu_;
  std::vector<WorkerCounter> counters_;
  std::exception_ptr error_;
  Task error_task_;
  std::mutex error_mu_;
  std::size_t dropped_ = 0;

  std::mutex idle_mu_;
  std::condition_variable idle_cv_;
  std::size_t idle_ = 0;
  std::atomic<std::size_t> idle_count_{0};
  std::atomic<std::uint64_t> wake_epoch_{0};

  std::thread monitor_;
  std::mutex monitor_mu_;
  std::condition_variable monitor_cv_;
  bool monitor_stop_ = false;
};

template <typename Graph>
RunStats Engine<Graph>::run() {
  if (running_.exchange(true)) throw ContractViolation("engine run is not reentrant");
  struct Running {
    std::atomic<bool>& flag;
    ~Running() { flag.store(false); }
  } running_reset{running_};

  FreezeGuard freeze(graph_.structure());
  ensure_locks();

  const auto kind = config_.scheduler.kind;
  if (kind == SchedulerKind::Set) {
    if (!plan_) throw ContractViolation("set scheduler needs set_schedule() before run()");
    scheduler_ = std::make_unique<SetScheduler>(*plan_);
  } else if (is_generated(kind)) {
    scheduler_ = make_scheduler(config_.scheduler, graph_.num_vertices(), config_.workers);
  }

  stop_.store(false);
  reason_.reset();
  error_ = nullptr;
  idle_ = 0;
  idle_count_.store(0);
  dropped_ = 0;
  counters_.assign(config_.workers, WorkerCounter{});

  const auto start = std::chrono::steady_clock::now();
  if (poll_terminations()) request_stop(TerminationReason::TerminationFunction);

  bool need_monitor = !terminations_.empty() ||
                      std::any_of(syncs_.begin(), syncs_.end(),
                                  [](const auto& s) { return s->reg.period.has_value(); });
  if (need_monitor && !stop_.load()) {
    for (auto& s : syncs_) {
      if (s->reg.period) s->due = start + *s->reg.period;
    }
    monitor_stop_ = false;
    monitor_ = std::thread([this] { monitor_loop(); });
  }

  if (!stop_.load()) {
    if (config_.workers == 1) {
      worker_loop(0);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(config_.workers);
      for (std::size_t w = 0; w < config_.workers; ++w) {
        threads.emplace_back([this, w] { worker_loop(w); });
      }
      for (auto& t : threads) t.join();
    }
  }
  stop_monitor();

  RunStats stats;
  stats.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& c : counters_) {
    stats.per_worker_updates.push_back(c.updates);
    stats.updates_applied += c.updates;
  }
  stats.dropped_tasks = dropped_;
  stats.reason = reason_.value_or(TerminationReason::SchedulerExhausted);

  if (error_) {
    std::string what = "update function " + std::to_string(error_task_.function) +
                       " failed on vertex " + std::to_string(error_task_.vertex);
    try {
      std::rethrow_exception(error_);
    } catch (const std::exception& e) {
      what += ": ";
      what += e.what();
    } catch (...) {
    }
    throw UpdateError(error_task_.vertex, error_task_.function, error_, what);
  }
  return stats;
}

template <typename Graph>
void Engine<Graph>::worker_loop(std::size_t worker) {
  TaskSink sink(scheduler_->accepts_dynamic_tasks());
  while (!stop_.load(std::memory_order_acquire)) {
    const std::uint64_t epoch = wake_epoch_.load();
    NextTask next = scheduler_->next_task(worker);
    if (next.status == PollStatus::Ready) {
      execute(worker, next.task, sink);
      continue;
    }
    if (!wait_idle(epoch)) break;
  }
  std::lock_guard lock(error_mu_);
  dropped_ += sink.dropped();
}

template <typename Graph>
void Engine<Graph>::execute(std::size_t worker, const Task& task, TaskSink& sink) {
  sink.reset(task.function);
  try {
    ScopeGuard guard = locks_->acquire(task.vertex, config_.model);
    scope_type scope(graph_, task.vertex, config_.model);
    functions_.at(task.function)(scope, table_, sink);
  } catch (...) {
    {
      std::lock_guard lock(error_mu_);
      if (!error_) {
        error_ = std::current_exception();
        error_task_ = task;
      }
    }
    request_stop(TerminationReason::SchedulerExhausted);
    return;
  }
  ++counters_[worker].updates;

  bool wake = false;
  for (const Task& t : sink.tasks()) {
    scheduler_->add_task(t, worker);
    wake = true;
  }
  if (scheduler_->task_done(task)) wake = true;
  for (const auto& key : sink.sync_requests()) {
    try {
      run_sync(find_sync(key), false);
    } catch (...) {
      std::lock_guard lock(error_mu_);
      if (!error_) {
        error_ = std::current_exception();
        error_task_ = task;
      }
      request_stop(TerminationReason::SchedulerExhausted);
      return;
    }
  }
  if (wake) wake_workers();
}

template <typename Graph>
void Engine<Graph>::wake_workers() {
  wake_epoch_.fetch_add(1);
  if (idle_count_.load() > 0) {
    { std::lock_guard lock(idle_mu_); }
    idle_cv_.notify_all();
  }
}

// Returns false when the worker should exit.
template <typename Graph>
bool Engine<Graph>::wait_idle(std::uint64_t epoch) {
  std::unique_lock lock(idle_mu_);
  ++idle_;
  idle_count_.fetch_add(1);
  bool keep_going = true;
  if (stop_.load()) {
    keep_going = false;
  } else if (idle_ == config_.workers && scheduler_->exhausted()) {
    const bool swept = (config_.scheduler.kind == SchedulerKind::RoundRobin ||
                        config_.scheduler.kind == SchedulerKind::Synchronous) &&
                       config_.scheduler.sweeps.has_value();
    {
      std::lock_guard rl(reason_mu_);
      if (!reason_) {
        reason_ = swept ? TerminationReason::SweepLimit : TerminationReason::SchedulerExhausted;
      }
    }
    stop_.store(true);
    idle_cv_.notify_all();
    keep_going = false;
  } else {
    idle_cv_.wait_for(lock, std::chrono::milliseconds(1),
                      [&] { return stop_.load() || wake_epoch_.load() != epoch; });
    keep_going = !stop_.load();
  }
  --idle_;
  idle_count_.fetch_sub(1);
  return keep_going;
}

template <typename Graph>
void Engine<Graph>::request_stop(TerminationReason reason) {
  {
    std::lock_guard lock(reason_mu_);
    if (!reason_) reason_ = reason;
  }
  stop_.store(true);
  { std::lock_guard lock(idle_mu_); }
  idle_cv_.notify_all();
}

template <typename Graph>
bool Engine<Graph>::poll_terminations() {
  for (const auto& f : terminations_) {
    if (f(table_)) return true;
  }
  return false;
}

template <typename Graph>
void Engine<Graph>::monitor_loop() {
  std::unique_lock lock(monitor_mu_);
  while (!monitor_stop_) {
    monitor_cv_.wait_for(lock, config_.sync_poll_interval, [&] { return monitor_stop_; });
    if (monitor_stop_) break;
    lock.unlock();
    const auto now = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < syncs_.size(); ++i) {
      auto& s = *syncs_[i];
      if (!s.reg.period || now < s.due) continue;
      try {
        run_sync(i, false);
      } catch (...) {
        std::lock_guard el(error_mu_);
        if (!error_) {
          error_ = std::current_exception();
          error_task_ = Task{};
        }
        request_stop(TerminationReason::SchedulerExhausted);
      }
      s.due = std::max(s.due + *s.reg.period, now);
    }
    if (!stop_.load() && poll_terminations()) request_stop(TerminationReason::TerminationFunction);
    lock.lock();
  }
}

template <typename Graph>
void Engine<Graph>::stop_monitor() {
  if (!monitor_.joinable()) return;
  {
    std::lock_guard lock(monitor_mu_);
    monitor_stop_ = true;
  }
  monitor_cv_.notify_all();
  monitor_.join();
}

// Without a merge: one fold over all vertices in ascending id order. With a
// merge: one fold per contiguous id range, combined left to right. The
// partition depends only on the worker count, so the parallel and the
// single-threaded (`parallel == false`) evaluation agree exactly.
template <typename Graph>
std::any Engine<Graph>::run_sync(std::size_t index, bool parallel) {
  ensure_locks();
  SyncState& state = *syncs_[index];
  const auto& reg = state.reg;
  std::lock_guard serial(state.running);

  const std::size_t n = graph_.num_vertices();
  auto fold_range = [&](std::size_t begin, std::size_t end) {
    std::any acc = reg.initial();
    for (std::size_t v = begin; v < end; ++v) {
      const auto vid = static_cast<VertexId>(v);
      ScopeGuard guard = locks_->acquire(vid, config_.model);
      scope_type scope(graph_, vid, config_.model);
      reg.fold(scope, acc);
    }
    return acc;
  };

  std::any result;
  const std::size_t parts = reg.merge ? std::max<std::size_t>(config_.workers, 1) : 1;
  if (parts == 1) {
    result = fold_range(0, n);
  } else {
    std::vector<std::any> partial(parts);
    auto range = [&](std::size_t k) {
      return std::pair<std::size_t, std::size_t>{k * n / parts, (k + 1) * n / parts};
    };
    if (parallel) {
      std::vector<std::thread> threads;
      std::vector<std::exception_ptr> errors(parts);
      for (std::size_t k = 0; k < parts; ++k) {
        threads.emplace_back([&, k] {
          try {
            auto [b, e] = range(k);
            partial[k] = fold_range(b, e);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        });
      }
      for (auto& t : threads) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    } else {
      for (std::size_t k = 0; k < parts; ++k) {
        auto [b, e] = range(k);
        partial[k] = fold_range(b, e);
      }
    }
    result = std::move(partial[0]);
    for (std::size_t k = 1; k < parts; ++k) reg.merge(result, std::move(partial[k]));
  }
  std::any value = reg.apply(result);
  table_.set_any(reg.key, value);
  state.completions.fetch_add(1);
  return value;
}

}  // namespace scopeflow

#endif
