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

#include "scopeflow/scheduler.hpp"

#include <atomic>
#include <deque>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace scopeflow {

std::string_view to_string(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::Synchronous: return "sync";
    case SchedulerKind::RoundRobin: return "round-robin";
    case SchedulerKind::FifoSingle: return "fifo";
    case SchedulerKind::FifoMultiQueue: return "multiqueue";
    case SchedulerKind::FifoPartitioned: return "partitioned";
    case SchedulerKind::Priority: return "priority";
    case SchedulerKind::ApproxPriority: return "approx-priority";
    case SchedulerKind::Set: return "set";
  }
  return "?";
}

SchedulerKind parse_scheduler_kind(std::string_view name) {
  for (auto kind : {SchedulerKind::Synchronous, SchedulerKind::RoundRobin,
                    SchedulerKind::FifoSingle, SchedulerKind::FifoMultiQueue,
                    SchedulerKind::FifoPartitioned, SchedulerKind::Priority,
                    SchedulerKind::ApproxPriority, SchedulerKind::Set}) {
    if (to_string(kind) == name) return kind;
  }
  throw ParseError("unknown scheduler '" + std::string(name) + "'");
}

bool is_generated(SchedulerKind kind) {
  return kind == SchedulerKind::Synchronous || kind == SchedulerKind::RoundRobin ||
         kind == SchedulerKind::Set;
}

bool is_prioritized(SchedulerKind kind) {
  return kind == SchedulerKind::Priority || kind == SchedulerKind::ApproxPriority;
}

namespace {

[[noreturn]] void reject_dynamic(SchedulerKind kind) {
  throw UnsupportedOperation("scheduler '" + std::string(to_string(kind)) +
                             "' generates its own schedule and does not accept tasks");
}

NextTask ready(const Task& t) { return {PollStatus::Ready, t}; }
NextTask exhausted_result() { return {PollStatus::Exhausted, {}}; }

// Vertices 0..n-1 in order, repeated for a number of sweeps.
class RoundRobinScheduler final : public Scheduler {
 public:
  RoundRobinScheduler(std::size_t n, std::optional<std::size_t> sweeps, FunctionId f)
      : n_(n), limit_(sweeps ? *sweeps * n : std::numeric_limits<std::size_t>::max()), f_(f) {}

  SchedulerKind kind() const override { return SchedulerKind::RoundRobin; }
  bool add_task(const Task&, std::size_t) override { reject_dynamic(kind()); }

  NextTask next_task(std::size_t) override {
    if (n_ == 0) return exhausted_result();
    std::size_t i = next_.fetch_add(1);
    if (i >= limit_) return exhausted_result();
    return ready(Task{static_cast<VertexId>(i % n_), f_});
  }

  bool exhausted() const override { return n_ == 0 || next_.load() >= limit_; }
  std::size_t pending() const override {
    std::size_t i = next_.load();
    return i >= limit_ ? 0 : limit_ - i;
  }

 private:
  std::size_t n_;
  std::size_t limit_;
  FunctionId f_;
  std::atomic<std::size_t> next_{0};
};

// Barrier-delimited generations over every vertex.
class SynchronousScheduler final : public Scheduler {
 public:
  SynchronousScheduler(std::size_t n, std::optional<std::size_t> sweeps, FunctionId f)
      : n_(n), sweeps_(sweeps), f_(f) {}

  SchedulerKind kind() const override { return SchedulerKind::Synchronous; }
  bool add_task(const Task&, std::size_t) override { reject_dynamic(kind()); }

  NextTask next_task(std::size_t) override {
    std::lock_guard lock(mu_);
    if (n_ == 0 || finished_locked()) return exhausted_result();
    if (issued_ == n_) {
      if (completed_ < n_) return {PollStatus::Blocked, {}};
      ++generation_;
      issued_ = completed_ = 0;
      if (finished_locked()) return exhausted_result();
    }
    return ready(Task{static_cast<VertexId>(issued_++), f_});
  }

  bool task_done(const Task&) override {
    std::lock_guard lock(mu_);
    ++completed_;
    return completed_ == n_;
  }

  bool exhausted() const override {
    std::lock_guard lock(mu_);
    if (n_ == 0 || finished_locked()) return true;
    // The last generation is complete once every task was issued and done.
    return sweeps_ && generation_ + 1 == *sweeps_ && issued_ == n_ && completed_ == n_;
  }

  std::size_t pending() const override {
    std::lock_guard lock(mu_);
    return n_ - issued_;
  }

  std::size_t generation() const {
    std::lock_guard lock(mu_);
    return generation_;
  }

 private:
  bool finished_locked() const { return sweeps_ && generation_ >= *sweeps_; }

  mutable std::mutex mu_;
  std::size_t n_;
  std::optional<std::size_t> sweeps_;
  FunctionId f_;
  std::size_t generation_ = 0;
  std::size_t issued_ = 0;
  std::size_t completed_ = 0;
};

class FifoQueue {
 public:
  void push(const Task& t) {
    std::lock_guard lock(mu_);
    q_.push_back(t);
  }
  std::optional<Task> pop() {
    std::lock_guard lock(mu_);
    if (q_.empty()) return std::nullopt;
    Task t = q_.front();
    q_.pop_front();
    return t;
  }

 private:
  std::mutex mu_;
  std::deque<Task> q_;
};

class FifoSingleScheduler final : public Scheduler {
 public:
  SchedulerKind kind() const override { return SchedulerKind::FifoSingle; }
  bool add_task(const Task& t, std::size_t) override {
    queue_.push(t);
    size_.fetch_add(1);
    return true;
  }
  NextTask next_task(std::size_t) override {
    if (auto t = queue_.pop()) {
      size_.fetch_sub(1);
      return ready(*t);
    }
    return exhausted_result();
  }
  bool exhausted() const override { return size_.load() == 0; }
  std::size_t pending() const override { return size_.load(); }

 private:
  FifoQueue queue_;
  std::atomic<std::size_t> size_{0};
};

// One FIFO lane per worker. Multi-queue steals from other lanes when the
// own lane is empty; partitioned routes by vertex and never steals.
class FifoLanesScheduler final : public Scheduler {
 public:
  FifoLanesScheduler(std::size_t workers, bool partitioned)
      : lanes_(std::max<std::size_t>(workers, 1)), partitioned_(partitioned) {}

  SchedulerKind kind() const override {
    return partitioned_ ? SchedulerKind::FifoPartitioned : SchedulerKind::FifoMultiQueue;
  }

  bool add_task(const Task& t, std::size_t worker) override {
    std::size_t lane;
    if (partitioned_) {
      lane = partition_of(t.vertex);
    } else if (worker < lanes_.size()) {
      lane = worker;
    } else {
      lane = spread_.fetch_add(1) % lanes_.size();
    }
    lanes_[lane].push(t);
    size_.fetch_add(1);
    return true;
  }

  NextTask next_task(std::size_t worker) override {
    const std::size_t n = lanes_.size();
    const std::size_t own = worker < n ? worker : 0;
    if (auto t = lanes_[own].pop()) {
      size_.fetch_sub(1);
      return ready(*t);
    }
    if (!partitioned_) {
      for (std::size_t k = 1; k < n; ++k) {
        if (auto t = lanes_[(own + k) % n].pop()) {
          size_.fetch_sub(1);
          return ready(*t);
        }
      }
    }
    // Partitioned workers may see Blocked while other partitions still hold work.
    if (size_.load() > 0) return {PollStatus::Blocked, {}};
    return exhausted_result();
  }

  bool exhausted() const override { return size_.load() == 0; }
  std::size_t pending() const override { return size_.load(); }

  std::size_t partition_of(VertexId v) const { return v % lanes_.size(); }

 private:
  std::vector<FifoQueue> lanes_;
  bool partitioned_;
  std::atomic<std::size_t> spread_{0};
  std::atomic<std::size_t> size_{0};
};

// Max-priority bucket keyed by (vertex, function); duplicates keep the
// larger priority and their original insertion order.
class PriorityBucket {
 public:
  bool add(const Task& t, std::uint64_t seq) {
    std::lock_guard lock(mu_);
    const std::uint64_t id = key_of(t);
    auto it = index_.find(id);
    if (it != index_.end()) {
      Entry e = *it->second;
      if (t.priority > e.priority) {
        order_.erase(it->second);
        e.priority = t.priority;
        it->second = order_.insert(e).first;
      }
      return false;
    }
    index_.emplace(id, order_.insert(Entry{t.priority, seq, t.vertex, t.function}).first);
    return true;
  }

  std::optional<Task> pop() {
    std::lock_guard lock(mu_);
    if (order_.empty()) return std::nullopt;
    Entry e = *order_.begin();
    order_.erase(order_.begin());
    index_.erase(key_of(Task{e.vertex, e.function}));
    return Task{e.vertex, e.function, e.priority};
  }

  std::optional<double> top() const {
    std::lock_guard lock(mu_);
    if (order_.empty()) return std::nullopt;
    return order_.begin()->priority;
  }

 private:
  struct Entry {
    double priority;
    std::uint64_t seq;
    VertexId vertex;
    FunctionId function;
  };
  struct Order {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.priority != b.priority) return a.priority > b.priority;
      return a.seq < b.seq;
    }
  };
  static std::uint64_t key_of(const Task& t) {
    return (static_cast<std::uint64_t>(t.vertex) << 16) | t.function;
  }

  mutable std::mutex mu_;
  std::set<Entry, Order> order_;
  std::unordered_map<std::uint64_t, std::set<Entry, Order>::iterator> index_;
};

class PriorityScheduler final : public Scheduler {
 public:
  SchedulerKind kind() const override { return SchedulerKind::Priority; }
  bool add_task(const Task& t, std::size_t) override {
    bool inserted = bucket_.add(t, seq_.fetch_add(1));
    if (inserted) size_.fetch_add(1);
    return inserted;
  }
  NextTask next_task(std::size_t) override {
    if (auto t = bucket_.pop()) {
      size_.fetch_sub(1);
      return ready(*t);
    }
    return exhausted_result();
  }
  bool exhausted() const override { return size_.load() == 0; }
  std::size_t pending() const override { return size_.load(); }

 private:
  PriorityBucket bucket_;
  std::atomic<std::uint64_t> seq_{0};
  std::atomic<std::size_t> size_{0};
};

// Per-worker priority buckets, routed by vertex so that duplicates still
// merge. An idle worker steals from the bucket with the largest top.
class ApproxPriorityScheduler final : public Scheduler {
 public:
  explicit ApproxPriorityScheduler(std::size_t workers)
      : buckets_(std::max<std::size_t>(workers, 1)) {}

  SchedulerKind kind() const override { return SchedulerKind::ApproxPriority; }

  bool add_task(const Task& t, std::size_t) override {
    bool inserted = buckets_[t.vertex % buckets_.size()].add(t, seq_.fetch_add(1));
    if (inserted) size_.fetch_add(1);
    return inserted;
  }

  NextTask next_task(std::size_t worker) override {
    const std::size_t n = buckets_.size();
    const std::size_t own = worker < n ? worker : 0;
    if (auto t = buckets_[own].pop()) {
      size_.fetch_sub(1);
      return ready(*t);
    }
    while (size_.load() > 0) {
      std::size_t best = n;
      double best_priority = 0;
      for (std::size_t k = 0; k < n; ++k) {
        auto top = buckets_[k].top();
        if (top && (best == n || *top > best_priority)) {
          best = k;
          best_priority = *top;
        }
      }
      if (best == n) break;
      if (auto t = buckets_[best].pop()) {
        size_.fetch_sub(1);
        return ready(*t);
      }
    }
    return exhausted_result();
  }

  bool exhausted() const override { return size_.load() == 0; }
  std::size_t pending() const override { return size_.load(); }

 private:
  std::vector<PriorityBucket> buckets_;
  std::atomic<std::uint64_t> seq_{0};
  std::atomic<std::size_t> size_{0};
};

}  // namespace

std::unique_ptr<Scheduler> make_scheduler(const SchedulerConfig& config,
                                          std::size_t num_vertices, std::size_t workers) {
  switch (config.kind) {
    case SchedulerKind::Synchronous:
      return std::make_unique<SynchronousScheduler>(num_vertices, config.sweeps, config.function);
    case SchedulerKind::RoundRobin:
      return std::make_unique<RoundRobinScheduler>(num_vertices, config.sweeps, config.function);
    case SchedulerKind::FifoSingle:
      return std::make_unique<FifoSingleScheduler>();
    case SchedulerKind::FifoMultiQueue:
      return std::make_unique<FifoLanesScheduler>(workers, false);
    case SchedulerKind::FifoPartitioned:
      return std::make_unique<FifoLanesScheduler>(workers, true);
    case SchedulerKind::Priority:
      return std::make_unique<PriorityScheduler>();
    case SchedulerKind::ApproxPriority:
      return std::make_unique<ApproxPriorityScheduler>(workers);
    case SchedulerKind::Set:
      throw UnsupportedOperation("the set scheduler is built from a compiled execution plan");
  }
  throw UnsupportedOperation("unknown scheduler kind");
}

}  // namespace scopeflow
