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

#ifndef SCOPEFLOW_SHARED_TABLE_HPP
#define SCOPEFLOW_SHARED_TABLE_HPP

#include <any>
#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "scopeflow/types.hpp"

namespace scopeflow {

/**
 * \brief Associative map from string keys to arbitrary values.
 *
 * Every stored value is an immutable snapshot; set() swaps in a new
 * snapshot, so a concurrent reader sees either the previous or the new
 * value in full. Update functions receive the table by const reference.
 *
 * The table also records which keys carry a sync registration so that
 * duplicate registrations can be rejected.
 */
class SharedDataTable {
 public:
  template <typename T>
  void set(const std::string& key, T value) {
    set_any(key, std::any(std::move(value)));
  }

  void set_any(const std::string& key, std::any value) {
    auto snapshot = std::make_shared<const std::any>(std::move(value));
    std::unique_lock lock(mu_);
    entries_[key] = std::move(snapshot);
  }

  /// Copy of the current value. Throws KeyError on a missing key or a
  /// type mismatch.
  template <typename T>
  T get(const std::string& key) const {
    return *get_shared<T>(key);
  }

  /// Shared handle to the current snapshot; stays valid after later set()s.
  template <typename T>
  std::shared_ptr<const T> get_shared(const std::string& key) const {
    auto snapshot = snapshot_of(key);
    const T* value = std::any_cast<T>(snapshot.get());
    if (value == nullptr) throw KeyError("type mismatch reading key '" + key + "'");
    return std::shared_ptr<const T>(std::move(snapshot), value);
  }

  std::shared_ptr<const std::any> snapshot_of(const std::string& key) const {
    std::shared_lock lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) throw KeyError("missing key '" + key + "'");
    return it->second;
  }

  bool contains(const std::string& key) const {
    std::shared_lock lock(mu_);
    return entries_.count(key) > 0;
  }

  void erase(const std::string& key) {
    std::unique_lock lock(mu_);
    entries_.erase(key);
  }

  /// Throws KeyError if `key` already has a registration.
  void mark_registered(const std::string& key) {
    std::unique_lock lock(mu_);
    if (!registered_.insert(key).second) {
      throw KeyError("sync already registered for key '" + key + "'");
    }
  }

  void unmark_registered(const std::string& key) {
    std::unique_lock lock(mu_);
    registered_.erase(key);
  }

  bool is_registered(const std::string& key) const {
    std::shared_lock lock(mu_);
    return registered_.count(key) > 0;
  }

  std::vector<std::string> keys() const {
    std::shared_lock lock(mu_);
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& kv : entries_) out.push_back(kv.first);
    return out;
  }

 private:
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<const std::any>> entries_;
  std::set<std::string> registered_;
};

}  // namespace scopeflow

#endif
