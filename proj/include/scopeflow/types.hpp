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

#ifndef SCOPEFLOW_TYPES_HPP
#define SCOPEFLOW_TYPES_HPP

#include <cstdint>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>

namespace scopeflow {

/// Dense vertex index in [0, |V|).
using VertexId = std::uint32_t;
/// Dense edge index in [0, |E|).
using EdgeId = std::uint32_t;
/// Index of an update function registered with an engine.
using FunctionId = std::uint16_t;

inline constexpr VertexId kInvalidVertex = std::numeric_limits<VertexId>::max();

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural errors: frozen graph, self loops, duplicate or unknown endpoints.
class StructureError : public Error {
 public:
  enum class Kind { Frozen, SelfLoop, DuplicateEdge, UnknownVertex, UnknownEdge };
  StructureError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Shared data table lookups on absent keys, duplicate sync registrations.
class KeyError : public Error {
 public:
  using Error::Error;
};

/// Adding tasks to a scheduler whose schedule is generated rather than fed.
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

/// Misuse of an API contract (double release, re-entrant scope acquisition,
/// completing a plan node that was never issued).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Degenerate potentials, divergent iterations and similar numerical failures.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed input files or command-line configuration.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An update function raised; carries the offending task and the cause.
class UpdateError : public Error {
 public:
  UpdateError(VertexId vertex, FunctionId function, std::exception_ptr cause,
              const std::string& what)
      : Error(what), vertex_(vertex), function_(function), cause_(std::move(cause)) {}
  VertexId vertex() const { return vertex_; }
  FunctionId function() const { return function_; }
  const std::exception_ptr& cause() const { return cause_; }

 private:
  VertexId vertex_;
  FunctionId function_;
  std::exception_ptr cause_;
};

}  // namespace scopeflow

#endif
