// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace knapqaoa {

/// Malformed input file; the message names the offending line and field.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured work budget (cells, enumeration size, memory cap) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// The requested subproblem has no feasible point (e.g. demand cannot be met).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

/// A metric is undefined for the given inputs (e.g. no feasible samples).
class UndefinedMetricError : public std::runtime_error {
 public:
  explicit UndefinedMetricError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace knapqaoa
