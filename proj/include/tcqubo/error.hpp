// Copyright 2026 The tc-qubo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tcqubo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `line` is 1-based for edge-list input and 0 for JSON,
// where `field` names the offending member instead.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line, std::string field = {})
      : Error(Format(message, line, field)), line_(line), field_(std::move(field)) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  static std::string Format(const std::string& message, std::size_t line,
                            const std::string& field) {
    std::string out = "parse error";
    if (line > 0) out += " at line " + std::to_string(line);
    if (!field.empty()) out += " in field '" + field + "'";
    return out + ": " + message;
  }

  std::size_t line_;
  std::string field_;
};

enum class Axiom {
  kSelfLoop,
  kParallelEdge,
  kUnknownVertex,
  kEmptyGraph,
  kCyclic,
  kRootCount,
  kBadRootDegree,
  kBadVertexDegree,
  kUnlabeledSink,
  kLabeledNonSink,
  kUnreachable,
  kDuplicateLabel,
  kHasReticulation,
};

inline const char* AxiomName(Axiom axiom) {
  switch (axiom) {
    case Axiom::kSelfLoop: return "self-loop";
    case Axiom::kParallelEdge: return "parallel-edge";
    case Axiom::kUnknownVertex: return "unknown-vertex";
    case Axiom::kEmptyGraph: return "empty-graph";
    case Axiom::kCyclic: return "cyclic";
    case Axiom::kRootCount: return "root-count";
    case Axiom::kBadRootDegree: return "bad-root-degree";
    case Axiom::kBadVertexDegree: return "bad-vertex-degree";
    case Axiom::kUnlabeledSink: return "unlabeled-sink";
    case Axiom::kLabeledNonSink: return "labeled-non-sink";
    case Axiom::kUnreachable: return "unreachable-vertex";
    case Axiom::kDuplicateLabel: return "duplicate-label";
    case Axiom::kHasReticulation: return "has-reticulation";
  }
  return "unknown";
}

struct ValidationIssue {
  Axiom axiom;
  std::size_t vertex;  // canonical index, or SIZE_MAX when not vertex-specific
  std::string message;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues)
      : Error(Format(issues)), issues_(std::move(issues)) {}

  const std::vector<ValidationIssue>& issues() const { return issues_; }

  bool has(Axiom axiom) const {
    for (const auto& issue : issues_) {
      if (issue.axiom == axiom) return true;
    }
    return false;
  }

 private:
  static std::string Format(const std::vector<ValidationIssue>& issues) {
    std::string out = "validation failed";
    for (const auto& issue : issues) {
      out += "\n  [";
      out += AxiomName(issue.axiom);
      out += "] " + issue.message;
    }
    return out;
  }

  std::vector<ValidationIssue> issues_;
};

// Raised when |V(N)| < |V(T)|: the instance is trivially a "no".
class NotDisplayableError : public Error {
 public:
  using Error::Error;
};

// Raised by exponential-time routines refusing an input that is too large.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

}  // namespace tcqubo
