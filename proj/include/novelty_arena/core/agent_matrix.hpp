// Copyright 2026 The Novelty Arena Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The agent matrix: an n x n grid of pairwise tournament scores.
//
// Cell (i, j) is the score agent i obtained in its tournament against agent
// j. Scores are zero-sum shares, so cells (i, j) and (j, i) add to 1. The
// diagonal carries the placeholder 1.0, which keeps the sum-to-one relation
// meaningful for the whole grid.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "novelty_arena/core/errors.hpp"

namespace novelty_arena {

inline constexpr double kDiagonalValue = 1.0;

struct AgentId {
  std::size_t index = 0;
  std::string name;

  friend bool operator==(const AgentId&, const AgentId&) = default;
};

// Builds ids 0..n-1 from a list of names, rejecting duplicates.
inline std::vector<AgentId> make_agent_ids(const std::vector<std::string>& names) {
  std::unordered_set<std::string> seen;
  std::vector<AgentId> ids;
  ids.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!seen.insert(names[i]).second)
      throw InvalidArgument("duplicate agent name '" + names[i] + "'");
    ids.push_back({i, names[i]});
  }
  return ids;
}

// Row-major dense grid. Off-diagonal cells start at 0.5 until filled.
class AgentMatrix {
 public:
  AgentMatrix() = default;

  explicit AgentMatrix(std::vector<AgentId> labels)
      : labels_(std::move(labels)), cells_(labels_.size() * labels_.size(), 0.5) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].index != i)
        throw InvalidArgument("agent '" + labels_[i].name +
                              "' index does not match its position");
      (*this)(i, i) = kDiagonalValue;
    }
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<AgentId>& labels() const { return labels_; }

  double operator()(std::size_t i, std::size_t j) const { return cells_[i * size() + j]; }
  double& operator()(std::size_t i, std::size_t j) { return cells_[i * size() + j]; }

  double at(std::size_t i, std::size_t j) const {
    if (i >= size() || j >= size()) throw InvalidArgument("matrix index out of range");
    return (*this)(i, j);
  }

  // Fills both cells of an unordered pair from one tournament result.
  void set_pair(std::size_t i, std::size_t j, double score_i, double score_j) {
    if (i == j) throw InvalidArgument("set_pair on the diagonal");
    (*this)(i, j) = score_i;
    (*this)(j, i) = score_j;
  }

  std::span<const double> row(std::size_t i) const {
    return {cells_.data() + i * size(), size()};
  }
  std::span<const double> cells() const { return cells_; }
  std::span<double> mutable_cells() { return cells_; }

  bool same_labels(const AgentMatrix& other) const { return labels_ == other.labels_; }

  friend bool operator==(const AgentMatrix&, const AgentMatrix&) = default;

 private:
  std::vector<AgentId> labels_;
  std::vector<double> cells_;
};

struct MatrixViolation {
  enum class Kind { Diagonal, PairSum, OutOfRange };
  Kind kind;
  std::size_t i;
  std::size_t j;
  // Diagonal: cell - 1. PairSum: cell(i,j) + cell(j,i) - 1. OutOfRange: the
  // distance from the nearest bound of [0, 1].
  double residual;

  std::string describe(const AgentMatrix& m) const {
    const auto& a = m.labels()[i].name;
    const auto& b = m.labels()[j].name;
    switch (kind) {
      case Kind::Diagonal:
        return "diagonal (" + a + ") residual " + std::to_string(residual);
      case Kind::PairSum:
        return "pair (" + a + ", " + b + ") sum residual " + std::to_string(residual);
      case Kind::OutOfRange:
        return "cell (" + a + ", " + b + ") outside [0, 1] by " + std::to_string(residual);
    }
    return {};
  }
};

// Lists every broken matrix invariant. `tolerance` bounds |residual| for the
// pair-sum check; 0 demands exact sums (win ratios), cash shares use 1e-9.
inline std::vector<MatrixViolation> validate_matrix(const AgentMatrix& m,
                                                    double tolerance = 0.0) {
  std::vector<MatrixViolation> out;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, i) != kDiagonalValue)
      out.push_back({MatrixViolation::Kind::Diagonal, i, i, m(i, i) - kDiagonalValue});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double v = m(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        const double dist = std::isnan(v) ? v : (v < 0.0 ? -v : v - 1.0);
        out.push_back({MatrixViolation::Kind::OutOfRange, i, j, dist});
      }
      if (j > i) {
        const double residual = v + m(j, i) - 1.0;
        if (!(std::fabs(residual) <= tolerance))
          out.push_back({MatrixViolation::Kind::PairSum, i, j, residual});
      }
    }
  }
  return out;
}

}  // namespace novelty_arena
