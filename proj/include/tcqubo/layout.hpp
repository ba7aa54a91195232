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

// Flat indexing of the binary variables. Blocks, in order:
//   x(i, j)      0 <= i <= n_T (row n_T collects deleted vertices), j < n_N
//   y(i, r)      1 <= i <  n_T, r < k_y
//   z(i, j)      i < n_T, j a tree vertex or reticulation of N (index order)
//   zhat(i, 2j)  non-leaf u_i, tree vertex v_j, then zhat(i, 2j + 1)

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "tcqubo/error.hpp"
#include "tcqubo/phylo.hpp"

namespace tcqubo {

enum class VarKind { kX, kY, kZ, kZhat };

inline const char* VarKindName(VarKind kind) {
  switch (kind) {
    case VarKind::kX: return "x";
    case VarKind::kY: return "y";
    case VarKind::kZ: return "z";
    case VarKind::kZhat: return "zhat";
  }
  return "?";
}

// For zhat, `j` is already doubled: 2j for the first child, 2j + 1 for the
// second.
struct VarInfo {
  VarKind kind;
  std::size_t i;
  std::size_t j;
  bool operator==(const VarInfo&) const = default;
};

// Bits needed to hold any surplus 0..d.
inline std::size_t SlackBits(std::size_t d) { return d == 0 ? 0 : std::bit_width(d); }

class VariableLayout {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  VariableLayout() = default;

  VariableLayout(const PhyloNetwork& network, const PhyloTree& tree, bool subset_leaves = false) {
    n_T_ = tree.size();
    n_N_ = network.size();
    leaves_ = tree.leaf_count();
    if (n_N_ < n_T_) {
      throw NotDisplayableError("network has " + std::to_string(n_N_) + " vertices, tree has " +
                                std::to_string(n_T_));
    }
    auto net_labels = network.label_set();
    auto tree_labels = tree.label_set();
    std::set<std::string> known(net_labels.begin(), net_labels.end());
    for (const auto& l : tree_labels) {
      if (!known.contains(l)) throw Error("tree leaf '" + l + "' does not occur in the network");
    }
    if (!subset_leaves && tree_labels.size() != net_labels.size()) {
      throw Error("tree and network have different leaf sets (use the subset option to allow)");
    }

    alpha_ = network.reticulation_count();
    beta_ = network.tree_vertex_count();
    k_y_ = SlackBits(n_N_ - n_T_);

    z_slot_.assign(n_N_, npos);
    tree_slot_.assign(n_N_, npos);
    for (VertexId v = 0; v < n_N_; ++v) {
      if (network.is_tree_vertex(v) || network.is_reticulation(v)) {
        z_slot_[v] = z_vertices_.size();
        z_vertices_.push_back(v);
      }
      if (network.is_tree_vertex(v)) {
        tree_slot_[v] = tree_vertices_.size();
        tree_vertices_.push_back(v);
      }
    }
    nonleaf_slot_.assign(n_T_, npos);
    for (VertexId u = 0; u < n_T_; ++u) {
      if (!tree.is_leaf(u)) {
        nonleaf_slot_[u] = nonleaf_.size();
        nonleaf_.push_back(u);
      }
    }

    y_base_ = (n_T_ + 1) * n_N_;
    z_base_ = y_base_ + (n_T_ > 0 ? (n_T_ - 1) * k_y_ : 0);
    zhat_base_ = z_base_ + n_T_ * z_vertices_.size();
    m_ = zhat_base_ + nonleaf_.size() * 2 * tree_vertices_.size();
  }

  std::size_t n_T() const { return n_T_; }
  std::size_t n_N() const { return n_N_; }
  std::size_t alpha() const { return alpha_; }
  std::size_t beta() const { return beta_; }
  std::size_t gamma() const { return n_T_ - leaves_; }
  std::size_t k_y() const { return k_y_; }
  std::size_t m() const { return m_; }

  // Closed-form count; equals m() by construction for binary inputs.
  static std::size_t ExpectedM(std::size_t n_T, std::size_t n_N, std::size_t alpha,
                               std::size_t beta, std::size_t gamma) {
    const std::size_t k_y = SlackBits(n_N - n_T);
    return n_N * (n_T + 1) + (n_T - 1) * k_y + n_T * (alpha + beta) + 2 * beta * gamma;
  }

  std::size_t x(std::size_t i, VertexId j) const {
    check(i <= n_T_ && j < n_N_, "x");
    return i * n_N_ + j;
  }
  std::size_t y(std::size_t i, std::size_t r) const {
    check(i >= 1 && i < n_T_ && r < k_y_, "y");
    return y_base_ + (i - 1) * k_y_ + r;
  }
  std::size_t z(std::size_t i, VertexId j) const {
    check(i < n_T_ && j < n_N_ && z_slot_[j] != npos, "z");
    return z_base_ + i * z_vertices_.size() + z_slot_[j];
  }
  // child is 0 or 1; the variable is zhat(i, 2j + child).
  std::size_t zhat(std::size_t i, VertexId j, std::size_t child) const {
    check(i < n_T_ && nonleaf_slot_[i] != npos && j < n_N_ && tree_slot_[j] != npos && child < 2,
          "zhat");
    return zhat_base_ + (nonleaf_slot_[i] * tree_vertices_.size() + tree_slot_[j]) * 2 + child;
  }

  bool has_z(VertexId j) const { return j < n_N_ && z_slot_[j] != npos; }
  bool has_zhat(std::size_t i, VertexId j) const {
    return i < n_T_ && nonleaf_slot_[i] != npos && j < n_N_ && tree_slot_[j] != npos;
  }
  bool is_x(std::size_t index) const { return index < y_base_; }

  const std::vector<VertexId>& tree_vertices() const { return tree_vertices_; }
  const std::vector<VertexId>& z_vertices() const { return z_vertices_; }

  VarInfo describe(std::size_t index) const {
    check(index < m_, "index");
    if (index < y_base_) return {VarKind::kX, index / n_N_, index % n_N_};
    if (index < z_base_) {
      const std::size_t k = index - y_base_;
      return {VarKind::kY, k / k_y_ + 1, k % k_y_};
    }
    if (index < zhat_base_) {
      const std::size_t k = index - z_base_;
      return {VarKind::kZ, k / z_vertices_.size(), z_vertices_[k % z_vertices_.size()]};
    }
    const std::size_t k = index - zhat_base_;
    const std::size_t child = k % 2, block = k / 2;
    const VertexId j = tree_vertices_[block % tree_vertices_.size()];
    return {VarKind::kZhat, nonleaf_[block / tree_vertices_.size()], 2 * j + child};
  }

  std::size_t index_of(const VarInfo& info) const {
    switch (info.kind) {
      case VarKind::kX: return x(info.i, info.j);
      case VarKind::kY: return y(info.i, info.j);
      case VarKind::kZ: return z(info.i, info.j);
      case VarKind::kZhat: return zhat(info.i, info.j / 2, info.j % 2);
    }
    return npos;
  }

 private:
  void check(bool ok, const char* what) const {
    if (!ok) throw Error(std::string("variable ") + what + " out of range");
  }

  std::size_t n_T_ = 0, n_N_ = 0, leaves_ = 0, alpha_ = 0, beta_ = 0, k_y_ = 0, m_ = 0;
  std::size_t y_base_ = 0, z_base_ = 0, zhat_base_ = 0;
  std::vector<VertexId> z_vertices_, tree_vertices_, nonleaf_;
  std::vector<std::size_t> z_slot_, tree_slot_, nonleaf_slot_;
};

}  // namespace tcqubo
