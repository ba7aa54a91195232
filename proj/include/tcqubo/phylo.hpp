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

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tcqubo/error.hpp"
#include "tcqubo/graph.hpp"

namespace tcqubo {

enum class VertexKind { kRoot, kTreeVertex, kReticulation, kLeaf };

inline const char* KindName(VertexKind kind) {
  switch (kind) {
    case VertexKind::kRoot: return "root";
    case VertexKind::kTreeVertex: return "tree-vertex";
    case VertexKind::kReticulation: return "reticulation";
    case VertexKind::kLeaf: return "leaf";
  }
  return "?";
}

class PhyloTree;

// A validated rooted binary phylogenetic network. Immutable; build one with
// ValidateNetwork() or the parsers.
class PhyloNetwork {
 public:
  const DirectedGraph& graph() const { return graph_; }
  std::size_t size() const { return graph_.vertex_count(); }
  VertexId root() const { return root_; }
  VertexKind kind(VertexId v) const { return kinds_[v]; }

  // Out-degree-2 vertices, the root included.
  bool is_tree_vertex(VertexId v) const { return graph_.out_degree(v) == 2; }
  bool is_reticulation(VertexId v) const { return kinds_[v] == VertexKind::kReticulation; }
  bool is_leaf(VertexId v) const { return kinds_[v] == VertexKind::kLeaf; }

  std::size_t leaf_count() const { return leaf_of_.size(); }
  std::size_t reticulation_count() const { return alpha_; }
  std::size_t tree_vertex_count() const { return beta_; }

  std::span<const VertexId> children(VertexId v) const { return graph_.children(v); }
  std::span<const VertexId> parents(VertexId v) const { return graph_.parents(v); }

  const std::string& label(VertexId v) const { return *graph_.label(v); }
  std::optional<VertexId> leaf_of(const std::string& label) const {
    auto it = leaf_of_.find(label);
    if (it == leaf_of_.end()) return std::nullopt;
    return it->second;
  }
  std::vector<std::string> label_set() const {
    std::vector<std::string> out;
    for (const auto& [label, v] : leaf_of_) out.push_back(label);
    return out;
  }
  const std::vector<VertexId>& topological_order() const { return topo_; }

 protected:
  friend PhyloNetwork ValidateNetwork(const DirectedGraph&);
  friend PhyloTree ValidateTree(const DirectedGraph&);

  DirectedGraph graph_;
  VertexId root_ = 0;
  std::vector<VertexKind> kinds_;
  std::map<std::string, VertexId> leaf_of_;
  std::vector<VertexId> topo_;
  std::size_t alpha_ = 0;
  std::size_t beta_ = 0;
};

// A phylogenetic network without reticulations whose root is vertex 0.
class PhyloTree : public PhyloNetwork {
 public:
  // Tree edges (u_i, u_l) in lexicographic order.
  std::vector<Edge> edges() const { return graph_.edges(); }

 private:
  friend PhyloTree ValidateTree(const DirectedGraph&);
};

namespace detail {

inline std::string VertexName(const DirectedGraph& g, VertexId v) {
  return std::to_string(g.external_id(v));
}

// Collects every violated network axiom; returns the classification when
// there is none.
inline std::vector<ValidationIssue> CheckNetwork(const DirectedGraph& g, VertexId* root_out,
                                                 std::vector<VertexKind>* kinds_out,
                                                 std::vector<VertexId>* topo_out) {
  std::vector<ValidationIssue> issues;
  const std::size_t n = g.vertex_count();
  if (n == 0) {
    issues.push_back({Axiom::kEmptyGraph, kNoVertex, "graph has no vertices"});
    return issues;
  }

  std::vector<VertexId> roots;
  for (VertexId v = 0; v < n; ++v) {
    if (g.in_degree(v) == 0) roots.push_back(v);
  }
  if (roots.size() != 1) {
    issues.push_back({Axiom::kRootCount, kNoVertex,
                      "expected exactly one in-degree-0 vertex, found " +
                          std::to_string(roots.size())});
  }

  std::map<std::string, VertexId> seen_labels;
  std::vector<VertexKind> kinds(n, VertexKind::kTreeVertex);
  for (VertexId v = 0; v < n; ++v) {
    const std::size_t in = g.in_degree(v), out = g.out_degree(v);
    const bool labeled = g.is_labeled(v);
    if (labeled) {
      auto [it, inserted] = seen_labels.emplace(*g.label(v), v);
      if (!inserted) {
        issues.push_back({Axiom::kDuplicateLabel, v,
                          "label '" + *g.label(v) + "' used by vertices " +
                              VertexName(g, it->second) + " and " + VertexName(g, v)});
      }
      if (out != 0) {
        issues.push_back({Axiom::kLabeledNonSink, v,
                          "labeled vertex " + VertexName(g, v) + " has out-degree " +
                              std::to_string(out)});
      }
    } else if (out == 0) {
      issues.push_back({Axiom::kUnlabeledSink, v,
                        "vertex " + VertexName(g, v) + " has out-degree 0 but no label"});
    }

    if (in == 0) {
      kinds[v] = VertexKind::kRoot;
      if (n == 1 && labeled) {
        kinds[v] = VertexKind::kLeaf;
      } else if (out != 2) {
        issues.push_back({Axiom::kBadRootDegree, v,
                          "root " + VertexName(g, v) + " has out-degree " + std::to_string(out)});
      }
    } else if (in == 1 && out == 0) {
      kinds[v] = VertexKind::kLeaf;
    } else if (in == 1 && out == 2) {
      kinds[v] = VertexKind::kTreeVertex;
    } else if (in == 2 && out == 1) {
      kinds[v] = VertexKind::kReticulation;
    } else {
      issues.push_back({Axiom::kBadVertexDegree, v,
                        "vertex " + VertexName(g, v) + " has (in, out) = (" + std::to_string(in) +
                            ", " + std::to_string(out) + ")"});
    }
  }

  auto topo = TopologicalOrder(g);
  if (!topo) {
    issues.push_back({Axiom::kCyclic, kNoVertex, "graph contains a directed cycle"});
  }

  if (roots.size() == 1) {
    std::vector<bool> reached(n, false);
    std::vector<VertexId> stack{roots.front()};
    reached[roots.front()] = true;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (VertexId c : g.children(v)) {
        if (!reached[c]) {
          reached[c] = true;
          stack.push_back(c);
        }
      }
    }
    for (VertexId v = 0; v < n; ++v) {
      if (!reached[v]) {
        issues.push_back({Axiom::kUnreachable, v,
                          "vertex " + VertexName(g, v) + " is not reachable from the root"});
      }
    }
    *root_out = roots.front();
  }
  *kinds_out = std::move(kinds);
  if (topo) *topo_out = std::move(*topo);
  return issues;
}

}  // namespace detail

inline PhyloNetwork ValidateNetwork(const DirectedGraph& graph) {
  PhyloNetwork net;
  VertexId root = kNoVertex;
  std::vector<VertexKind> kinds;
  std::vector<VertexId> topo;
  auto issues = detail::CheckNetwork(graph, &root, &kinds, &topo);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  net.graph_ = graph;
  net.root_ = root;
  net.kinds_ = std::move(kinds);
  net.topo_ = std::move(topo);
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    if (net.kinds_[v] == VertexKind::kLeaf) net.leaf_of_.emplace(*graph.label(v), v);
    if (net.kinds_[v] == VertexKind::kReticulation) ++net.alpha_;
    if (graph.out_degree(v) == 2) ++net.beta_;
  }
  return net;
}

// Validates as a network, rejects reticulations, and swaps the root into
// position 0 (all other vertices keep their index).
inline PhyloTree ValidateTree(const DirectedGraph& graph) {
  PhyloNetwork net = ValidateNetwork(graph);
  if (net.reticulation_count() > 0) {
    std::vector<ValidationIssue> issues;
    for (VertexId v = 0; v < net.size(); ++v) {
      if (net.is_reticulation(v)) {
        issues.push_back({Axiom::kHasReticulation, v,
                          "tree contains reticulation " + detail::VertexName(graph, v)});
      }
    }
    throw ValidationError(std::move(issues));
  }
  std::vector<VertexId> order(graph.vertex_count());
  for (VertexId v = 0; v < order.size(); ++v) order[v] = v;
  std::swap(order[0], order[net.root()]);
  DirectedGraph canonical = graph.permuted(order);
  PhyloNetwork checked = ValidateNetwork(canonical);
  PhyloTree tree;
  static_cast<PhyloNetwork&>(tree) = std::move(checked);
  return tree;
}

// ---------------------------------------------------------------------------
// Clusters and isomorphism.

inline ClusterTable Clusters(const PhyloNetwork& tree) { return Clusters(tree.graph()); }

// The set of clusters of every vertex; characterizes a rooted phylogenetic
// tree up to label-preserving isomorphism.
inline std::set<Cluster> ClusterSet(const PhyloTree& tree) {
  ClusterTable table = Clusters(tree.graph());
  return {table.begin(), table.end()};
}

inline bool TreeIsomorphic(const PhyloTree& a, const PhyloTree& b) {
  if (a.size() != b.size() || a.label_set() != b.label_set()) return false;
  return ClusterSet(a) == ClusterSet(b);
}

// ---------------------------------------------------------------------------
// Instance.

struct Instance {
  PhyloNetwork network;
  PhyloTree tree;
  // Allow the tree's leaf set to be a proper subset of the network's.
  bool subset_leaves = false;
};

}  // namespace tcqubo
