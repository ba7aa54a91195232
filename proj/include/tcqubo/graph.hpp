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
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tcqubo/error.hpp"

namespace tcqubo {

using VertexId = std::size_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

struct Edge {
  VertexId from;
  VertexId to;
  auto operator<=>(const Edge&) const = default;
};

// A finite simple digraph with optional labels on vertices. Vertices are the
// dense indices 0..vertex_count()-1; `external_id` keeps the integer id the
// vertex carried in the input so output can be related back to it.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  explicit DirectedGraph(std::size_t vertex_count)
      : children_(vertex_count), parents_(vertex_count), labels_(vertex_count),
        external_ids_(vertex_count) {
    for (std::size_t v = 0; v < vertex_count; ++v) external_ids_[v] = v;
  }

  std::size_t vertex_count() const { return children_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  void add_edge(VertexId from, VertexId to) {
    check_vertex(from);
    check_vertex(to);
    if (from == to) {
      throw ValidationError({{Axiom::kSelfLoop, from,
                              "self-loop on vertex " + std::to_string(external_ids_[from])}});
    }
    if (has_edge(from, to)) {
      throw ValidationError({{Axiom::kParallelEdge, from,
                              "parallel edge " + std::to_string(external_ids_[from]) + " -> " +
                                  std::to_string(external_ids_[to])}});
    }
    children_[from].push_back(to);
    parents_[to].push_back(from);
    ++edge_count_;
  }

  void remove_edge(VertexId from, VertexId to) {
    auto& c = children_[from];
    auto it = std::find(c.begin(), c.end(), to);
    if (it == c.end()) return;
    c.erase(it);
    auto& p = parents_[to];
    p.erase(std::find(p.begin(), p.end(), from));
    --edge_count_;
  }

  void set_label(VertexId v, std::string label) {
    check_vertex(v);
    labels_[v] = std::move(label);
  }
  void clear_label(VertexId v) { labels_[v].reset(); }

  void set_external_id(VertexId v, std::uint64_t id) { external_ids_[v] = id; }
  std::uint64_t external_id(VertexId v) const { return external_ids_[v]; }

  bool has_edge(VertexId from, VertexId to) const {
    const auto& c = children_[from];
    return std::find(c.begin(), c.end(), to) != c.end();
  }

  std::span<const VertexId> children(VertexId v) const { return children_[v]; }
  std::span<const VertexId> parents(VertexId v) const { return parents_[v]; }
  std::size_t out_degree(VertexId v) const { return children_[v].size(); }
  std::size_t in_degree(VertexId v) const { return parents_[v].size(); }

  const std::optional<std::string>& label(VertexId v) const { return labels_[v]; }
  bool is_labeled(VertexId v) const { return labels_[v].has_value(); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (VertexId v = 0; v < vertex_count(); ++v) {
      for (VertexId c : children_[v]) out.push_back({v, c});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Renumbers vertices so that old vertex `order[k]` becomes vertex k.
  DirectedGraph permuted(std::span<const VertexId> order) const {
    std::vector<VertexId> position(vertex_count());
    for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = k;
    DirectedGraph out(vertex_count());
    for (std::size_t k = 0; k < order.size(); ++k) {
      VertexId old = order[k];
      out.external_ids_[k] = external_ids_[old];
      out.labels_[k] = labels_[old];
      for (VertexId c : children_[old]) out.add_edge(k, position[c]);
    }
    return out;
  }

 private:
  void check_vertex(VertexId v) const {
    if (v >= vertex_count()) {
      throw ValidationError({{Axiom::kUnknownVertex, v,
                              "vertex index " + std::to_string(v) + " out of range"}});
    }
  }

  std::vector<std::vector<VertexId>> children_;
  std::vector<std::vector<VertexId>> parents_;
  std::vector<std::optional<std::string>> labels_;
  std::vector<std::uint64_t> external_ids_;
  std::size_t edge_count_ = 0;
};

// Kahn order; empty optional when the graph has a directed cycle.
inline std::optional<std::vector<VertexId>> TopologicalOrder(const DirectedGraph& g) {
  std::vector<std::size_t> indeg(g.vertex_count());
  std::vector<VertexId> ready;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    indeg[v] = g.in_degree(v);
    if (indeg[v] == 0) ready.push_back(v);
  }
  std::vector<VertexId> order;
  order.reserve(g.vertex_count());
  // Pop smallest first so the order is deterministic.
  std::reverse(ready.begin(), ready.end());
  while (!ready.empty()) {
    VertexId v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (VertexId c : g.children(v)) {
      if (--indeg[c] == 0) {
        ready.push_back(c);
        std::sort(ready.rbegin(), ready.rend());
      }
    }
  }
  if (order.size() != g.vertex_count()) return std::nullopt;
  return order;
}

// ---------------------------------------------------------------------------
// Suppression of in-degree-1/out-degree-1 vertices.

struct SuppressionResult {
  DirectedGraph graph;
  // Output vertex -> input vertex it came from.
  std::vector<VertexId> origin;
  // Output edge -> input vertices suppressed onto it, in path order.
  std::map<Edge, std::vector<VertexId>> collapsed;
  // Input vertices removed as an out-degree-1 root, top-down.
  std::vector<VertexId> contracted_root_path;
};

// Repeatedly suppresses every unlabeled vertex with in-degree 1 and
// out-degree 1, and contracts an unlabeled in-degree-0/out-degree-1 vertex
// onto its child. A (1,1) vertex whose parent already has an edge to its
// child is left alone, since suppressing it would create a parallel edge.
// Vertices that end up deleted are dropped from the output; the rest keep
// their relative order.
inline SuppressionResult SuppressDegreeTwo(const DirectedGraph& input) {
  const std::size_t n = input.vertex_count();
  std::vector<std::set<VertexId>> children(n), parents(n);
  std::map<Edge, std::vector<VertexId>> collapsed;
  for (const Edge& e : input.edges()) {
    children[e.from].insert(e.to);
    parents[e.to].insert(e.from);
    collapsed[e] = {};
  }
  std::vector<bool> alive(n, true);
  std::vector<VertexId> root_path;

  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId v = 0; v < n; ++v) {
      if (!alive[v] || input.is_labeled(v) || children[v].size() != 1) continue;
      VertexId c = *children[v].begin();
      if (parents[v].size() == 1) {
        VertexId p = *parents[v].begin();
        if (children[p].contains(c)) continue;
        std::vector<VertexId> path = collapsed[{p, v}];
        path.push_back(v);
        const auto& tail = collapsed[{v, c}];
        path.insert(path.end(), tail.begin(), tail.end());
        collapsed.erase({p, v});
        collapsed.erase({v, c});
        collapsed[{p, c}] = std::move(path);
        children[p].erase(v);
        children[p].insert(c);
        parents[c].erase(v);
        parents[c].insert(p);
        children[v].clear();
        parents[v].clear();
        alive[v] = false;
        changed = true;
      } else if (parents[v].empty()) {
        // Vertices on the removed edge vanish with the root.
        root_path.push_back(v);
        const auto& tail = collapsed[{v, c}];
        root_path.insert(root_path.end(), tail.begin(), tail.end());
        collapsed.erase({v, c});
        parents[c].erase(v);
        children[v].clear();
        alive[v] = false;
        changed = true;
      }
    }
  }

  SuppressionResult out;
  std::vector<VertexId> position(n, kNoVertex);
  for (VertexId v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    position[v] = out.origin.size();
    out.origin.push_back(v);
  }
  out.graph = DirectedGraph(out.origin.size());
  for (std::size_t k = 0; k < out.origin.size(); ++k) {
    VertexId v = out.origin[k];
    out.graph.set_external_id(k, input.external_id(v));
    if (input.label(v)) out.graph.set_label(k, *input.label(v));
  }
  for (auto& [edge, path] : collapsed) {
    Edge mapped{position[edge.from], position[edge.to]};
    out.graph.add_edge(mapped.from, mapped.to);
    out.collapsed[mapped] = std::move(path);
  }
  out.contracted_root_path = std::move(root_path);
  return out;
}

// ---------------------------------------------------------------------------
// Clusters.

// Sorted set of leaf labels below a vertex.
using Cluster = std::vector<std::string>;
using ClusterTable = std::vector<Cluster>;

namespace detail {
inline Cluster UnionClusters(const Cluster& a, const Cluster& b) {
  Cluster out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
}  // namespace detail

// Computes C(u) for every vertex of a rooted tree (possibly with degree-2
// vertices). Vertices not reachable from the root get an empty cluster.
inline ClusterTable Clusters(const DirectedGraph& tree) {
  std::vector<ValidationIssue> issues;
  VertexId root = kNoVertex;
  for (VertexId v = 0; v < tree.vertex_count(); ++v) {
    if (tree.in_degree(v) > 1) {
      issues.push_back({Axiom::kBadVertexDegree, v,
                        "vertex " + std::to_string(tree.external_id(v)) +
                            " has in-degree > 1 in a tree"});
    } else if (tree.in_degree(v) == 0 && (tree.out_degree(v) > 0 || tree.is_labeled(v))) {
      if (root != kNoVertex) {
        issues.push_back({Axiom::kRootCount, v, "tree has more than one root"});
      }
      root = v;
    }
  }
  if (tree.vertex_count() > 0 && root == kNoVertex) {
    issues.push_back({Axiom::kRootCount, kNoVertex, "tree has no root"});
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));

  auto order = TopologicalOrder(tree);
  if (!order) throw ValidationError({{Axiom::kCyclic, kNoVertex, "graph has a cycle"}});
  ClusterTable table(tree.vertex_count());
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    VertexId v = *it;
    if (tree.label(v)) {
      table[v] = {*tree.label(v)};
      continue;
    }
    for (VertexId c : tree.children(v)) table[v] = detail::UnionClusters(table[v], table[c]);
  }
  return table;
}

}  // namespace tcqubo
