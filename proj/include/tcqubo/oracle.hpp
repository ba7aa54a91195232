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

// Brute-force Tree Containment: enumerate one kept parent per reticulation,
// extract the displayed tree, compare clusters. Exponential in the number of
// reticulations, intended as ground truth for small instances.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tcqubo/error.hpp"
#include "tcqubo/graph.hpp"
#include "tcqubo/phylo.hpp"

namespace tcqubo {

inline constexpr std::size_t kMaxOracleReticulations = 20;

// One kept incoming edge per reticulation.
struct Switching {
  std::map<VertexId, VertexId> kept_parent;  // reticulation -> parent
  bool operator==(const Switching&) const = default;
};

inline std::vector<VertexId> Reticulations(const PhyloNetwork& network) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < network.size(); ++v) {
    if (network.is_reticulation(v)) out.push_back(v);
  }
  return out;
}

// Bit k of `index` picks the larger-indexed parent of the k-th reticulation.
inline Switching SwitchingFromIndex(const PhyloNetwork& network, std::uint64_t index) {
  Switching s;
  std::size_t k = 0;
  for (VertexId r : Reticulations(network)) {
    auto ps = network.parents(r);
    VertexId lo = std::min(ps[0], ps[1]), hi = std::max(ps[0], ps[1]);
    s.kept_parent[r] = ((index >> k) & 1U) ? hi : lo;
    ++k;
  }
  return s;
}

inline std::uint64_t SwitchingCount(const PhyloNetwork& network) {
  const std::size_t alpha = network.reticulation_count();
  if (alpha > kMaxOracleReticulations) {
    throw TooLargeError("display oracle refuses " + std::to_string(alpha) +
                        " reticulations (limit " + std::to_string(kMaxOracleReticulations) + ")");
  }
  return std::uint64_t{1} << alpha;
}

// The network with non-kept reticulation edges removed and dead ends pruned,
// before any suppression. Vertex indices are those of the network; deleted
// vertices stay as isolated, unlabeled vertices with kept[v] == false.
struct Subdivision {
  DirectedGraph graph;
  std::vector<bool> kept;
  VertexId root = kNoVertex;

  std::size_t kept_count() const { return std::count(kept.begin(), kept.end(), true); }
};

// `labels`, when given, restricts the leaf set: other leaves are pruned like
// unlabeled sinks. With `trim_root`, an out-degree-1 chain hanging above the
// first branching vertex is deleted as well.
inline Subdivision SwitchedSubdivision(const PhyloNetwork& network, const Switching& switching,
                                       const std::set<std::string>* labels = nullptr,
                                       bool trim_root = false) {
  Subdivision sub{network.graph(), std::vector<bool>(network.size(), true), network.root()};
  DirectedGraph& g = sub.graph;
  for (VertexId r : Reticulations(network)) {
    auto it = switching.kept_parent.find(r);
    if (it == switching.kept_parent.end()) {
      throw Error("switching has no choice for reticulation " +
                  std::to_string(network.graph().external_id(r)));
    }
    bool valid = false;
    for (VertexId p : network.parents(r)) {
      if (p == it->second) valid = true;
    }
    if (!valid) throw Error("switching keeps a non-existent edge");
    for (VertexId p : network.parents(r)) {
      if (p != it->second) g.remove_edge(p, r);
    }
  }
  if (labels) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (g.label(v) && !labels->contains(*g.label(v))) g.clear_label(v);
    }
  }

  std::vector<VertexId> stack;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.out_degree(v) == 0 && !g.is_labeled(v)) stack.push_back(v);
  }
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    if (!sub.kept[v]) continue;
    sub.kept[v] = false;
    std::vector<VertexId> parents(g.parents(v).begin(), g.parents(v).end());
    for (VertexId p : parents) {
      g.remove_edge(p, v);
      if (g.out_degree(p) == 0 && !g.is_labeled(p)) stack.push_back(p);
    }
  }

  if (trim_root) {
    while (sub.kept[sub.root] && g.out_degree(sub.root) == 1 && !g.is_labeled(sub.root)) {
      VertexId child = g.children(sub.root)[0];
      g.remove_edge(sub.root, child);
      sub.kept[sub.root] = false;
      sub.root = child;
    }
  }
  return sub;
}

struct ExtractedTree {
  PhyloTree tree;
  // Tree vertex -> network vertex it corresponds to.
  std::vector<VertexId> network_vertex;
  // Tree edge -> network vertices suppressed onto it, top-down.
  std::map<Edge, std::vector<VertexId>> collapsed;
};

inline ExtractedTree ExtractTree(const PhyloNetwork& network, const Switching& switching,
                                 const std::set<std::string>* labels = nullptr) {
  Subdivision sub = SwitchedSubdivision(network, switching, labels);
  std::vector<VertexId> alive;
  std::vector<VertexId> position(network.size(), kNoVertex);
  for (VertexId v = 0; v < network.size(); ++v) {
    if (sub.kept[v]) {
      position[v] = alive.size();
      alive.push_back(v);
    }
  }
  DirectedGraph compact(alive.size());
  for (std::size_t k = 0; k < alive.size(); ++k) {
    compact.set_external_id(k, network.graph().external_id(alive[k]));
    if (sub.graph.label(alive[k])) compact.set_label(k, *sub.graph.label(alive[k]));
  }
  for (const Edge& e : sub.graph.edges()) compact.add_edge(position[e.from], position[e.to]);

  SuppressionResult sup = SuppressDegreeTwo(compact);
  VertexId root = 0;
  for (VertexId v = 0; v < sup.graph.vertex_count(); ++v) {
    if (sup.graph.in_degree(v) == 0) root = v;
  }
  // ValidateTree swaps the root into slot 0.
  std::vector<VertexId> order(sup.graph.vertex_count());
  for (VertexId v = 0; v < order.size(); ++v) order[v] = v;
  std::swap(order[0], order[root]);

  ExtractedTree out{ValidateTree(sup.graph), {}, {}};
  std::vector<VertexId> where(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) where[order[k]] = k;
  for (VertexId old : order) out.network_vertex.push_back(alive[sup.origin[old]]);
  for (const auto& [edge, path] : sup.collapsed) {
    std::vector<VertexId> net_path;
    for (VertexId v : path) net_path.push_back(alive[v]);
    out.collapsed[{where[edge.from], where[edge.to]}] = std::move(net_path);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Witnesses.

// Tree vertex u_i is embedded as the directed path path_of[i] of N; tree edge
// (u_i, u_l) is realized by connecting_edge, which leaves the last vertex of
// path_of[i] and enters path_of[l].
struct DisplayWitness {
  std::vector<VertexId> kept_vertices;
  std::vector<VertexId> deleted_vertices;
  std::vector<std::vector<VertexId>> path_of;
  std::map<Edge, Edge> connecting_edge;
};

inline std::set<std::string> LabelSet(const PhyloNetwork& net) {
  auto labels = net.label_set();
  return {labels.begin(), labels.end()};
}

// Empty result means the witness is well-formed for (network, tree).
inline std::vector<std::string> CheckWitness(const PhyloNetwork& network, const PhyloTree& tree,
                                             const DisplayWitness& w) {
  std::vector<std::string> problems;
  if (w.path_of.size() != tree.size()) {
    problems.push_back("path_of has " + std::to_string(w.path_of.size()) + " entries, tree has " +
                       std::to_string(tree.size()) + " vertices");
    return problems;
  }
  std::vector<int> owner(network.size(), -1);
  for (std::size_t i = 0; i < w.path_of.size(); ++i) {
    const auto& path = w.path_of[i];
    if (path.empty()) problems.push_back("u" + std::to_string(i) + " has an empty path");
    for (std::size_t k = 0; k < path.size(); ++k) {
      VertexId v = path[k];
      if (v >= network.size()) {
        problems.push_back("u" + std::to_string(i) + " maps to unknown vertex");
        continue;
      }
      if (owner[v] != -1) {
        problems.push_back("vertex " + std::to_string(v) + " lies on two paths");
      }
      owner[v] = static_cast<int>(i);
      if (k > 0 && !network.graph().has_edge(path[k - 1], v)) {
        problems.push_back("path of u" + std::to_string(i) + " is not a directed path");
      }
    }
  }
  std::set<VertexId> kept(w.kept_vertices.begin(), w.kept_vertices.end());
  std::set<VertexId> deleted(w.deleted_vertices.begin(), w.deleted_vertices.end());
  for (VertexId v = 0; v < network.size(); ++v) {
    const bool on_path = owner[v] != -1;
    if (on_path != kept.contains(v)) {
      problems.push_back("kept set disagrees with paths at vertex " + std::to_string(v));
    }
    if (kept.contains(v) == deleted.contains(v)) {
      problems.push_back("vertex " + std::to_string(v) + " must be exactly one of kept/deleted");
    }
  }
  std::set<Edge> tree_edges;
  for (const Edge& te : tree.edges()) {
    tree_edges.insert(te);
    auto it = w.connecting_edge.find(te);
    if (it == w.connecting_edge.end()) {
      problems.push_back("tree edge u" + std::to_string(te.from) + "->u" + std::to_string(te.to) +
                         " has no connecting edge");
      continue;
    }
    const Edge ne = it->second;
    if (w.path_of[te.from].empty() || w.path_of[te.to].empty()) continue;
    if (!network.graph().has_edge(ne.from, ne.to)) {
      problems.push_back("connecting edge is not an edge of the network");
    }
    if (ne.from != w.path_of[te.from].back()) {
      problems.push_back("connecting edge for u" + std::to_string(te.from) + "->u" +
                         std::to_string(te.to) + " does not leave the terminal vertex");
    }
    if (ne.to >= network.size() || owner[ne.to] != static_cast<int>(te.to)) {
      problems.push_back("connecting edge for u" + std::to_string(te.from) + "->u" +
                         std::to_string(te.to) + " does not enter the child path");
    }
  }
  for (const auto& [te, ne] : w.connecting_edge) {
    if (!tree_edges.contains(te)) problems.push_back("connecting edge for a non-edge of the tree");
  }
  return problems;
}

// Builds the cluster-map witness for a switching that displays `tree`: every
// kept vertex of the (root-trimmed) subdivision goes to the tree vertex with
// the same cluster. Throws if the switching does not display the tree.
inline DisplayWitness WitnessEmbedding(const PhyloNetwork& network, const PhyloTree& tree,
                                       const Switching& switching) {
  const std::set<std::string> labels = LabelSet(tree);
  Subdivision sub = SwitchedSubdivision(network, switching, &labels, /*trim_root=*/true);
  ClusterTable sub_clusters = Clusters(sub.graph);
  ClusterTable tree_clusters = Clusters(tree);
  std::map<Cluster, VertexId> vertex_of;
  for (VertexId u = 0; u < tree.size(); ++u) vertex_of.emplace(tree_clusters[u], u);

  DisplayWitness w;
  w.path_of.resize(tree.size());
  for (VertexId v : network.topological_order()) {
    if (!sub.kept[v]) continue;
    auto it = vertex_of.find(sub_clusters[v]);
    if (it == vertex_of.end()) throw Error("switching does not display the tree");
    w.path_of[it->second].push_back(v);
  }
  for (VertexId v = 0; v < network.size(); ++v) {
    (sub.kept[v] ? w.kept_vertices : w.deleted_vertices).push_back(v);
  }
  for (const Edge& te : tree.edges()) {
    const auto& child_path = w.path_of[te.to];
    if (w.path_of[te.from].empty() || child_path.empty()) {
      throw Error("switching does not display the tree");
    }
    VertexId tail = w.path_of[te.from].back();
    for (VertexId c : sub.graph.children(tail)) {
      if (std::find(child_path.begin(), child_path.end(), c) != child_path.end()) {
        w.connecting_edge[te] = {tail, c};
      }
    }
  }
  if (!CheckWitness(network, tree, w).empty()) {
    throw Error("switching does not display the tree");
  }
  return w;
}

// Adjacencies of N that a zero-energy encoding of `w` cannot have: a vertex
// with both children (or a reticulation with both parents) on one path, a
// vertex on u's path reaching a child path by a second edge, or a vertex
// whose two children lie on u's path and a child path. Assumes CheckWitness
// passed.
inline std::vector<std::string> WitnessConflicts(const PhyloNetwork& network,
                                                 const PhyloTree& tree, const DisplayWitness& w) {
  std::vector<std::string> conflicts;
  std::vector<int> owner(network.size(), -1);
  for (std::size_t i = 0; i < w.path_of.size(); ++i) {
    for (VertexId v : w.path_of[i]) owner[v] = static_cast<int>(i);
  }
  for (VertexId v = 0; v < network.size(); ++v) {
    if (owner[v] < 0) continue;
    if (network.is_tree_vertex(v)) {
      auto ch = network.children(v);
      if (owner[ch[0]] == owner[v] && owner[ch[1]] == owner[v]) {
        conflicts.push_back("vertex " + std::to_string(v) + " and both its children share a path");
      }
    }
    if (network.is_reticulation(v)) {
      auto ps = network.parents(v);
      if (owner[ps[0]] == owner[v] && owner[ps[1]] == owner[v]) {
        conflicts.push_back("vertex " + std::to_string(v) + " and both its parents share a path");
      }
    }
  }
  for (const Edge& te : tree.edges()) {
    const int from = static_cast<int>(te.from), to = static_cast<int>(te.to);
    std::size_t links = 0;
    for (VertexId v : w.path_of[te.from]) {
      for (VertexId c : network.children(v)) links += owner[c] == to;
      if (!network.is_tree_vertex(v)) continue;
      auto ch = network.children(v);
      if (owner[ch[0]] == to && owner[ch[1]] == to) {
        conflicts.push_back("both children of " + std::to_string(v) + " on one child path");
      }
      if ((owner[ch[0]] == from && owner[ch[1]] == to) ||
          (owner[ch[1]] == from && owner[ch[0]] == to)) {
        conflicts.push_back("children of " + std::to_string(v) + " split between parent and child path");
      }
    }
    if (links != 1) {
      conflicts.push_back("tree edge u" + std::to_string(te.from) + "->u" + std::to_string(te.to) +
                          " has " + std::to_string(links) + " edges of N");
    }
  }
  return conflicts;
}

struct DisplayResult {
  bool displays = false;
  std::optional<DisplayWitness> witness;
  std::optional<Switching> switching;
  std::uint64_t switchings_checked = 0;
};

// Decides whether `network` displays `tree` (whose leaf set may be a subset
// of the network's). The witness comes from a displaying switching whose
// embedding has no WitnessConflicts, fewest kept vertices first; a
// conflicted one is returned only if no other displays the tree.
inline DisplayResult Displays(const PhyloNetwork& network, const PhyloTree& tree) {
  const std::set<std::string> net_labels = LabelSet(network);
  const std::set<std::string> labels = LabelSet(tree);
  for (const auto& l : labels) {
    if (!net_labels.contains(l)) {
      throw Error("tree leaf '" + l + "' does not occur in the network");
    }
  }
  const std::uint64_t count = SwitchingCount(network);
  DisplayResult result;
  std::size_t best_kept = 0;
  bool best_clean = false;
  for (std::uint64_t k = 0; k < count; ++k) {
    Switching s = SwitchingFromIndex(network, k);
    ++result.switchings_checked;
    ExtractedTree ex = ExtractTree(network, s, &labels);
    if (!TreeIsomorphic(ex.tree, tree)) continue;
    DisplayWitness w = WitnessEmbedding(network, tree, s);
    const bool clean = WitnessConflicts(network, tree, w).empty();
    if (!result.displays || (clean && !best_clean) ||
        (clean == best_clean && w.kept_vertices.size() < best_kept)) {
      best_kept = w.kept_vertices.size();
      best_clean = clean;
      result.displays = true;
      result.witness = std::move(w);
      result.switching = std::move(s);
    }
  }
  return result;
}

// Pairwise non-isomorphic trees over all switchings, ordered by cluster set.
inline std::vector<PhyloTree> DisplayedTrees(const PhyloNetwork& network) {
  std::map<std::set<Cluster>, PhyloTree> unique;
  const std::uint64_t count = SwitchingCount(network);
  for (std::uint64_t k = 0; k < count; ++k) {
    ExtractedTree ex = ExtractTree(network, SwitchingFromIndex(network, k));
    unique.emplace(ClusterSet(ex.tree), std::move(ex.tree));
  }
  std::vector<PhyloTree> out;
  for (auto& [key, tree] : unique) out.push_back(std::move(tree));
  return out;
}

}  // namespace tcqubo
