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

// Random instances for tests and benchmarks.

#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "tcqubo/error.hpp"
#include "tcqubo/graph.hpp"
#include "tcqubo/oracle.hpp"
#include "tcqubo/phylo.hpp"

namespace tcqubo {

using Rng = std::mt19937_64;

inline std::string DefaultLabel(std::size_t k) { return "t" + std::to_string(k); }

namespace detail {
inline std::size_t Pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}
}  // namespace detail

// Random binary tree on `leaves` taxa by repeatedly joining two random roots.
inline DirectedGraph RandomTreeGraph(std::size_t leaves, Rng& rng) {
  if (leaves == 0) throw Error("a tree needs at least one leaf");
  DirectedGraph g(2 * leaves - 1);
  std::vector<VertexId> roots;
  for (std::size_t k = 0; k < leaves; ++k) {
    g.set_label(k, DefaultLabel(k));
    roots.push_back(k);
  }
  VertexId next = leaves;
  while (roots.size() > 1) {
    std::size_t a = detail::Pick(rng, roots.size());
    VertexId va = roots[a];
    roots.erase(roots.begin() + static_cast<std::ptrdiff_t>(a));
    std::size_t b = detail::Pick(rng, roots.size());
    VertexId vb = roots[b];
    roots.erase(roots.begin() + static_cast<std::ptrdiff_t>(b));
    g.add_edge(next, va);
    g.add_edge(next, vb);
    roots.push_back(next++);
  }
  return g;
}

inline PhyloTree RandomTree(std::size_t leaves, Rng& rng) {
  return ValidateTree(RandomTreeGraph(leaves, rng));
}

// Random tree plus `reticulations` extra arcs, each added by subdividing two
// distinct edges and joining the new vertices; arcs that would close a cycle
// are redrawn. Result has 2 * leaves - 1 + 2 * reticulations vertices.
inline PhyloNetwork RandomNetwork(std::size_t leaves, std::size_t reticulations, Rng& rng) {
  if (leaves < 2 && reticulations > 0) throw Error("reticulations need at least two leaves");
  DirectedGraph g = RandomTreeGraph(leaves, rng);
  for (std::size_t added = 0; added < reticulations;) {
    auto edges = g.edges();
    const Edge e1 = edges[detail::Pick(rng, edges.size())];
    const Edge e2 = edges[detail::Pick(rng, edges.size())];
    if (e1 == e2) continue;
    DirectedGraph h(g.vertex_count() + 2);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (g.label(v)) h.set_label(v, *g.label(v));
    }
    const VertexId s = g.vertex_count(), t = s + 1;
    for (const Edge& e : edges) {
      if (e == e1) {
        h.add_edge(e.from, s);
        h.add_edge(s, e.to);
      } else if (e == e2) {
        h.add_edge(e.from, t);
        h.add_edge(t, e.to);
      } else {
        h.add_edge(e.from, e.to);
      }
    }
    h.add_edge(s, t);
    if (!TopologicalOrder(h)) continue;
    g = std::move(h);
    ++added;
  }
  return ValidateNetwork(g);
}

// Tree displayed by a random switching of `network`.
inline PhyloTree RandomDisplayedTree(const PhyloNetwork& network, Rng& rng) {
  const std::uint64_t count = SwitchingCount(network);
  const std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, count - 1)(rng);
  return ExtractTree(network, SwitchingFromIndex(network, k)).tree;
}

// Same tree with shuffled vertex indices (root still moved to 0).
inline PhyloTree ShuffledCopy(const PhyloTree& tree, Rng& rng) {
  std::vector<VertexId> order(tree.size());
  for (VertexId v = 0; v < order.size(); ++v) order[v] = v;
  std::shuffle(order.begin(), order.end(), rng);
  return ValidateTree(tree.graph().permuted(order));
}

}  // namespace tcqubo
