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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tcqubo/error.hpp"
#include "tcqubo/graph.hpp"
#include "tcqubo/hamiltonian.hpp"
#include "tcqubo/layout.hpp"
#include "tcqubo/oracle.hpp"
#include "tcqubo/phylo.hpp"
#include "tcqubo/solver.hpp"

namespace tcqubo {

// d(x, u_i) for i = 0..n_T; the last entry is the deleted set.
struct DecodedMapping {
  std::vector<std::vector<VertexId>> sets;
};

inline DecodedMapping Decode(const Assignment& a, const VariableLayout& L) {
  if (a.size() != L.m()) {
    throw Error("assignment has " + std::to_string(a.size()) + " bits, layout needs " +
                std::to_string(L.m()));
  }
  DecodedMapping d;
  d.sets.resize(L.n_T() + 1);
  for (std::size_t i = 0; i <= L.n_T(); ++i) {
    for (VertexId j = 0; j < L.n_N(); ++j) {
      if (a[L.x(i, j)]) d.sets[i].push_back(j);
    }
  }
  return d;
}

// Categories follow the penalty that would be nonzero.
struct Violation {
  std::string category;  // "P1", "P2", ..., "terminal", "reconstruction"
  std::string message;
};

struct VerificationReport {
  bool verdict = false;
  std::vector<Violation> violations;
  std::optional<PhyloTree> reconstructed_tree;
  // Path prefixes above the incoming connecting edge, dropped before suppression.
  std::vector<VertexId> dangling_removed;
};

namespace detail {

inline std::string U(std::size_t i) { return "u" + std::to_string(i); }
inline std::string V(VertexId j) { return "v" + std::to_string(j); }

inline std::string SetText(const std::vector<VertexId>& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? ", " : "") + V(s[k]);
  return out + "}";
}

// Sorts `set` along a directed path of N; false if it does not induce one.
inline bool OrderAsPath(const PhyloNetwork& N, std::vector<VertexId>& set) {
  std::vector<std::size_t> rank(N.size());
  const auto& topo = N.topological_order();
  for (std::size_t k = 0; k < topo.size(); ++k) rank[topo[k]] = k;
  std::sort(set.begin(), set.end(), [&](VertexId a, VertexId b) { return rank[a] < rank[b]; });
  for (std::size_t k = 1; k < set.size(); ++k) {
    if (!N.graph().has_edge(set[k - 1], set[k])) return false;
  }
  return true;
}

}  // namespace detail

inline VerificationReport VerifyDisplay(const DecodedMapping& mapping, const Instance& inst) {
  using detail::SetText;
  using detail::U;
  using detail::V;
  const PhyloNetwork& N = inst.network;
  const PhyloTree& T = inst.tree;
  const std::size_t n_T = T.size(), n_N = N.size();
  VerificationReport report;
  auto fail = [&](std::string cat, std::string msg) {
    report.violations.push_back({std::move(cat), std::move(msg)});
  };
  if (mapping.sets.size() != n_T + 1) {
    fail("shape", "mapping has " + std::to_string(mapping.sets.size()) + " rows, expected " +
                      std::to_string(n_T + 1));
    return report;
  }

  std::vector<std::vector<VertexId>> d(mapping.sets.begin(), mapping.sets.end());
  std::vector<std::vector<std::size_t>> owners(n_N);
  for (std::size_t i = 0; i <= n_T; ++i) {
    for (VertexId v : d[i]) {
      if (v >= n_N) {
        fail("shape", U(i) + " maps to unknown vertex " + std::to_string(v));
        return report;
      }
      owners[v].push_back(i);
    }
  }
  std::vector<int> owner(n_N, -1);
  for (VertexId v = 0; v < n_N; ++v) {
    if (owners[v].size() != 1) {
      fail("P2", V(v) + " is covered " + std::to_string(owners[v].size()) + " times");
    } else {
      owner[v] = static_cast<int>(owners[v][0]);
    }
  }
  auto in = [&](std::size_t i, VertexId v) {
    return std::find(owners[v].begin(), owners[v].end(), i) != owners[v].end();
  };

  for (std::size_t i = 0; i < n_T; ++i) {
    if (d[i].empty()) {
      fail("P1", U(i) + " maps to no vertex");
    } else if (i == 0 && d[i].size() != 1) {
      fail("P1", "root u0 maps to " + std::to_string(d[i].size()) + " vertices");
    }
    if (!d[i].empty() && !detail::OrderAsPath(N, d[i])) {
      fail("P11", U(i) + " maps to " + SetText(d[i]) + ", not a directed path of N");
    }
    for (VertexId j = 0; j < n_N; ++j) {
      if (!in(i, j)) continue;
      if (N.is_tree_vertex(j)) {
        auto ch = N.children(j);
        if (in(i, ch[0]) && in(i, ch[1])) {
          fail("P4", U(i) + " maps to " + V(j) + " and both its children");
        }
      }
      if (N.is_reticulation(j)) {
        auto ps = N.parents(j);
        if (in(i, ps[0]) && in(i, ps[1])) {
          fail("P6", U(i) + " maps to " + V(j) + " and both its parents");
        }
      }
    }
  }

  for (VertexId u = 0; u < n_T; ++u) {
    if (!T.is_leaf(u)) continue;
    auto v = N.leaf_of(T.label(u));
    if (!v || !in(u, *v)) {
      fail("P10", U(u) + " does not map to the leaf labeled '" + T.label(u) + "'");
    }
  }

  for (const Edge& e : T.edges()) {
    const std::size_t i = e.from, l = e.to;
    for (VertexId j = 0; j < n_N; ++j) {
      if (!in(i, j) || !N.is_tree_vertex(j)) continue;
      auto [c1, c2] = detail::SortedPair(N.children(j));
      if (in(l, c1) && in(l, c2)) {
        fail("P7", U(l) + " maps to both children of " + V(j) + " in " + U(i));
      }
      if ((in(i, c1) && in(l, c2)) || (in(i, c2) && in(l, c1))) {
        fail("P9", U(i) + " and its child " + U(l) + " share the children of " + V(j));
      }
    }
    std::vector<Edge> links;
    for (VertexId a : d[i]) {
      for (VertexId b : N.children(a)) {
        if (in(l, b)) links.push_back({a, b});
      }
    }
    if (links.size() != 1) {
      fail("P12", "tree edge " + U(i) + "->" + U(l) + " is realized by " +
                      std::to_string(links.size()) + " edges of N");
    } else if (!d[i].empty() && links[0].from != d[i].back()) {
      fail("terminal", "edge into " + U(l) + " leaves " + V(links[0].from) +
                           ", not the terminal vertex of " + U(i));
    }
  }
  if (!report.violations.empty()) return report;

  // Subdivision of T: paths plus connecting edges, dangling prefixes dropped.
  std::vector<bool> keep(n_N, false);
  std::vector<std::size_t> head(n_T, 0);
  for (const Edge& e : T.edges()) {
    for (VertexId b : N.children(d[e.from].back())) {
      if (in(e.to, b)) {
        head[e.to] = static_cast<std::size_t>(std::find(d[e.to].begin(), d[e.to].end(), b) -
                                              d[e.to].begin());
      }
    }
  }
  for (std::size_t i = 0; i < n_T; ++i) {
    for (std::size_t k = 0; k < d[i].size(); ++k) {
      if (k < head[i]) {
        report.dangling_removed.push_back(d[i][k]);
      } else {
        keep[d[i][k]] = true;
      }
    }
  }
  std::sort(report.dangling_removed.begin(), report.dangling_removed.end());

  std::vector<VertexId> position(n_N, kNoVertex);
  std::vector<VertexId> alive;
  for (VertexId v = 0; v < n_N; ++v) {
    if (keep[v]) {
      position[v] = alive.size();
      alive.push_back(v);
    }
  }
  DirectedGraph sub(alive.size());
  for (std::size_t k = 0; k < alive.size(); ++k) {
    sub.set_external_id(k, N.graph().external_id(alive[k]));
    if (N.graph().label(alive[k])) sub.set_label(k, *N.graph().label(alive[k]));
  }
  for (std::size_t i = 0; i < n_T; ++i) {
    for (std::size_t k = head[i] + 1; k < d[i].size(); ++k) {
      sub.add_edge(position[d[i][k - 1]], position[d[i][k]]);
    }
  }
  for (const Edge& e : T.edges()) {
    sub.add_edge(position[d[e.from].back()], position[d[e.to][head[e.to]]]);
  }
  try {
    PhyloTree rebuilt = ValidateTree(SuppressDegreeTwo(sub).graph);
    if (!TreeIsomorphic(rebuilt, T)) {
      fail("reconstruction", "suppressed subdivision is not isomorphic to T");
    }
    report.reconstructed_tree = std::move(rebuilt);
  } catch (const Error& e) {
    fail("reconstruction", std::string("subdivision does not yield a tree: ") + e.what());
  }
  report.verdict = report.violations.empty();
  return report;
}

// Zero-energy assignment from an oracle witness.
inline Assignment EncodeWitness(const DisplayWitness& w, const Instance& inst,
                                const VariableLayout& L) {
  auto problems = CheckWitness(inst.network, inst.tree, w);
  if (!problems.empty()) throw Error("invalid witness: " + problems.front());
  Assignment a(L.m());
  for (std::size_t i = 0; i < w.path_of.size(); ++i) {
    for (VertexId v : w.path_of[i]) a[L.x(i, v)] = 1;
  }
  for (VertexId v : w.deleted_vertices) a[L.x(L.n_T(), v)] = 1;
  return CompleteSlacks(std::move(a), inst, L);
}

}  // namespace tcqubo
