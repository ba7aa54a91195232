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

// The twelve penalty polynomials and their weighted sum
//   H = B (P1 + ... + P10) + A P11 + P12,  A = 2 n_N,  B = 4 n_N^2 n_T^2.
//
// Children and parents of a network vertex are taken in increasing index
// order: c1 < c2, p1 < p2. zhat(i, 2j) pairs with c1, zhat(i, 2j + 1) with c2.

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tcqubo/error.hpp"
#include "tcqubo/layout.hpp"
#include "tcqubo/phylo.hpp"
#include "tcqubo/polynomial.hpp"

namespace tcqubo {

inline constexpr int kPenaltyCount = 12;

namespace detail {
inline std::pair<VertexId, VertexId> SortedPair(std::span<const VertexId> two) {
  return two[0] < two[1] ? std::pair(two[0], two[1]) : std::pair(two[1], two[0]);
}
}  // namespace detail

inline QuadraticPolynomial BuildPenalty(const Instance& inst, const VariableLayout& L,
                                        int which) {
  const PhyloNetwork& N = inst.network;
  const PhyloTree& T = inst.tree;
  const std::size_t n_T = L.n_T(), n_N = L.n_N();
  QuadraticPolynomial p;
  std::vector<LinearTerm> terms;

  switch (which) {
    case 1:
      // Root row: exactly one vertex. Other rows: at least one, surplus in y.
      for (std::size_t i = 0; i < n_T; ++i) {
        terms.clear();
        for (VertexId j = 0; j < n_N; ++j) terms.push_back({-1, L.x(i, j)});
        if (i > 0) {
          for (std::size_t r = 0; r < L.k_y(); ++r) {
            terms.push_back({Coeff{1} << r, L.y(i, r)});
          }
        }
        p.add_square(1, terms);
      }
      break;
    case 2:
      for (VertexId j = 0; j < n_N; ++j) {
        terms.clear();
        for (std::size_t i = 0; i <= n_T; ++i) terms.push_back({1, L.x(i, j)});
        p.add_square(-1, terms);
      }
      break;
    case 3:
      for (std::size_t i = 0; i < n_T; ++i) {
        for (VertexId j : L.tree_vertices()) {
          auto [c1, c2] = detail::SortedPair(N.children(j));
          p.add_product_block(L.x(i, c1), L.x(i, c2), L.z(i, j));
        }
      }
      break;
    case 4:
      for (std::size_t i = 0; i < n_T; ++i) {
        for (VertexId j : L.tree_vertices()) p.add_quadratic(L.x(i, j), L.z(i, j), 1);
      }
      break;
    case 5:
      for (std::size_t i = 0; i < n_T; ++i) {
        for (VertexId j = 0; j < n_N; ++j) {
          if (!N.is_reticulation(j)) continue;
          auto [p1, p2] = detail::SortedPair(N.parents(j));
          p.add_product_block(L.x(i, p1), L.x(i, p2), L.z(i, j));
        }
      }
      break;
    case 6:
      for (std::size_t i = 0; i < n_T; ++i) {
        for (VertexId j = 0; j < n_N; ++j) {
          if (N.is_reticulation(j)) p.add_quadratic(L.x(i, j), L.z(i, j), 1);
        }
      }
      break;
    case 7:
      for (const Edge& e : T.edges()) {
        for (VertexId j : L.tree_vertices()) p.add_quadratic(L.x(e.from, j), L.z(e.to, j), 1);
      }
      break;
    case 8:
      for (std::size_t i = 0; i < n_T; ++i) {
        if (T.is_leaf(i)) continue;
        for (VertexId j : L.tree_vertices()) {
          auto [c1, c2] = detail::SortedPair(N.children(j));
          p.add_product_block(L.x(i, j), L.x(i, c1), L.zhat(i, j, 0));
          p.add_product_block(L.x(i, j), L.x(i, c2), L.zhat(i, j, 1));
        }
      }
      break;
    case 9:
      for (const Edge& e : T.edges()) {
        if (T.is_leaf(e.from)) continue;
        for (VertexId j : L.tree_vertices()) {
          auto [c1, c2] = detail::SortedPair(N.children(j));
          p.add_quadratic(L.zhat(e.from, j, 0), L.x(e.to, c2), 1);
          p.add_quadratic(L.zhat(e.from, j, 1), L.x(e.to, c1), 1);
        }
      }
      break;
    case 10:
      for (VertexId u = 0; u < n_T; ++u) {
        if (!T.is_leaf(u)) continue;
        auto v = N.leaf_of(T.label(u));
        if (!v) throw Error("tree leaf '" + T.label(u) + "' does not occur in the network");
        const LinearTerm t{-1, L.x(u, *v)};
        p.add_square(1, std::span(&t, 1));
      }
      break;
    case 11:
      for (std::size_t i = 0; i < n_T; ++i) {
        for (VertexId j = 0; j < n_N; ++j) {
          p.add_linear(L.x(i, j), 1);
          for (VertexId k : N.children(j)) p.add_quadratic(L.x(i, j), L.x(i, k), -1);
        }
      }
      p.add_constant(-static_cast<Coeff>(n_T));
      break;
    case 12: {
      const auto net_edges = N.graph().edges();
      for (const Edge& e : T.edges()) {
        p.add_constant(1);
        for (const Edge& f : net_edges) p.add_quadratic(L.x(e.from, f.from), L.x(e.to, f.to), -1);
      }
      break;
    }
    default:
      throw Error("penalty index must be in 1..12, got " + std::to_string(which));
  }
  return p;
}

using PenaltyValues = std::array<Coeff, kPenaltyCount>;

struct Hamiltonian {
  VariableLayout layout;
  Coeff A = 0;
  Coeff B = 0;
  std::array<QuadraticPolynomial, kPenaltyCount> penalties;  // P1 at [0]
  QuadraticPolynomial total;

  Coeff weight(int which) const { return which <= 10 ? B : which == 11 ? A : 1; }

  template <class Bits>
  PenaltyValues breakdown(const Bits& bits) const {
    PenaltyValues out{};
    for (int k = 0; k < kPenaltyCount; ++k) out[k] = penalties[k].evaluate(bits);
    return out;
  }

  // Weighted recombination of a breakdown.
  Coeff combine(const PenaltyValues& values) const {
    Coeff h = 0;
    for (int k = 0; k < kPenaltyCount; ++k) {
      h = detail::CheckedAdd(h, detail::CheckedMul(weight(k + 1), values[k]));
    }
    return h;
  }

  QuboMatrix qubo() const { return ToQubo(total, layout.m()); }
};

inline Hamiltonian Assemble(const Instance& inst, const VariableLayout& layout) {
  Hamiltonian h;
  h.layout = layout;
  const Coeff n_N = static_cast<Coeff>(layout.n_N()), n_T = static_cast<Coeff>(layout.n_T());
  h.A = 2 * n_N;
  h.B = detail::CheckedMul(detail::CheckedMul(4, detail::CheckedMul(n_N, n_N)),
                           detail::CheckedMul(n_T, n_T));
  for (int k = 1; k <= kPenaltyCount; ++k) {
    h.penalties[k - 1] = BuildPenalty(inst, layout, k);
    h.total.add(h.penalties[k - 1], h.weight(k));
  }
  return h;
}

inline Hamiltonian Assemble(const Instance& inst) {
  return Assemble(inst, VariableLayout(inst.network, inst.tree, inst.subset_leaves));
}

}  // namespace tcqubo
