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
#include <atomic>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "tcqubo/error.hpp"
#include "tcqubo/hamiltonian.hpp"
#include "tcqubo/layout.hpp"
#include "tcqubo/phylo.hpp"
#include "tcqubo/polynomial.hpp"

namespace tcqubo {

struct Assignment {
  std::vector<std::uint8_t> bits;

  Assignment() = default;
  explicit Assignment(std::size_t m) : bits(m, 0) {}

  std::size_t size() const { return bits.size(); }
  std::uint8_t operator[](std::size_t k) const { return bits[k]; }
  std::uint8_t& operator[](std::size_t k) { return bits[k]; }

  std::string to_string() const {
    std::string s(bits.size(), '0');
    for (std::size_t k = 0; k < bits.size(); ++k) s[k] = bits[k] ? '1' : '0';
    return s;
  }

  static Assignment FromString(std::string_view text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
      text.remove_suffix(1);
    }
    Assignment a(text.size());
    for (std::size_t k = 0; k < text.size(); ++k) {
      if (text[k] != '0' && text[k] != '1') {
        throw ParseError("assignment must consist of '0'/'1' characters, found '" +
                             std::string(1, text[k]) + "' at position " + std::to_string(k),
                         1);
      }
      a.bits[k] = text[k] == '1';
    }
    return a;
  }

  auto operator<=>(const Assignment&) const = default;
};

inline Coeff Evaluate(const QuboMatrix& q, const Assignment& a) { return q.evaluate(a.bits); }

// Overwrites every slack of `a` from its x-part: z and zhat become the
// products they stand for, and y(i, .) the binary encoding of the row
// surplus max(0, sum_j x(i, j) - 1), clamped to what k_y bits can hold.
inline Assignment CompleteSlacks(Assignment a, const Instance& inst, const VariableLayout& L) {
  if (a.size() != L.m()) {
    throw Error("assignment has " + std::to_string(a.size()) + " bits, layout needs " +
                std::to_string(L.m()));
  }
  const PhyloNetwork& N = inst.network;
  const PhyloTree& T = inst.tree;
  const std::size_t cap = L.k_y() == 0 ? 0 : (std::size_t{1} << L.k_y()) - 1;
  for (std::size_t i = 1; i < L.n_T(); ++i) {
    std::size_t count = 0;
    for (VertexId j = 0; j < L.n_N(); ++j) count += a[L.x(i, j)];
    const std::size_t surplus = std::min(count == 0 ? 0 : count - 1, cap);
    for (std::size_t r = 0; r < L.k_y(); ++r) a[L.y(i, r)] = (surplus >> r) & 1U;
  }
  for (std::size_t i = 0; i < L.n_T(); ++i) {
    for (VertexId j : L.z_vertices()) {
      auto two = N.is_reticulation(j) ? N.parents(j) : N.children(j);
      a[L.z(i, j)] = a[L.x(i, two[0])] & a[L.x(i, two[1])];
    }
    if (T.is_leaf(i)) continue;
    for (VertexId j : L.tree_vertices()) {
      auto [c1, c2] = detail::SortedPair(N.children(j));
      a[L.zhat(i, j, 0)] = a[L.x(i, j)] & a[L.x(i, c1)];
      a[L.zhat(i, j, 1)] = a[L.x(i, j)] & a[L.x(i, c2)];
    }
  }
  return a;
}

struct SolveResult {
  Assignment best;
  Coeff energy = 0;
  std::optional<PenaltyValues> penalty_breakdown;
  std::size_t restarts_used = 0;
  std::size_t sweeps_used = 0;
  bool reached_zero = false;
  // Best energy after folding in each restart, in restart order.
  std::vector<Coeff> trajectory;
};

inline void AttachBreakdown(SolveResult& r, const Hamiltonian& h) {
  r.penalty_breakdown = h.breakdown(r.best.bits);
}

// ---------------------------------------------------------------------------
// Neighbour lists for O(degree) flip deltas.

namespace detail {

struct SparseQubo {
  std::vector<Coeff> diag;
  std::vector<std::vector<std::pair<std::size_t, Coeff>>> adj;

  explicit SparseQubo(const QuboMatrix& q) : diag(q.dimension(), 0), adj(q.dimension()) {
    for (const auto& e : q.entries()) {
      if (e.i == e.j) {
        diag[e.i] = e.value;
      } else {
        adj[e.i].emplace_back(e.j, e.value);
        adj[e.j].emplace_back(e.i, e.value);
      }
    }
  }

  // Energy change of flipping bit k.
  Coeff delta(const std::vector<std::uint8_t>& x, std::size_t k) const {
    Coeff field = diag[k];
    for (auto [l, c] : adj[k]) {
      if (x[l]) field += c;
    }
    return x[k] ? -field : field;
  }
};

inline bool Better(Coeff e1, const Assignment& a1, Coeff e2, const Assignment& a2) {
  return e1 < e2 || (e1 == e2 && a1.bits < a2.bits);
}

}  // namespace detail

inline constexpr std::size_t kMaxExhaustiveVariables = 26;

// Global minimum by Gray-code enumeration. Ties go to the lexicographically
// smallest bit string (bit 0 first).
inline SolveResult SolveExhaustive(const QuboMatrix& q) {
  const std::size_t m = q.dimension();
  if (m > kMaxExhaustiveVariables) {
    throw TooLargeError("exhaustive search refuses " + std::to_string(m) + " variables (limit " +
                        std::to_string(kMaxExhaustiveVariables) + ")");
  }
  detail::SparseQubo sq(q);
  Assignment current(m);
  Coeff energy = q.offset();
  SolveResult result;
  result.best = current;
  result.energy = energy;
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t step = 1; step < total; ++step) {
    const std::size_t k = static_cast<std::size_t>(std::countr_zero(step));
    energy += sq.delta(current.bits, k);
    current[k] ^= 1U;
    if (detail::Better(energy, current, result.energy, result.best)) {
      result.best = current;
      result.energy = energy;
    }
  }
  result.restarts_used = 1;
  result.sweeps_used = 1;
  result.reached_zero = result.energy == 0;
  result.trajectory = {result.energy};
  return result;
}

struct AnnealParams {
  std::size_t restarts = 100;
  std::size_t sweeps = 100000;
  // <= 0 means max |Q entry|.
  double t_hi = 0.0;
  double t_lo = 0.5;
  std::uint64_t seed = 0;
  // 0 means hardware concurrency.
  std::size_t threads = 1;
  // Skip restarts after the first one (in index order) that reaches energy 0.
  bool stop_at_zero = true;
};

namespace detail {

struct RestartOutcome {
  Assignment best;
  Coeff energy = 0;
};

inline RestartOutcome AnnealOnce(const SparseQubo& sq, const QuboMatrix& q,
                                 const AnnealParams& p, std::uint64_t seed) {
  const std::size_t m = q.dimension();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Assignment x(m);
  for (std::size_t k = 0; k < m; ++k) x[k] = static_cast<std::uint8_t>(rng() & 1U);
  Coeff energy = q.evaluate(x.bits);
  RestartOutcome out{x, energy};

  // field[k] = Q_kk + sum_l Q_kl x_l; flipping k changes the energy by
  // +field[k] (0 -> 1) or -field[k] (1 -> 0).
  std::vector<Coeff> field(sq.diag);
  for (std::size_t k = 0; k < m; ++k) {
    if (!x[k]) continue;
    for (auto [l, c] : sq.adj[k]) field[l] += c;
  }

  double t_hi = p.t_hi;
  if (t_hi <= 0) {
    for (const auto& e : q.entries()) t_hi = std::max(t_hi, std::abs(static_cast<double>(e.value)));
  }
  t_hi = std::max(t_hi, p.t_lo);
  const double ratio =
      p.sweeps > 1 ? std::pow(p.t_lo / t_hi, 1.0 / static_cast<double>(p.sweeps - 1)) : 1.0;
  double t = p.sweeps > 1 ? t_hi : p.t_lo;
  for (std::size_t s = 0; s < p.sweeps; ++s, t *= ratio) {
    // Deltas above this are accepted with probability below e^-40.
    const double cutoff = 40.0 * t;
    for (std::size_t k = 0; k < m; ++k) {
      const Coeff d = x[k] ? -field[k] : field[k];
      if (d > 0 && (static_cast<double>(d) > cutoff ||
                    unit(rng) >= std::exp(-static_cast<double>(d) / t))) {
        continue;
      }
      const Coeff sign = x[k] ? -1 : 1;
      x[k] ^= 1U;
      energy += d;
      for (auto [l, c] : sq.adj[k]) field[l] += sign * c;
      if (Better(energy, x, out.energy, out.best)) {
        out.best = x;
        out.energy = energy;
      }
    }
  }
  return out;
}

}  // namespace detail

// Single-bit-flip Metropolis with geometric cooling, best of `restarts`
// independent runs. Restart r uses seed + r, so the result does not depend on
// the thread count.
inline SolveResult SolveAnneal(const QuboMatrix& q, const AnnealParams& p) {
  if (p.restarts < 1 || p.sweeps < 1) throw Error("restarts and sweeps must be at least 1");
  if (!(p.t_lo > 0) || (p.t_hi > 0 && p.t_hi < p.t_lo)) {
    throw Error("temperatures must be positive and decreasing");
  }
  const detail::SparseQubo sq(q);
  std::vector<detail::RestartOutcome> outcomes(p.restarts);
  std::size_t threads = p.threads == 0 ? std::thread::hardware_concurrency() : p.threads;
  threads = std::clamp<std::size_t>(threads, 1, p.restarts);

  // Restarts above the smallest index known to hit zero are skipped, so the
  // folded prefix is the same for any thread count.
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_zero{p.restarts};
  std::vector<std::uint8_t> done(p.restarts, 0);
  auto worker = [&] {
    for (std::size_t r = next++; r < p.restarts; r = next++) {
      if (p.stop_at_zero && r > first_zero.load()) continue;
      outcomes[r] = detail::AnnealOnce(sq, q, p, p.seed + r);
      done[r] = 1;
      if (p.stop_at_zero && outcomes[r].energy == 0) {
        std::size_t seen = first_zero.load();
        while (r < seen && !first_zero.compare_exchange_weak(seen, r)) {
        }
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const std::size_t used = p.stop_at_zero ? std::min(first_zero.load() + 1, p.restarts)
                                          : p.restarts;
  SolveResult result;
  for (std::size_t r = 0; r < used; ++r) {
    if (!done[r]) throw Error("internal error: restart skipped");
    if (r == 0 || detail::Better(outcomes[r].energy, outcomes[r].best, result.energy,
                                 result.best)) {
      result.best = std::move(outcomes[r].best);
      result.energy = outcomes[r].energy;
    }
    result.trajectory.push_back(result.energy);
  }
  result.restarts_used = used;
  result.sweeps_used = p.sweeps;
  result.reached_zero = result.energy == 0;
  return result;
}

}  // namespace tcqubo
