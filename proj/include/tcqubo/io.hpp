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

// Output artifacts.
//
// QUBO text:
//   c tc-qubo v1
//   p qubo 0 <m> <nDiag> <nOffDiag>
//   <i> <i> <value>      diagonal, increasing i
//   <i> <j> <value>      i < j, increasing (i, j)
//   c offset <value>
//
// Variable map, one line per index: <index> <x|y|z|zhat> <i> <j-or-r>.
// JSON documents all carry "version": "1".

#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tcqubo/decoder.hpp"
#include "tcqubo/error.hpp"
#include "tcqubo/hamiltonian.hpp"
#include "tcqubo/layout.hpp"
#include "tcqubo/oracle.hpp"
#include "tcqubo/phylo_io.hpp"
#include "tcqubo/polynomial.hpp"
#include "tcqubo/solver.hpp"

namespace tcqubo {

inline constexpr const char* kFormatVersion = "1";

inline std::string WriteQubo(const QuboMatrix& q) {
  std::size_t n_diag = 0, n_off = 0;
  for (const auto& e : q.entries()) (e.i == e.j ? n_diag : n_off)++;
  std::ostringstream out;
  out << "c tc-qubo v1\n";
  out << "p qubo 0 " << q.dimension() << ' ' << n_diag << ' ' << n_off << '\n';
  for (const auto& e : q.entries()) {
    if (e.i == e.j) out << e.i << ' ' << e.j << ' ' << e.value << '\n';
  }
  for (const auto& e : q.entries()) {
    if (e.i != e.j) out << e.i << ' ' << e.j << ' ' << e.value << '\n';
  }
  out << "c offset " << q.offset() << '\n';
  return out.str();
}

inline QuboMatrix ReadQubo(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t m = 0, n_diag = 0, n_off = 0, seen_diag = 0, seen_off = 0;
  Coeff offset = 0;
  std::vector<QuboEntry> entries;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string head;
    if (!(fields >> head)) continue;
    if (head == "c") {
      std::string key;
      if (fields >> key && key == "offset" && !(fields >> offset)) {
        throw ParseError("bad offset line", line_no);
      }
      continue;
    }
    if (head == "p") {
      std::string kind, zero;
      if (!(fields >> kind >> zero >> m >> n_diag >> n_off) || kind != "qubo") {
        throw ParseError("bad problem line", line_no);
      }
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("entry before the problem line", line_no);
    QuboEntry e{};
    std::istringstream entry(line);
    if (!(entry >> e.i >> e.j >> e.value)) throw ParseError("bad entry line", line_no);
    if (e.i > e.j || e.j >= m) throw ParseError("entry outside the upper triangle", line_no);
    (e.i == e.j ? seen_diag : seen_off)++;
    entries.push_back(e);
  }
  if (!have_header) throw ParseError("missing problem line", line_no);
  if (seen_diag != n_diag || seen_off != n_off) {
    throw ParseError("entry counts disagree with the problem line", line_no);
  }
  return QuboMatrix(m, std::move(entries), offset);
}

inline std::string WriteVariableMap(const VariableLayout& L) {
  std::ostringstream out;
  for (std::size_t k = 0; k < L.m(); ++k) {
    const VarInfo v = L.describe(k);
    out << k << ' ' << VarKindName(v.kind) << ' ' << v.i << ' ' << v.j << '\n';
  }
  return out.str();
}

inline std::vector<VarInfo> ReadVariableMap(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::vector<VarInfo> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::size_t index = 0;
    std::string kind;
    VarInfo v{};
    if (!(fields >> index >> kind >> v.i >> v.j) || index != out.size()) {
      throw ParseError("bad variable map line", line_no);
    }
    if (kind == "x") v.kind = VarKind::kX;
    else if (kind == "y") v.kind = VarKind::kY;
    else if (kind == "z") v.kind = VarKind::kZ;
    else if (kind == "zhat") v.kind = VarKind::kZhat;
    else throw ParseError("unknown variable kind '" + kind + "'", line_no);
    out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON.

inline nlohmann::json ToJson(const QuboStats& s) {
  return {{"version", kFormatVersion},
          {"logical_qubits", s.logical_qubits},
          {"diagonal_nonzeros", s.diagonal_nonzeros},
          {"off_diagonal_nonzeros", s.off_diagonal_nonzeros},
          {"density", s.density},
          {"max_abs_coefficient", s.max_abs_coefficient}};
}

inline nlohmann::json ToJson(const VariableLayout& L) {
  return {{"n_T", L.n_T()},   {"n_N", L.n_N()},     {"alpha", L.alpha()}, {"beta", L.beta()},
          {"gamma", L.gamma()}, {"k_y", L.k_y()}, {"m", L.m()}};
}

inline nlohmann::json PenaltiesJson(const PenaltyValues& v) {
  nlohmann::json out = nlohmann::json::object();
  for (int k = 0; k < kPenaltyCount; ++k) out["P" + std::to_string(k + 1)] = v[k];
  return out;
}

inline nlohmann::json ToJson(const SolveResult& r) {
  nlohmann::json j = {{"version", kFormatVersion},
                      {"energy", r.energy},
                      {"reached_zero", r.reached_zero},
                      {"restarts_used", r.restarts_used},
                      {"sweeps_used", r.sweeps_used},
                      {"assignment", r.best.to_string()}};
  if (r.penalty_breakdown) j["penalty_breakdown"] = PenaltiesJson(*r.penalty_breakdown);
  return j;
}

inline nlohmann::json ToJson(const VerificationReport& r) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"category", v.category}, {"message", v.message}});
  }
  nlohmann::json j = {{"version", kFormatVersion},
                      {"verdict", r.verdict},
                      {"violations", violations},
                      {"dangling_removed", r.dangling_removed}};
  j["reconstructed_tree"] =
      r.reconstructed_tree ? nlohmann::json(ToEdgeList(r.reconstructed_tree->graph())) : nullptr;
  return j;
}

// Witness vertices are written with the network's external ids.
inline nlohmann::json ToJson(const DisplayWitness& w, const PhyloNetwork& N) {
  auto id = [&](VertexId v) { return N.graph().external_id(v); };
  nlohmann::json paths = nlohmann::json::array();
  for (const auto& path : w.path_of) {
    nlohmann::json p = nlohmann::json::array();
    for (VertexId v : path) p.push_back(id(v));
    paths.push_back(p);
  }
  nlohmann::json connecting = nlohmann::json::array();
  for (const auto& [te, ne] : w.connecting_edge) {
    connecting.push_back({{"tree_edge", {te.from, te.to}}, {"network_edge", {id(ne.from), id(ne.to)}}});
  }
  nlohmann::json kept = nlohmann::json::array(), deleted = nlohmann::json::array();
  for (VertexId v : w.kept_vertices) kept.push_back(id(v));
  for (VertexId v : w.deleted_vertices) deleted.push_back(id(v));
  return {{"path_of", paths},
          {"connecting_edge", connecting},
          {"kept_vertices", kept},
          {"deleted_vertices", deleted}};
}

inline nlohmann::json ToJson(const DisplayResult& r, const PhyloNetwork& N) {
  nlohmann::json j = {{"version", kFormatVersion},
                      {"displays", r.displays},
                      {"switchings_checked", r.switchings_checked}};
  j["witness"] = r.witness ? ToJson(*r.witness, N) : nlohmann::json(nullptr);
  return j;
}

}  // namespace tcqubo
