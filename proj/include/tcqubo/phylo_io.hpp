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

// Text formats for networks and trees.
//
// Edge list, one object per file:
//   # comment
//   <u> <v>          edge from parent u to child v
//   L <v> <label>    leaf v carries <label> (rest of the line, trimmed)
//
// JSON object: {"edges": [[u, v], ...], "leaves": {"<v>": "<label>", ...}}
// An instance is {"network": <object>, "tree": <object>}.
//
// Vertex ids are arbitrary non-negative integers. They are mapped to dense
// indices in increasing id order; trees additionally move their root to 0.

#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tcqubo/error.hpp"
#include "tcqubo/graph.hpp"
#include "tcqubo/phylo.hpp"

namespace tcqubo {

enum class Format { kJson, kEdgeList };

struct RawGraph {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  std::map<std::uint64_t, std::string> leaves;
};

namespace detail {

inline std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::uint64_t ParseId(std::string_view token, std::size_t line, const std::string& field) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
    throw ParseError("expected a non-negative integer vertex id, got '" + std::string(token) + "'",
                     line, field);
  }
  return value;
}

inline std::vector<std::string_view> Tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace detail

inline RawGraph ParseEdgeList(std::string_view text) {
  RawGraph raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = detail::Trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    auto tokens = detail::Tokens(line);
    if (tokens.front() == "L") {
      if (tokens.size() < 3) throw ParseError("leaf line needs 'L <vertex> <label>'", line_no);
      std::uint64_t v = detail::ParseId(tokens[1], line_no, {});
      // The label is everything after the vertex id.
      std::string_view rest = line.substr(tokens[1].data() + tokens[1].size() - line.data());
      std::string label(detail::Trim(rest));
      if (!raw.leaves.emplace(v, label).second) {
        throw ParseError("vertex " + std::to_string(v) + " labeled twice", line_no);
      }
      continue;
    }
    if (tokens.size() != 2) {
      throw ParseError("edge line needs exactly two vertex ids", line_no);
    }
    raw.edges.emplace_back(detail::ParseId(tokens[0], line_no, {}),
                           detail::ParseId(tokens[1], line_no, {}));
  }
  return raw;
}

inline RawGraph RawFromJson(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError("expected an object", 0, where);
  RawGraph raw;
  if (j.contains("edges")) {
    const auto& edges = j.at("edges");
    if (!edges.is_array()) throw ParseError("expected an array", 0, where + ".edges");
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto& e = edges[k];
      const std::string field = where + ".edges[" + std::to_string(k) + "]";
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
          !e[1].is_number_unsigned()) {
        throw ParseError("expected a pair of non-negative integers", 0, field);
      }
      raw.edges.emplace_back(e[0].get<std::uint64_t>(), e[1].get<std::uint64_t>());
    }
  }
  if (j.contains("leaves")) {
    const auto& leaves = j.at("leaves");
    if (!leaves.is_object()) throw ParseError("expected an object", 0, where + ".leaves");
    for (const auto& [key, value] : leaves.items()) {
      const std::string field = where + ".leaves." + key;
      if (!value.is_string()) throw ParseError("label must be a string", 0, field);
      raw.leaves.emplace(detail::ParseId(key, 0, field), value.get<std::string>());
    }
  }
  return raw;
}

inline RawGraph ParseJsonGraph(std::string_view text, const std::string& where = "$") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), 0, where);
  }
  return RawFromJson(j, where);
}

// Builds the graph with vertices in increasing id order.
inline DirectedGraph BuildGraph(const RawGraph& raw) {
  std::set<std::uint64_t> ids;
  for (auto [u, v] : raw.edges) {
    ids.insert(u);
    ids.insert(v);
  }
  for (const auto& [v, label] : raw.leaves) ids.insert(v);
  std::map<std::uint64_t, VertexId> index;
  for (std::uint64_t id : ids) index.emplace(id, index.size());
  DirectedGraph g(ids.size());
  for (auto [id, k] : index) g.set_external_id(k, id);
  for (auto [u, v] : raw.edges) g.add_edge(index.at(u), index.at(v));
  for (const auto& [v, label] : raw.leaves) g.set_label(index.at(v), label);
  return g;
}

inline RawGraph ParseRaw(std::string_view text, Format format) {
  return format == Format::kJson ? ParseJsonGraph(text) : ParseEdgeList(text);
}

inline PhyloNetwork ParseNetwork(std::string_view text, Format format) {
  return ValidateNetwork(BuildGraph(ParseRaw(text, format)));
}

inline PhyloTree ParseTree(std::string_view text, Format format) {
  return ValidateTree(BuildGraph(ParseRaw(text, format)));
}

// Parses {"network": ..., "tree": ...}.
inline Instance ParseInstance(std::string_view text, bool subset_leaves = false) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), 0, "$");
  }
  if (!j.is_object() || !j.contains("network") || !j.contains("tree")) {
    throw ParseError("instance needs 'network' and 'tree' members", 0, "$");
  }
  Instance inst{ValidateNetwork(BuildGraph(RawFromJson(j.at("network"), "network"))),
                ValidateTree(BuildGraph(RawFromJson(j.at("tree"), "tree"))), subset_leaves};
  return inst;
}

inline Instance ParseInstance(std::string_view network_text, std::string_view tree_text,
                              Format format, bool subset_leaves = false) {
  return Instance{ParseNetwork(network_text, format), ParseTree(tree_text, format),
                  subset_leaves};
}

// ---------------------------------------------------------------------------
// Writers. Vertices are written with their external ids.

inline nlohmann::json ToJson(const DirectedGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back({g.external_id(e.from), g.external_id(e.to)});
  }
  nlohmann::json leaves = nlohmann::json::object();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.label(v)) leaves[std::to_string(g.external_id(v))] = *g.label(v);
  }
  return {{"edges", edges}, {"leaves", leaves}};
}

inline std::string ToEdgeList(const DirectedGraph& g) {
  std::ostringstream out;
  for (const Edge& e : g.edges()) {
    out << g.external_id(e.from) << ' ' << g.external_id(e.to) << '\n';
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.label(v)) out << "L " << g.external_id(v) << ' ' << *g.label(v) << '\n';
  }
  return out.str();
}

}  // namespace tcqubo
