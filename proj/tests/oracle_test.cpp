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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tcqubo/tcqubo.hpp"

namespace tcqubo {
namespace {

using oracle::LoadFixture;

PhyloTree Tree(const std::string& name) {
  return ParseTree(oracle::Slurp(oracle::DataPath(name)), Format::kEdgeList);
}

Switching Keep(VertexId reticulation, VertexId parent) {
  Switching s;
  s.kept_parent[reticulation] = parent;
  return s;
}

TEST(ExtractTest, TwoTreeNetworkParents) {
  Instance inst = LoadFixture("twotree_t1.json");
  // Reticulation 4 has parents 2 and 3; keeping 2 -> 4 gives (((a,b),c),d).
  ExtractedTree ex = ExtractTree(inst.network, Keep(4, 2));
  EXPECT_TRUE(TreeIsomorphic(ex.tree, Tree("twotree_t1.txt")));
  ex = ExtractTree(inst.network, Keep(4, 3));
  EXPECT_TRUE(TreeIsomorphic(ex.tree, Tree("twotree_t2.txt")));
}

TEST(ExtractTest, NoReticulationsIsIdentity) {
  PhyloTree t = Tree("worked_t1.txt");
  auto trees = DisplayedTrees(t);
  ASSERT_EQ(trees.size(), 1u);
  EXPECT_TRUE(TreeIsomorphic(trees[0], t));
  ExtractedTree ex = ExtractTree(t, Switching{});
  EXPECT_EQ(ex.tree.graph().edges(), t.graph().edges());
  EXPECT_TRUE(ex.collapsed.at(Edge{0, 1}).empty());
}

TEST(ExtractTest, WorkedExampleBothSwitchings) {
  Instance inst = LoadFixture("worked_t2.json");
  // Keeping 1 -> 4: vertex 2 loses its child 4 and is suppressed onto 0 -> 8.
  ExtractedTree keep1 = ExtractTree(inst.network, Keep(4, 1));
  EXPECT_EQ(oracle::Canonical(keep1.tree), "('d',('c',('a','b',),),)");
  // Keeping 2 -> 4: vertex 1 has the single child 3.
  ExtractedTree keep2 = ExtractTree(inst.network, Keep(4, 2));
  EXPECT_EQ(oracle::Canonical(keep2.tree), "(('a','b',),('c','d',),)");
  // Provenance: the suppressed vertices are recorded on the surviving edges.
  std::set<VertexId> collapsed;
  for (const auto& [edge, path] : keep1.collapsed) collapsed.insert(path.begin(), path.end());
  EXPECT_EQ(collapsed, (std::set<VertexId>{2, 4}));
}

TEST(ExtractTest, RejectsBadSwitching) {
  Instance inst = LoadFixture("worked_t2.json");
  EXPECT_THROW(ExtractTree(inst.network, Switching{}), Error);
  EXPECT_THROW(ExtractTree(inst.network, Keep(4, 3)), Error);
}

TEST(DisplaysTest, WorkedExample) {
  Instance yes = LoadFixture("worked_t2.json");
  DisplayResult r = Displays(yes.network, yes.tree);
  EXPECT_TRUE(r.displays);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(CheckWitness(yes.network, yes.tree, *r.witness).empty());
  EXPECT_TRUE(WitnessConflicts(yes.network, yes.tree, *r.witness).empty());

  Instance no = LoadFixture("worked_t1.json");
  r = Displays(no.network, no.tree);
  EXPECT_FALSE(r.displays);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(r.switchings_checked, 2u);
}

TEST(DisplaysTest, TwoTreeNetwork) {
  Instance inst = LoadFixture("twotree_t1.json");
  EXPECT_TRUE(Displays(inst.network, inst.tree).displays);
  inst = LoadFixture("twotree_t2.json");
  EXPECT_TRUE(Displays(inst.network, inst.tree).displays);
}

TEST(DisplaysTest, LabelMismatchRejected) {
  Instance inst = LoadFixture("worked_t2.json");
  PhyloTree other = ParseTree("0 1\n0 2\nL 1 a\nL 2 zz\n", Format::kEdgeList);
  EXPECT_THROW(Displays(inst.network, other), Error);
}

TEST(DisplaysTest, RefusesTooManyReticulations) {
  Rng rng(5);
  PhyloNetwork big = RandomNetwork(12, 21, rng);
  PhyloTree t = RandomTree(12, rng);
  EXPECT_THROW(Displays(big, t), TooLargeError);
}

TEST(DisplayedTreesTest, TwoTreeNetworkExactlyTwo) {
  Instance inst = LoadFixture("twotree_t1.json");
  auto trees = DisplayedTrees(inst.network);
  ASSERT_EQ(trees.size(), 2u);
  std::set<std::set<Cluster>> got{ClusterSet(trees[0]), ClusterSet(trees[1])};
  std::set<std::set<Cluster>> want{ClusterSet(Tree("twotree_t1.txt")), ClusterSet(Tree("twotree_t2.txt"))};
  EXPECT_EQ(got, want);
}

TEST(DisplayedTreesTest, WorkedExample) {
  Instance inst = LoadFixture("worked_t2.json");
  auto trees = DisplayedTrees(inst.network);
  ASSERT_EQ(trees.size(), 2u);
  int t2 = 0, t1 = 0;
  for (const auto& t : trees) {
    t2 += TreeIsomorphic(t, Tree("worked_t2.txt"));
    t1 += TreeIsomorphic(t, Tree("worked_t1.txt"));
  }
  EXPECT_EQ(t2, 1);
  EXPECT_EQ(t1, 0);
}

TEST(WitnessTest, WorkedExampleMatchesReportedAssignment) {
  Instance inst = LoadFixture("worked_t2.json");
  DisplayResult r = Displays(inst.network, inst.tree);
  ASSERT_TRUE(r.witness.has_value());
  std::vector<std::vector<VertexId>> rows = r.witness->path_of;
  rows.push_back(r.witness->deleted_vertices);
  for (auto& row : rows) std::sort(row.begin(), row.end());
  EXPECT_EQ(rows, oracle::kReportedT2);
}

TEST(WitnessTest, TreeInItselfIsIdentity) {
  PhyloTree t = Tree("worked_t1.txt");
  DisplayResult r = Displays(t, t);
  ASSERT_TRUE(r.displays);
  EXPECT_TRUE(r.witness->deleted_vertices.empty());
  for (VertexId u = 0; u < t.size(); ++u) {
    EXPECT_EQ(r.witness->path_of[u], std::vector<VertexId>{u});
  }
}

TEST(WitnessTest, ConflictsDetected) {
  // 11 -> 7 -> 12 and 11 -> 12: keeping 7 -> 12 puts 7 on the cherry's path
  // with a second edge into the path of leaf 0.
  PhyloNetwork n = ParseNetwork(
      "6 13\n6 15\n7 4\n7 12\n8 1\n8 6\n9 8\n9 11\n10 9\n10 16\n11 7\n11 12\n12 0\n"
      "13 3\n13 14\n14 2\n15 14\n15 16\n16 5\n"
      "L 0 t0\nL 1 t1\nL 2 t2\nL 3 t3\nL 4 t4\nL 5 t5\n",
      Format::kEdgeList);
  PhyloTree t = ParseTree(
      "9 8\n9 11\n6 3\n6 15\n8 1\n8 6\n11 4\n11 0\n15 2\n15 5\n"
      "L 0 t0\nL 1 t1\nL 2 t2\nL 3 t3\nL 4 t4\nL 5 t5\n",
      Format::kEdgeList);
  int clean = 0, conflicted = 0;
  for (std::uint64_t k = 0; k < SwitchingCount(n); ++k) {
    DisplayWitness w;
    try {
      w = WitnessEmbedding(n, t, SwitchingFromIndex(n, k));
    } catch (const Error&) {
      continue;
    }
    (WitnessConflicts(n, t, w).empty() ? clean : conflicted)++;
  }
  EXPECT_GT(clean, 0);
  EXPECT_GT(conflicted, 0);
  DisplayResult r = Displays(n, t);
  ASSERT_TRUE(r.displays);
  EXPECT_TRUE(WitnessConflicts(n, t, *r.witness).empty());
}

TEST(WitnessTest, RejectsNonDisplayingSwitching) {
  Instance inst = LoadFixture("worked_t1.json");
  EXPECT_THROW(WitnessEmbedding(inst.network, inst.tree, Keep(4, 1)), Error);
  EXPECT_THROW(WitnessEmbedding(inst.network, inst.tree, Keep(4, 2)), Error);
}

TEST(WitnessTest, CheckWitnessFindsDefects) {
  Instance inst = LoadFixture("worked_t2.json");
  DisplayWitness w = *Displays(inst.network, inst.tree).witness;
  EXPECT_TRUE(CheckWitness(inst.network, inst.tree, w).empty());
  DisplayWitness broken = w;
  broken.path_of[5] = {7, 4};
  EXPECT_FALSE(CheckWitness(inst.network, inst.tree, broken).empty());
  broken = w;
  broken.connecting_edge.erase(broken.connecting_edge.begin());
  EXPECT_FALSE(CheckWitness(inst.network, inst.tree, broken).empty());
  broken = w;
  broken.path_of[6].push_back(0);
  EXPECT_FALSE(CheckWitness(inst.network, inst.tree, broken).empty());
}

// The switching oracle against a search over edge subsets of N.
TEST(DisplaysPropertyTest, AgreesWithEdgeSubsetSearch) {
  Rng rng(99);
  int yes = 0, total = 0;
  for (int k = 0; k < 120; ++k) {
    const std::size_t leaves = 3 + k % 3, r = 1 + k % 3;
    PhyloNetwork n = RandomNetwork(leaves, r, rng);
    if (n.graph().edge_count() > 18) continue;
    PhyloTree t = (k % 2 == 0) ? RandomDisplayedTree(n, rng) : RandomTree(leaves, rng);
    DisplayResult got = Displays(n, t);
    ASSERT_EQ(got.displays, oracle::DisplaysByEdgeSubsets(n, t)) << "instance " << k;
    if (got.displays) {
      EXPECT_TRUE(CheckWitness(n, t, *got.witness).empty());
      EXPECT_TRUE(WitnessConflicts(n, t, *got.witness).empty());
      ++yes;
    }
    ++total;
  }
  EXPECT_GT(total, 60);
  EXPECT_GT(yes, total / 2 - 5);
}

TEST(DisplaysPropertyTest, DefinitionBySwitchings) {
  Rng rng(123);
  for (int k = 0; k < 60; ++k) {
    PhyloNetwork n = RandomNetwork(4 + k % 3, 1 + k % 4, rng);
    PhyloTree t = (k % 2 == 0) ? RandomDisplayedTree(n, rng) : RandomTree(4 + k % 3, rng);
    bool any = false;
    for (std::uint64_t s = 0; s < SwitchingCount(n); ++s) {
      ExtractedTree ex = ExtractTree(n, SwitchingFromIndex(n, s));
      EXPECT_EQ(ex.tree.label_set(), n.label_set());
      any = any || TreeIsomorphic(ex.tree, t);
    }
    EXPECT_EQ(Displays(n, t).displays, any);
    EXPECT_LE(DisplayedTrees(n).size(), SwitchingCount(n));
  }
}

TEST(DisplaysPropertyTest, SubsetLeaves) {
  Instance inst = LoadFixture("worked_t2.json");
  // Restricting T_2 to {a, b, c}: ((a,b),c).
  PhyloTree sub = ParseTree("0 1\n1 2\n1 3\n0 4\nL 2 a\nL 3 b\nL 4 c\n", Format::kEdgeList);
  DisplayResult r = Displays(inst.network, sub);
  EXPECT_TRUE(r.displays);
  EXPECT_TRUE(CheckWitness(inst.network, sub, *r.witness).empty());
  PhyloTree bc = ParseTree("0 1\n1 2\n1 3\n0 4\nL 2 b\nL 3 c\nL 4 a\n", Format::kEdgeList);
  EXPECT_EQ(Displays(inst.network, bc).displays, oracle::DisplaysByEdgeSubsets(inst.network, bc));
}

}  // namespace
}  // namespace tcqubo
