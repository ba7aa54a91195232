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

QuboMatrix RandomQubo(std::size_t m, Rng& rng) {
  std::uniform_int_distribution<Coeff> c(-9, 9);
  QuadraticPolynomial p;
  for (std::size_t i = 0; i < m; ++i) {
    p.add_linear(i, c(rng));
    for (std::size_t j = i + 1; j < m; ++j) {
      if (rng() % 3 == 0) p.add_quadratic(i, j, c(rng));
    }
  }
  p.add_constant(c(rng));
  return ToQubo(p, m);
}

// Minimum by plain enumeration, ties broken towards the smaller bit string.
std::pair<Coeff, Assignment> Naive(const QuboMatrix& q) {
  const std::size_t m = q.dimension();
  Coeff best = std::numeric_limits<Coeff>::max();
  Assignment arg(m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Assignment a(m);
    for (std::size_t k = 0; k < m; ++k) a[k] = (mask >> k) & 1U;
    const Coeff e = q.evaluate(a.bits);
    if (e < best || (e == best && a < arg)) {
      best = e;
      arg = a;
    }
  }
  return {best, arg};
}

TEST(ExhaustiveTest, MatchesNaiveEnumeration) {
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    QuboMatrix q = RandomQubo(1 + k % 12, rng);
    SolveResult r = SolveExhaustive(q);
    auto [e, a] = Naive(q);
    ASSERT_EQ(r.energy, e);
    ASSERT_EQ(r.best, a);
    ASSERT_EQ(q.evaluate(r.best.bits), r.energy);
  }
}

TEST(ExhaustiveTest, SingleVariable) {
  QuadraticPolynomial p;
  p.add_linear(0, -4);
  p.add_constant(1);
  SolveResult r = SolveExhaustive(ToQubo(p, 1));
  EXPECT_EQ(r.energy, -3);
  EXPECT_EQ(r.best.to_string(), "1");
}

TEST(ExhaustiveTest, ProductBlockMinimaAreProducts) {
  QuadraticPolynomial p;
  p.add_product_block(0, 1, 2);
  QuboMatrix q = ToQubo(p, 3);
  SolveResult r = SolveExhaustive(q);
  EXPECT_EQ(r.energy, 0);
  for (int mask = 0; mask < 8; ++mask) {
    Assignment a(3);
    for (int k = 0; k < 3; ++k) a[k] = (mask >> k) & 1;
    EXPECT_EQ(q.evaluate(a.bits) == 0, a[2] == (a[0] & a[1]));
  }
}

TEST(ExhaustiveTest, RefusesLargeProblems) {
  EXPECT_THROW(SolveExhaustive(QuboMatrix(kMaxExhaustiveVariables + 1, {}, 0)), TooLargeError);
}

AnnealParams Small(std::uint64_t seed, std::size_t threads = 1) {
  AnnealParams p;
  p.restarts = 8;
  p.sweeps = 400;
  p.seed = seed;
  p.threads = threads;
  p.stop_at_zero = false;
  return p;
}

TEST(AnnealTest, DeterministicForSeed) {
  QuboMatrix q = Assemble(LoadFixture("worked_t1.json")).qubo();
  SolveResult a = SolveAnneal(q, Small(11));
  SolveResult b = SolveAnneal(q, Small(11));
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(a.energy, b.energy);
  EXPECT_EQ(a.trajectory, b.trajectory);
  EXPECT_EQ(q.evaluate(a.best.bits), a.energy);
}

TEST(AnnealTest, ThreadCountDoesNotMatter) {
  QuboMatrix q = Assemble(LoadFixture("twotree_t2.json")).qubo();
  SolveResult one = SolveAnneal(q, Small(5, 1));
  SolveResult three = SolveAnneal(q, Small(5, 3));
  EXPECT_EQ(one.best, three.best);
  EXPECT_EQ(one.trajectory, three.trajectory);
}

TEST(AnnealTest, TrajectoryIsNonIncreasing) {
  QuboMatrix q = Assemble(LoadFixture("worked_t2.json")).qubo();
  SolveResult r = SolveAnneal(q, Small(2));
  ASSERT_EQ(r.trajectory.size(), r.restarts_used);
  for (std::size_t k = 1; k < r.trajectory.size(); ++k) {
    EXPECT_LE(r.trajectory[k], r.trajectory[k - 1]);
  }
  EXPECT_EQ(r.trajectory.back(), r.energy);
}

TEST(AnnealTest, FindsOptimumOfSmallRandomQubos) {
  Rng rng(12);
  for (int k = 0; k < 10; ++k) {
    QuboMatrix q = RandomQubo(10, rng);
    AnnealParams p = Small(k);
    p.restarts = 20;
    EXPECT_EQ(SolveAnneal(q, p).energy, SolveExhaustive(q).energy);
  }
}

TEST(AnnealTest, StopAtZero) {
  QuadraticPolynomial p;
  p.add_product_block(0, 1, 2);
  AnnealParams params = Small(1);
  params.stop_at_zero = true;
  SolveResult r = SolveAnneal(ToQubo(p, 3), params);
  EXPECT_TRUE(r.reached_zero);
  EXPECT_EQ(r.restarts_used, 1u);
}

TEST(AnnealTest, RejectsBadParameters) {
  QuboMatrix q(2, {}, 0);
  AnnealParams p = Small(0);
  p.restarts = 0;
  EXPECT_THROW(SolveAnneal(q, p), Error);
  p = Small(0);
  p.t_lo = 0;
  EXPECT_THROW(SolveAnneal(q, p), Error);
}

TEST(BreakdownTest, RecombinesToEnergy) {
  Instance inst = LoadFixture("worked_t1.json");
  Hamiltonian h = Assemble(inst);
  SolveResult r = SolveAnneal(h.qubo(), Small(4));
  AttachBreakdown(r, h);
  ASSERT_TRUE(r.penalty_breakdown.has_value());
  EXPECT_EQ(h.combine(*r.penalty_breakdown), r.energy);
}

// ---------------------------------------------------------------------------
// Slack completion.

TEST(CompleteSlacksTest, ZeroStaysZero) {
  Instance inst = LoadFixture("worked_t1.json");
  VariableLayout L(inst.network, inst.tree);
  Assignment a = CompleteSlacks(Assignment(L.m()), inst, L);
  EXPECT_EQ(a, Assignment(L.m()));
}

TEST(CompleteSlacksTest, WorkedExampleEnergies) {
  Instance yes = LoadFixture("worked_t2.json");
  Hamiltonian h2 = Assemble(yes);
  Assignment a2 = CompleteSlacks(oracle::FromRows(oracle::kReportedT2, h2.layout), yes, h2.layout);
  EXPECT_EQ(h2.qubo().evaluate(a2.bits), 0);

  Instance no = LoadFixture("worked_t1.json");
  Hamiltonian h1 = Assemble(no);
  Assignment a1 = CompleteSlacks(oracle::FromRows(oracle::kReportedT1, h1.layout), no, h1.layout);
  EXPECT_EQ(h1.qubo().evaluate(a1.bits), 1);
  PenaltyValues v = h1.breakdown(a1.bits);
  for (int k = 0; k < 11; ++k) EXPECT_EQ(v[k], 0) << "P" << k + 1;
  EXPECT_EQ(v[11], 1);
}

// Each slack block individually minimises its own penalties given x.
TEST(CompleteSlacksTest, BlockwiseMinimal) {
  Rng rng(41);
  Instance inst = LoadFixture("twotree_t1.json");
  VariableLayout L(inst.network, inst.tree);
  QuadraticPolynomial p1 = BuildPenalty(inst, L, 1);
  QuadraticPolynomial p358 = BuildPenalty(inst, L, 3);
  p358.add(BuildPenalty(inst, L, 5));
  p358.add(BuildPenalty(inst, L, 8));
  for (int s = 0; s < 200; ++s) {
    Assignment a(L.m());
    for (std::size_t i = 0; i <= L.n_T(); ++i) {
      for (VertexId j = 0; j < L.n_N(); ++j) a[L.x(i, j)] = rng() % 5 == 0;
    }
    a = CompleteSlacks(a, inst, L);
    const Coeff base1 = p1.evaluate(a.bits), base358 = p358.evaluate(a.bits);
    for (std::size_t k = 0; k < L.m(); ++k) {
      const VarInfo info = L.describe(k);
      if (info.kind == VarKind::kX) continue;
      Assignment b = a;
      b[k] ^= 1U;
      if (info.kind == VarKind::kY) {
        EXPECT_GE(p1.evaluate(b.bits), base1);
      } else {
        EXPECT_GE(p358.evaluate(b.bits), base358);
      }
    }
  }
}

TEST(CompleteSlacksTest, WrongSizeRejected) {
  Instance inst = LoadFixture("worked_t1.json");
  VariableLayout L(inst.network, inst.tree);
  EXPECT_THROW(CompleteSlacks(Assignment(3), inst, L), Error);
}

TEST(AssignmentTest, StringRoundTrip) {
  Rng rng(9);
  Assignment a(77);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = rng() & 1U;
  EXPECT_EQ(Assignment::FromString(a.to_string() + "\n"), a);
  EXPECT_THROW(Assignment::FromString("0102"), ParseError);
  EXPECT_EQ(Assignment::FromString("").size(), 0u);
}

}  // namespace
}  // namespace tcqubo
