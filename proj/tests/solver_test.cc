// Copyright 2026 The projcd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "projcd/solver.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "projcd/errors.h"
#include "projcd/geometry.h"
#include "projcd/graph.h"
#include "projcd/partition.h"
#include "projcd/queries.h"
#include "test_util.h"

namespace projcd {
namespace {

Graph TwoTriangles() {
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  return Graph(6, edges);
}

double Scale(const PairVector& q) {
  return Norm(q) * std::sqrt(static_cast<double>(q.num_pairs()));
}

// Best objective over all partitions and the set of partitions attaining it.
std::pair<double, std::vector<Partition>> Enumerate(const PairVector& q, double tol = 1e-9) {
  double best = -INFINITY;
  std::vector<Partition> argmax;
  testing::ForEachPartition(q.n(), [&](const std::vector<int>& labels) {
    const Partition c(labels);
    const double v = InnerWithPartition(q, c);
    if (v > best + tol) {
      best = v;
      argmax = {c};
    } else if (v >= best - tol) {
      argmax.push_back(c);
    }
  });
  return {best, argmax};
}

// Largest single-node move gain over every existing community and a fresh one.
double MaxMoveGain(const PairVector& q, const Partition& c) {
  const LocalMoveState state(q, c);
  double best = -INFINITY;
  for (NodeId i = 0; i < state.n(); ++i) {
    best = std::max(best, state.MoveGain(i, LocalMoveState::kFresh));
    for (NodeId j = 0; j < state.n(); ++j) {
      best = std::max(best, state.MoveGain(i, state.community(j)));
    }
  }
  return best;
}

TEST(MoveGainTest, Examples) {
  std::mt19937_64 rng(1);
  const PairVector q = testing::RandomSL(10, rng);
  const LocalMoveState state(q, testing::RandomPartition(10, 3, rng));
  for (NodeId i = 0; i < 10; ++i) EXPECT_DOUBLE_EQ(state.MoveGain(i, state.community(i)), 0.0);

  const PairVector ones = PairVector::Constant(8, 1.0);
  const LocalMoveState grouped(ones, Partition(std::vector<int>{0, 0, 0, 1, 1, 2, 3, 4}));
  EXPECT_NEAR(grouped.MoveGain(5, grouped.community(0)), 6.0, 1e-12);
  EXPECT_NEAR(grouped.MoveGain(6, grouped.community(3)), 4.0, 1e-12);
  EXPECT_NEAR(grouped.MoveGain(7, grouped.community(6)), 2.0, 1e-12);
}

TEST(MoveGainTest, MatchesFullReevaluation) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const PairVector q = testing::RandomSL(15, rng);
    const Partition start = testing::RandomPartition(15, 5, rng);
    LocalMoveState state(q, start);
    EXPECT_NEAR(state.Objective(), InnerWithPartition(q, start), 1e-9);
    std::uniform_int_distribution<NodeId> node(0, 14);
    for (int step = 0; step < 30; ++step) {
      const NodeId i = node(rng);
      const CommunityId target =
          step % 5 == 0 ? LocalMoveState::kFresh : state.community(node(rng));
      const double before = InnerWithPartition(q, state.ToPartition());
      const double gain = state.MoveGain(i, target);
      state.Move(i, target);
      const double after = InnerWithPartition(q, state.ToPartition());
      EXPECT_NEAR(gain, after - before, 1e-9);
      EXPECT_NEAR(state.Objective(), after, 1e-9);
      EXPECT_TRUE(state.CheckAggregates(1e-9));
    }
  }
}

TEST(MoveGainTest, AggregatedLevelIsExact) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const PairVector q = testing::RandomSL(14, rng);
    const Partition fine_start = testing::RandomPartition(14, 6, rng);
    const LocalMoveState fine(q, fine_start);
    LocalMoveState coarse = fine.Aggregate();
    EXPECT_NEAR(coarse.Objective(), InnerWithPartition(q, fine_start), 1e-9);
    EXPECT_NEAR(coarse.RecomputeObjective(), coarse.Objective(), 1e-9);
    const Partition super = fine.ToPartition();
    auto unfold = [&]() {
      std::vector<int> labels(14);
      for (NodeId v = 0; v < 14; ++v) labels[v] = coarse.community(super.community(v));
      return Partition(labels);
    };
    std::uniform_int_distribution<NodeId> node(0, coarse.n() - 1);
    for (int step = 0; step < 10; ++step) {
      const NodeId i = node(rng);
      const CommunityId target =
          step % 3 == 0 ? LocalMoveState::kFresh : coarse.community(node(rng));
      const double before = InnerWithPartition(q, unfold());
      const double gain = coarse.MoveGain(i, target);
      coarse.Move(i, target);
      EXPECT_NEAR(gain, InnerWithPartition(q, unfold()) - before, 1e-9);
    }
  }
}

TEST(LouvainTest, TwoTrianglesIsGlobalOptimum) {
  const Graph g = TwoTriangles();
  const PairVector q = ErModularityQuery(g, 1.0);
  const auto [best, argmax] = Enumerate(q);
  const Partition expected(std::vector<int>{0, 0, 0, 1, 1, 1});
  ASSERT_EQ(argmax.size(), 1u);
  EXPECT_EQ(argmax[0], expected);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    SolverConfig config;
    config.seed = seed;
    EXPECT_EQ(LouvainProject(q, config), expected);
  }
  double objective = 0;
  EXPECT_EQ(ExactProject(q, {}, &objective), expected);
  EXPECT_NEAR(objective, best, 1e-12);
}

TEST(LouvainTest, ConstantQueries) {
  for (NodeId n : {2, 7, 50}) {
    EXPECT_EQ(LouvainProject(PairVector::Constant(n, -1.0)), Partition::Singletons(n));
    EXPECT_EQ(LouvainProject(PairVector::Constant(n, 1.0)), Partition::OneCluster(n));
  }
  EXPECT_EQ(LouvainProject(PairVector(5)), Partition::Singletons(5));
  EXPECT_EQ(LouvainProject(PairVector(1)).n(), 1);
}

TEST(LouvainTest, LocalOptimality) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 12; ++trial) {
    const NodeId n = std::uniform_int_distribution<NodeId>(20, 200)(rng);
    testing::RandomSLOptions options;
    options.density = 0.05;
    options.max_terms = 3;
    const PairVector q = testing::RandomSL(n, rng, options);
    SolverConfig config;
    config.seed = trial;
    config.screening_threshold = trial % 2 == 0 ? 0.0 : 4.0;
    SolveStats stats;
    const Partition c = LouvainProject(q, config, &stats);
    EXPECT_TRUE(stats.exhaustive_pass_run);
    EXPECT_LE(MaxMoveGain(q, c), config.epsilon * Scale(q) + 1e-12) << "trial " << trial;
    EXPECT_LE(stats.max_objective_drift, 1e-6);
    EXPECT_NEAR(stats.objective, InnerWithPartition(q, c),
                1e-6 * std::max(1.0, std::abs(stats.objective)));
  }
}

TEST(LouvainTest, LocalOptimalityOnGraphQueries) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    const Graph g = testing::RandomGraph(150, 0.04, rng);
    if (g.num_edges() == 0) continue;
    for (const PairVector& q : {ClModularityQuery(g, 1.0), ErModularityQuery(g, 2.0),
                                LinearCombinationQuery(g, 1.0, 0.5, -2.5, -0.01)}) {
      const Partition c = LouvainProject(q);
      EXPECT_LE(MaxMoveGain(q, c), 1e-12 * Scale(q) + 1e-12);
    }
  }
}

TEST(LouvainTest, Deterministic) {
  std::mt19937_64 rng(6);
  const Graph g = testing::RandomGraph(300, 0.02, rng);
  const PairVector q = ClModularityQuery(g, 1.0);
  SolverConfig config;
  config.seed = 99;
  const Partition a = LouvainProject(q, config);
  const Partition b = LouvainProject(q, config);
  EXPECT_EQ(a, b);
}

TEST(LouvainTest, ObjectiveNeverDecreases) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const PairVector q = testing::RandomSL(60, rng);
    LocalMoveState state(q);
    SolverConfig config;
    std::mt19937_64 sweep_rng(trial);
    const double min_gain = config.epsilon * Scale(q);
    double last = state.Objective();
    for (int level = 0; level < 6; ++level) {
      SolveStats stats;
      const int64_t moves = state.RunLocalMoves(sweep_rng, config, min_gain, false, &stats);
      EXPECT_GE(state.Objective(), last - 1e-9);
      last = state.Objective();
      if (moves == 0) break;
      state = state.Aggregate();
      EXPECT_NEAR(state.Objective(), last, 1e-9 * std::max(1.0, std::abs(last)));
      EXPECT_NEAR(state.RecomputeObjective(), state.Objective(), 1e-9);
    }
  }
}

TEST(LouvainTest, OracleBound) {
  std::mt19937_64 rng(8);
  int compared = 0;
  int optimal = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const NodeId n = std::uniform_int_distribution<NodeId>(3, 8)(rng);
    const PairVector q = testing::RandomSL(n, rng);
    double exact = 0;
    ExactProject(q, {}, &exact);
    SolverConfig config;
    config.seed = trial;
    const double louvain = InnerWithPartition(q, LouvainProject(q, config));
    EXPECT_LE(louvain, exact + 1e-9);
    if (exact > 0) {
      ++compared;
      EXPECT_GE(louvain, 0.9 * exact);
    }
    if (louvain >= exact - 1e-9) ++optimal;
  }
  EXPECT_GT(compared, 0);
  EXPECT_GE(optimal, 70);
}

TEST(ExactTest, Examples) {
  const PairVector q(3, {{0, 1, 1.0}, {0, 2, -0.5}, {1, 2, -0.5}});
  EXPECT_EQ(ExactProject(q), Partition(std::vector<int>{0, 0, 1}));
  // With the remaining entries at zero the one-cluster partition ties and wins
  // by the lexicographic rule.
  EXPECT_EQ(ExactProject(PairVector(3, {{0, 1, 1.0}})), Partition::OneCluster(3));
  EXPECT_THROW(ExactProject(PairVector::Constant(13, 1.0)), ParameterError);
  SolverConfig small;
  small.exact_cap = 4;
  EXPECT_THROW(ExactProject(PairVector::Constant(5, 1.0), small), ParameterError);
}

TEST(ExactTest, MatchesEnumeration) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const NodeId n = std::uniform_int_distribution<NodeId>(2, 7)(rng);
    const PairVector q = testing::RandomSL(n, rng);
    double objective = 0;
    const Partition c = ExactProject(q, {}, &objective);
    const auto [best, argmax] = Enumerate(q);
    EXPECT_NEAR(objective, best, 1e-9);
    EXPECT_NEAR(InnerWithPartition(q, c), best, 1e-9);
  }
}

TEST(ExactTest, ErModularityArgmaxSets) {
  std::mt19937_64 rng(10);
  for (NodeId n : {5, 6, 7}) {
    Graph g = testing::RandomGraph(n, 0.5, rng);
    if (g.num_edges() == 0) continue;
    const double m = static_cast<double>(g.num_edges());
    for (double gamma : {0.5, 1.0, 2.0}) {
      const PairVector q = ErModularityQuery(g, gamma);
      std::set<std::vector<CommunityId>> erm_best;
      double best = -INFINITY;
      testing::ForEachPartition(n, [&](const std::vector<int>& labels) {
        const Partition c(labels);
        double erm = 0;
        for (NodeId i = 0; i < n; ++i) {
          for (NodeId j = i + 1; j < n; ++j) {
            if (c.community(i) == c.community(j)) {
              erm += (g.HasEdge(i, j) ? 1.0 : 0.0) - gamma * m / NumPairs(n);
            }
          }
        }
        std::vector<CommunityId> key(c.membership().begin(), c.membership().end());
        if (erm > best + 1e-9) {
          best = erm;
          erm_best = {key};
        } else if (erm >= best - 1e-9) {
          erm_best.insert(key);
        }
      });
      const auto [unused, argmax] = Enumerate(q);
      std::set<std::vector<CommunityId>> da_best;
      for (const Partition& c : argmax) {
        da_best.insert(std::vector<CommunityId>(c.membership().begin(), c.membership().end()));
      }
      EXPECT_EQ(erm_best, da_best);
      const Partition exact = ExactProject(q);
      EXPECT_TRUE(erm_best.contains(
          std::vector<CommunityId>(exact.membership().begin(), exact.membership().end())));
    }
  }
}

TEST(EvaluateTest, PlantedEqualsDetected) {
  std::mt19937_64 rng(11);
  const Graph g = TwoTriangles();
  const PairVector q = ClModularityQuery(g, 1.0);
  const Partition t(std::vector<int>{0, 0, 0, 1, 1, 1});
  const DetectionResult r = Evaluate(q, t, &t);
  EXPECT_EQ(r.num_communities, 2);
  ASSERT_TRUE(r.rho && r.granularity_error && r.excess_ratio);
  EXPECT_NEAR(*r.rho, 1.0, 1e-12);
  EXPECT_NEAR(*r.granularity_error, 0.0, 1e-12);
  EXPECT_NEAR(*r.excess_ratio, 0.0, 1e-12);
  EXPECT_NEAR(r.objective, InnerWithPartition(q, t), 1e-12);
}

TEST(EvaluateTest, ExcessSignAndMissingMetrics) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const PairVector q = testing::RandomSL(12, rng);
    const Partition c = testing::RandomPartition(12, 4, rng);
    const Partition t = testing::RandomPartition(12, 4, rng);
    const DetectionResult r = Evaluate(q, c, &t);
    ASSERT_TRUE(r.d_a_qc && r.d_a_qt && r.excess_ratio);
    EXPECT_EQ(*r.excess_ratio <= 0.0, *r.d_a_qc <= *r.d_a_qt);
  }
  const PairVector q = testing::RandomSL(6, rng);
  const Partition singles = Partition::Singletons(6);
  const DetectionResult r = Evaluate(q, Partition::OneCluster(6), &singles);
  EXPECT_FALSE(r.rho.has_value());
  EXPECT_FALSE(r.granularity_error.has_value());
  EXPECT_TRUE(r.d_a_qc.has_value());
  const DetectionResult zero = Evaluate(PairVector(6), singles);
  EXPECT_FALSE(zero.d_a_qc.has_value());
}

}  // namespace
}  // namespace projcd
