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

#include "projcd/partition.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "projcd/errors.h"
#include "projcd/geometry.h"
#include "projcd/queries.h"
#include "test_util.h"

namespace projcd {
namespace {

Partition P(std::vector<int> labels) { return Partition(labels); }

TEST(PartitionTest, CanonicalizesLabels) {
  const Partition c = P({7, 3, 7, 9});
  EXPECT_EQ(c.num_communities(), 3);
  EXPECT_EQ(c.community(0), 0);
  EXPECT_EQ(c.community(1), 1);
  EXPECT_EQ(c.community(2), 0);
  EXPECT_EQ(c.community(3), 2);
  EXPECT_EQ(c.sizes()[0], 2);
  EXPECT_EQ(c.intra_pairs(), 1);
  EXPECT_EQ(c, P({0, 1, 0, 2}));
  EXPECT_THROW(P({0, -1}), ParameterError);
  const std::vector<int64_t> wide = {5, 5, 1};
  EXPECT_EQ(Partition(std::span<const int64_t>(wide)), P({0, 0, 1}));
}

TEST(PartitionTest, CommunitiesListsMembers) {
  const auto groups = P({1, 0, 1, 2}).Communities();
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_EQ(groups[0], (std::vector<NodeId>{0, 2}));
  EXPECT_EQ(groups[1], (std::vector<NodeId>{1}));
  EXPECT_EQ(groups[2], (std::vector<NodeId>{3}));
}

TEST(PartitionTest, ClusteringVectorEntries) {
  for (NodeId n : {2, 5, 9}) {
    for (double v : testing::ToDense(AsPairVector(Partition::Singletons(n)))) EXPECT_EQ(v, -1);
    for (double v : testing::ToDense(AsPairVector(Partition::OneCluster(n)))) EXPECT_EQ(v, 1);
  }
  const PairVector b = AsPairVector(P({0, 0, 1}));
  EXPECT_DOUBLE_EQ(b.Entry(0, 1), 1);
  EXPECT_DOUBLE_EQ(b.Entry(0, 2), -1);
  EXPECT_DOUBLE_EQ(b.Entry(1, 2), -1);
}

TEST(PartitionTest, ClusteringVectorHasRadiusSqrtN) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const Partition c = testing::RandomPartition(15, 6, rng);
    EXPECT_NEAR(Norm(AsPairVector(c)), std::sqrt(105.0), 1e-9);
    const testing::Dense dense = testing::DenseClustering(c);
    const testing::Dense got = testing::ToDense(AsPairVector(c));
    for (size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], dense[k], 1e-12);
    EXPECT_NEAR(PartitionLatitude(c), Latitude(AsPairVector(c)), 1e-9);
  }
}

TEST(PartitionTest, InnerAndIntraSumMatchDense) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const PairVector q = testing::RandomSL(11, rng);
    const Partition c = testing::RandomPartition(11, 4, rng);
    const testing::Dense dq = testing::ToDense(q);
    double intra = 0;
    for (NodeId i = 0; i < 11; ++i) {
      for (NodeId j = i + 1; j < 11; ++j) {
        if (c.community(i) == c.community(j)) intra += dq[testing::PairPos(i, j, 11)];
      }
    }
    EXPECT_NEAR(IntraSum(q, c), intra, 1e-9);
    EXPECT_NEAR(InnerWithPartition(q, c), testing::Dot(dq, testing::DenseClustering(c)), 1e-9);
    EXPECT_NEAR(AngularDistanceToPartition(q, c),
                testing::DenseAngle(dq, testing::DenseClustering(c)), 1e-9);
  }
}

TEST(PartitionTest, AngularDistanceToPartitionRejectsZeroQuery) {
  EXPECT_THROW(AngularDistanceToPartition(PairVector(4), P({0, 0, 1, 1})), DegenerateError);
}

TEST(PartitionTest, PairCountsExamples) {
  const Partition c = P({0, 0, 0, 1, 1});
  const Partition t = P({0, 0, 1, 1, 1});
  const PairCounts counts = CountPairs(c, t);
  EXPECT_EQ(counts.m_c, 4);
  EXPECT_EQ(counts.m_t, 4);
  EXPECT_EQ(counts.m_ct, 2);
  EXPECT_EQ(counts.total, 10);
  const PairCounts self = CountPairs(c, c);
  EXPECT_EQ(self.m_ct, self.m_c);
  EXPECT_EQ(self.m_t, self.m_c);
  const PairCounts single = CountPairs(Partition::Singletons(5), t);
  EXPECT_EQ(single.m_ct, 0);
  EXPECT_EQ(single.m_c, 0);
  EXPECT_THROW(CountPairs(c, P({0, 1})), DimensionError);
}

TEST(PartitionTest, PearsonExamples) {
  const Partition c = P({0, 0, 0, 1, 1});
  const Partition t = P({0, 0, 1, 1, 1});
  EXPECT_NEAR(PearsonCorrelation(c, t), 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(PearsonCorrelation(c, c), 1.0, 1e-12);
  EXPECT_THROW(PearsonCorrelation(Partition::Singletons(5), t), DegenerateError);
  EXPECT_THROW(PearsonCorrelation(c, Partition::OneCluster(5)), DegenerateError);
}

TEST(PartitionTest, PearsonMatchesDenseOracle) {
  std::mt19937_64 rng(3);
  int checked = 0;
  while (checked < 40) {
    const Partition c = testing::RandomPartition(14, 5, rng);
    const Partition t = testing::RandomPartition(14, 5, rng);
    if (c.intra_pairs() == 0 || t.intra_pairs() == 0 || c.num_communities() == 1 ||
        t.num_communities() == 1) {
      continue;
    }
    EXPECT_NEAR(PearsonCorrelation(c, t),
                testing::DensePearson(testing::DenseClustering(c), testing::DenseClustering(t)),
                1e-12);
    EXPECT_NEAR(std::acos(PearsonCorrelation(c, t)),
                CorrelationDistance(AsPairVector(c), AsPairVector(t)), 1e-7);
    ++checked;
  }
}

TEST(PartitionTest, GranularityErrorExamples) {
  const Partition t = P({0, 0, 1, 1});
  EXPECT_NEAR(RelativeGranularityError(t, t), 0.0, 1e-15);
  EXPECT_NEAR(RelativeGranularityError(Partition::Singletons(4), t), -1.0, 1e-15);
  EXPECT_NEAR(RelativeGranularityError(Partition::OneCluster(4), t),
              std::numbers::pi / std::acos(1.0 / 3.0) - 1.0, 1e-12);
  EXPECT_NEAR(RelativeGranularityError(Partition::OneCluster(4), t), 1.5521, 1e-4);
  EXPECT_THROW(RelativeGranularityError(t, Partition::Singletons(4)), DegenerateError);
}

TEST(PartitionTest, CorClustExamples) {
  const Partition c = P({0, 0, 1});
  EXPECT_DOUBLE_EQ(CorClustAgreement(c, {}, {}), 0.0);
  const PairWeights plus = {{0, 1, 1.0}};
  const PairWeights minus = {{1, 2, 1.0}};
  EXPECT_DOUBLE_EQ(CorClustAgreement(c, plus, minus), 2.0);
  EXPECT_DOUBLE_EQ(CorClustDisagreement(c, plus, minus), 0.0);
  EXPECT_DOUBLE_EQ(CorClustDisagreement(Partition::OneCluster(3), plus, minus), 1.0);
}

TEST(PartitionTest, CorClustRankingMatchesInnerProduct) {
  std::mt19937_64 rng(4);
  for (NodeId n : {3, 5}) {
    for (int trial = 0; trial < 10; ++trial) {
      PairWeights plus, minus;
      std::uniform_real_distribution<double> w(0.0, 1.0);
      for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
          plus.push_back({i, j, w(rng)});
          minus.push_back({i, j, w(rng)});
        }
      }
      const PairVector q = CorrelationClusteringQuery(plus, minus, n);
      std::vector<std::pair<double, double>> scores;
      testing::ForEachPartition(n, [&](const std::vector<int>& labels) {
        const Partition c(labels);
        scores.emplace_back(CorClustAgreement(c, plus, minus), InnerWithPartition(q, c));
      });
      for (size_t a = 0; a < scores.size(); ++a) {
        for (size_t b = 0; b < scores.size(); ++b) {
          if (scores[a].first > scores[b].first + 1e-9) {
            EXPECT_GT(scores[a].second, scores[b].second - 1e-9);
          }
        }
      }
    }
  }
}

TEST(PartitionTest, EnumeratorCountsBellNumbers) {
  const std::vector<int> bell = {1, 1, 2, 5, 15, 52, 203, 877};
  for (NodeId n = 1; n < 8; ++n) {
    int count = 0;
    testing::ForEachPartition(n, [&](const std::vector<int>&) { ++count; });
    EXPECT_EQ(count, bell[n]);
  }
}

}  // namespace
}  // namespace projcd
