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

#include "projcd/generators.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <unistd.h>

#include "projcd/errors.h"
#include "projcd/geometry.h"
#include "projcd/io.h"
#include "projcd/partition.h"
#include "projcd/queries.h"
#include "projcd/solver.h"

namespace projcd {
namespace {

double MeanDegree(const Graph& g) { return 2.0 * g.num_edges() / g.n(); }

int64_t IntraEdges(const GeneratedGraph& gg) {
  int64_t intra = 0;
  for (auto [i, j] : gg.graph.edges()) intra += gg.planted.community(i) == gg.planted.community(j);
  return intra;
}

double Pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

void ExpectValidPartition(const GeneratedGraph& gg) {
  EXPECT_EQ(gg.planted.n(), gg.graph.n());
  for (NodeId i = 0; i < gg.planted.n(); ++i) {
    EXPECT_GE(gg.planted.community(i), 0);
    EXPECT_LT(gg.planted.community(i), gg.planted.num_communities());
  }
}

TEST(PpmTest, Examples) {
  EXPECT_EQ(GeneratePpm(100, 5, 0.0, 0.0, 1).graph.num_edges(), 0);
  const GeneratedGraph cliques = GeneratePpm(20, 2, 9.0, 0.0, 2);
  EXPECT_EQ(cliques.graph.num_edges(), 2 * 45);
  EXPECT_EQ(IntraEdges(cliques), 90);
  EXPECT_THROW(GeneratePpm(20, 3, 1.0, 1.0, 0), ParameterError);
  EXPECT_THROW(GeneratePpm(20, 2, 10.0, 0.0, 0), ParameterError);
  EXPECT_THROW(GeneratePpm(20, 20, 1.0, 1.0, 0), ParameterError);
}

TEST(PpmTest, MeanDegreeAndIntraDensity) {
  double degree = 0;
  int64_t intra = 0;
  const int samples = 50;
  for (int s = 0; s < samples; ++s) {
    const GeneratedGraph gg = GeneratePpm(1000, 50, 6.0, 2.0, SampleSeed(7, s));
    ExpectValidPartition(gg);
    degree += MeanDegree(gg.graph);
    intra += IntraEdges(gg);
  }
  EXPECT_NEAR(degree / samples, 8.0, 0.3);
  // Intra pairs: 50 * C(20, 2) = 9500 per sample, p_in = 6 / 19.
  const double trials = 9500.0 * samples;
  const double p = 6.0 / 19.0;
  EXPECT_NEAR(intra / trials, p, 3.0 * std::sqrt(p * (1 - p) / trials));
}

TEST(PpmTest, InterDensityWithinBinomialBounds) {
  int64_t inter = 0;
  const int samples = 20;
  for (int s = 0; s < samples; ++s) {
    const GeneratedGraph gg = GeneratePpm(400, 20, 4.0, 3.0, SampleSeed(8, s));
    inter += gg.graph.num_edges() - IntraEdges(gg);
  }
  const double trials = (NumPairs(400) - 20.0 * NumPairs(20)) * samples;
  const double p = 3.0 / 380.0;
  EXPECT_NEAR(inter / trials, p, 3.0 * std::sqrt(p * (1 - p) / trials));
}

TEST(PpmTest, SeedDeterminism) {
  const GeneratedGraph a = GeneratePpm(500, 25, 6.0, 2.0, 42);
  const GeneratedGraph b = GeneratePpm(500, 25, 6.0, 2.0, 42);
  const GeneratedGraph c = GeneratePpm(500, 25, 6.0, 2.0, 43);
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_EQ(a.planted, b.planted);
  EXPECT_FALSE(a.graph == c.graph);
  EXPECT_NE(SampleSeed(1, 0), SampleSeed(1, 1));
  EXPECT_NE(SampleSeed(1, 0), SampleSeed(2, 0));
}

TEST(HppmTest, EqualSizesReduceToPpm) {
  std::mt19937_64 rng(1);
  const std::vector<NodeId> sizes = SampleCommunitySizes(1000, 2.5, 20, 20, rng);
  EXPECT_EQ(sizes, std::vector<NodeId>(50, 20));
  int64_t intra = 0;
  const int samples = 30;
  for (int s = 0; s < samples; ++s) {
    const GeneratedGraph gg = GenerateHppm(1000, 6.0, 2.0, 2.5, 20, 20, SampleSeed(3, s));
    EXPECT_EQ(gg.planted.num_communities(), 50);
    intra += IntraEdges(gg);
  }
  const double trials = 9500.0 * samples;
  const double p = 6.0 / 19.0;
  EXPECT_NEAR(intra / trials, p, 3.0 * std::sqrt(p * (1 - p) / trials));
}

TEST(HppmTest, SizesCoverNAndMatchPlantedPairs) {
  for (int s = 0; s < 20; ++s) {
    const GeneratedGraph gg = GenerateHppm(1000, 6.0, 2.0, 2.5, 10, 100, SampleSeed(4, s));
    ExpectValidPartition(gg);
    PairIndex m_t = 0;
    NodeId total = 0;
    for (NodeId size : gg.planted.sizes()) {
      EXPECT_GE(size, 2);
      m_t += NumPairs(size);
      total += size;
    }
    EXPECT_EQ(total, 1000);
    EXPECT_EQ(m_t, gg.planted.intra_pairs());
  }
}

TEST(HppmTest, InterDegreeMatchesLambdaOut) {
  double inter_degree = 0;
  const int samples = 30;
  for (int s = 0; s < samples; ++s) {
    const GeneratedGraph gg = GenerateHppm(1000, 6.0, 2.0, 2.5, 10, 100, SampleSeed(5, s));
    inter_degree += 2.0 * (gg.graph.num_edges() - IntraEdges(gg)) / 1000.0;
  }
  EXPECT_NEAR(inter_degree / samples, 2.0, 0.2);
}

TEST(HppmTest, SizeTailExponent) {
  std::mt19937_64 rng(6);
  const std::vector<NodeId> sizes = SampleCommunitySizes(2'000'000, 2.5, 10, 100, rng);
  std::map<NodeId, double> counts;
  for (size_t i = 0; i + 1 < sizes.size(); ++i) counts[sizes[i]] += 1;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, w = 0;
  for (auto [s, c] : counts) {
    if (c < 20) continue;
    const double x = std::log(s), y = std::log(c);
    sx += c * x;
    sy += c * y;
    sxx += c * x * x;
    sxy += c * x * y;
    w += c;
  }
  const double slope = (w * sxy - sx * sy) / (w * sxx - sx * sx);
  EXPECT_NEAR(slope, -2.5, 0.5);
}

TEST(HppmTest, TruncatedLastSizeIsMerged) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const std::vector<NodeId> sizes = SampleCommunitySizes(101, 1.5, 10, 20, rng);
    EXPECT_EQ(std::accumulate(sizes.begin(), sizes.end(), 0), 101);
    for (NodeId s : sizes) EXPECT_GE(s, 2);
  }
}

TEST(DcppmTest, EdgeCountMatchesPairProbabilities) {
  double realized = 0;
  double expected = 0;
  double variance = 0;
  double correlation = 0;
  const int samples = 20;
  const NodeId n = 1000, s = 20;
  for (int sample = 0; sample < samples; ++sample) {
    const uint64_t seed = SampleSeed(9, sample);
    const GeneratedGraph gg = GenerateDcppm(n, n / s, 6.0, 2.0, 2.5, seed);
    ExpectValidPartition(gg);
    realized += gg.graph.num_edges();
    // The generator draws the weights first from a stream seeded with `seed`.
    std::mt19937_64 rng(seed);
    const std::vector<double> theta = SampleParetoWeights(n, 2.5, 8.0, rng);
    std::vector<double> community(n / s, 0.0);
    for (NodeId i = 0; i < n; ++i) community[i / s] += theta[i];
    const double total = std::accumulate(theta.begin(), theta.end(), 0.0);
    int64_t capped = 0;
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) {
        double p = 0.25 * theta[i] * theta[j] / total;
        if (i / s == j / s) p += 0.75 * theta[i] * theta[j] / community[i / s];
        if (p > 1.0) {
          p = 1.0;
          ++capped;
        }
        expected += p;
        variance += p * (1 - p);
      }
    }
    EXPECT_EQ(gg.capped_pairs, capped);
    correlation += Pearson(theta, gg.graph.Degrees());
  }
  EXPECT_NEAR(realized, expected, 4.0 * std::sqrt(variance));
  EXPECT_GT(2.0 * realized / (samples * n), 5.0);
  EXPECT_GE(correlation / samples, 0.9);
}

TEST(DcppmTest, ParetoWeights) {
  std::mt19937_64 rng(10);
  const std::vector<double> w = SampleParetoWeights(400'000, 3.5, 8.0, rng);
  const double mean = std::accumulate(w.begin(), w.end(), 0.0) / w.size();
  EXPECT_NEAR(mean, 8.0, 0.2);
  EXPECT_GE(*std::min_element(w.begin(), w.end()), 8.0 * 1.5 / 2.5 - 1e-12);
  EXPECT_THROW(SampleParetoWeights(10, 2.0, 8.0, rng), ParameterError);
}

TEST(DcppmTest, SeedDeterminism) {
  const GeneratedGraph a = GenerateDcppm(300, 15, 6.0, 2.0, 2.5, 5);
  const GeneratedGraph b = GenerateDcppm(300, 15, 6.0, 2.0, 2.5, 5);
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_EQ(a.capped_pairs, b.capped_pairs);
}

TEST(RingOfCliquesTest, Counts) {
  const GeneratedGraph ring = RingOfCliques(3, 3);
  EXPECT_EQ(ring.graph.n(), 9);
  EXPECT_EQ(ring.graph.num_edges(), 12);
  EXPECT_TRUE(ring.graph.IsConnected());
  for (NodeId k : {5, 20, 50}) {
    const GeneratedGraph g = RingOfCliques(k, 4);
    EXPECT_EQ(g.graph.num_edges(), k * 6 + k);
    for (NodeId v = 0; v < g.graph.n(); ++v) EXPECT_GE(g.graph.degree(v), 3);
  }
  EXPECT_THROW(RingOfCliques(2, 3), ParameterError);
  EXPECT_THROW(RingOfCliques(3, 1), ParameterError);
}

TEST(RingOfCliquesTest, PlantedLatitudeShrinks) {
  double previous = M_PI;
  for (NodeId k : {5, 10, 20, 40, 80}) {
    const GeneratedGraph g = RingOfCliques(k, 5);
    const double n_pairs = static_cast<double>(NumPairs(k * 5));
    const double expected = std::acos(1.0 - 2.0 * k * 10 / n_pairs);
    EXPECT_NEAR(PartitionLatitude(g.planted), expected, 1e-12);
    EXPECT_LT(expected, previous);
    previous = expected;
  }
}

TEST(RingOfCliquesTest, MergeThresholdOfErModularity) {
  // Merging two neighbouring cliques changes <q, b(C)> by 2 (1 - s^2 m / N),
  // so at s = 5 the clique partition is optimal up to k = 22.
  for (NodeId k : {20, 22, 23, 30}) {
    const GeneratedGraph ring = RingOfCliques(k, 5);
    const double m = static_cast<double>(ring.graph.num_edges());
    const double merge_gain = 2.0 * (1.0 - 25.0 * m / NumPairs(k * 5));
    const PairVector q = ErModularityQuery(ring.graph, 1.0);
    const DetectionResult plain = Evaluate(q, LouvainProject(q), &ring.planted);
    ASSERT_TRUE(plain.granularity_error.has_value());
    if (merge_gain < 0) {
      EXPECT_EQ(plain.partition, ring.planted) << "k = " << k;
    } else {
      EXPECT_GT(*plain.granularity_error, 0.0) << "k = " << k;
    }
  }
}

TEST(RingOfCliquesTest, StrategiesRecoverCliques) {
  for (NodeId k : {20, 30, 60}) {
    const GeneratedGraph ring = RingOfCliques(k, 5);
    const PairVector q = ErModularityQuery(ring.graph, 1.0);
    for (LatitudeStrategy strategy :
         {LatitudeStrategy::kMatchPlanted, LatitudeStrategy::kDistanceMinimizing}) {
      const PairVector star = ApplyGranularityHeuristic(q, ring.planted, strategy);
      const DetectionResult r = Evaluate(star, LouvainProject(star), &ring.planted);
      ASSERT_TRUE(r.rho.has_value());
      EXPECT_NEAR(*r.rho, 1.0, 1e-12) << "k = " << k;
    }
  }
}

class ExternalTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("projcd_gen_" + std::to_string(getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }
  void Write(const std::string& name, const std::string& text) const {
    std::ofstream(Path(name)) << text;
  }
  std::filesystem::path dir_;
};

TEST_F(ExternalTest, RoundTrip) {
  const GeneratedGraph gg = GeneratePpm(200, 10, 3.0, 1.0, 11);
  std::ostringstream edges, membership;
  WriteEdgeList(edges, gg.graph);
  WriteMembership(membership, gg.planted);
  Write("g.edges", edges.str());
  Write("g.membership", membership.str());
  const GeneratedGraph back = LoadExternal(Path("g.edges"), Path("g.membership"));
  EXPECT_EQ(back.graph, gg.graph);
  EXPECT_EQ(back.planted, gg.planted);
}

TEST_F(ExternalTest, MembershipExtendsNodeCount) {
  Write("g.edges", "1 2\n2 3\n");
  Write("g.membership", "1 1\n2 1\n3 2\n4 2\n");
  const GeneratedGraph gg = LoadExternal(Path("g.edges"), Path("g.membership"), true);
  EXPECT_EQ(gg.graph.n(), 4);
  EXPECT_EQ(gg.graph.degree(3), 0);
  EXPECT_EQ(gg.planted, Partition(std::vector<int>{0, 0, 1, 1}));
}

TEST_F(ExternalTest, MissingMembershipLineNamesNode) {
  Write("g.edges", "0 1\n1 2\n");
  Write("g.membership", "0 0\n2 1\n");
  try {
    LoadExternal(Path("g.edges"), Path("g.membership"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("node 1"), std::string::npos) << e.what();
  }
}

TEST_F(ExternalTest, Tokens) {
  Write("g.edges", "a b\nb c\n");
  Write("g.membership", "c x\nb y\na y\n");
  const GeneratedGraph gg = LoadExternal(Path("g.edges"), Path("g.membership"), false, true);
  EXPECT_EQ(gg.planted, Partition(std::vector<int>{0, 0, 1}));
}

TEST(GeneratorSpecTest, ParseFormatAndDispatch) {
  const Config config = Config::Parse(
      "[a]\nfamily = hppm\nn = 300\nlambda_in = 5\nlambda_out = 1\ndelta = 2\ns_min = 5\n"
      "s_max = 40\n[b]\nfamily = ring\ncliques = 6\nclique_size = 3\n"
      "[c]\nfamily = dcppm\ntau = 1\n[d]\nfamily = ppm\nlambda_in = -1\n"
      "[e]\nfamily = ppm\nbogus = 1\n");
  const GeneratorSpec a = ParseGeneratorSpec(config.Section("a"));
  EXPECT_EQ(a.family, GeneratorFamily::kHppm);
  EXPECT_EQ(a.s_max, 40);
  Config out;
  out.AddSection(FormatGeneratorSpec(a, "generator"));
  const GeneratorSpec back = ParseGeneratorSpec(Config::Parse(out.ToString()).Section("generator"));
  EXPECT_EQ(back.n, 300);
  EXPECT_DOUBLE_EQ(back.delta, 2.0);
  EXPECT_EQ(Generate(a, 3).graph, Generate(back, 3).graph);
  const GeneratorSpec b = ParseGeneratorSpec(config.Section("b"));
  EXPECT_EQ(Generate(b, 0).graph.n(), 18);
  EXPECT_THROW(ParseGeneratorSpec(config.Section("c")), ConfigError);
  EXPECT_THROW(ParseGeneratorSpec(config.Section("d")), ConfigError);
  EXPECT_THROW(ParseGeneratorSpec(config.Section("e")), ConfigError);
}

}  // namespace
}  // namespace projcd
