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

// Random graphs with planted partitions.
//
// Config section keys:
//   family   = ppm | hppm | dcppm | ring_of_cliques | external
//   n, k, lambda_in, lambda_out              (ppm, dcppm; hppm without k)
//   delta, s_min, s_max                      (hppm community sizes)
//   tau                                      (dcppm weights)
//   cliques, clique_size                     (ring_of_cliques)
//   edges, membership, one_based, tokens     (external; `xi` is kept as metadata)

#ifndef PROJCD_GENERATORS_H_
#define PROJCD_GENERATORS_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "projcd/config.h"
#include "projcd/graph.h"
#include "projcd/partition.h"

namespace projcd {

enum class GeneratorFamily { kPpm, kHppm, kDcppm, kRingOfCliques, kExternal };

struct GeneratorSpec {
  GeneratorFamily family = GeneratorFamily::kPpm;
  NodeId n = 1000;
  NodeId k = 50;
  double lambda_in = 6.0;
  double lambda_out = 2.0;
  double delta = 2.5;
  NodeId s_min = 10;
  NodeId s_max = 100;
  double tau = 2.5;
  NodeId cliques = 20;
  NodeId clique_size = 5;
  std::string edges_path;
  std::string membership_path;
  bool one_based = false;
  bool tokens = false;
  std::optional<double> xi;
};

std::string FamilyName(GeneratorFamily family);
GeneratorFamily ParseFamily(const std::string& name);

GeneratorSpec ParseGeneratorSpec(const ConfigSection& section);
ConfigSection FormatGeneratorSpec(const GeneratorSpec& spec, const std::string& name);

struct GeneratedGraph {
  Graph graph;
  Partition planted;
  // Pairs whose probability had to be clamped to 1.
  int64_t capped_pairs = 0;
};

// Seed of sample `index` derived from a master seed.
uint64_t SampleSeed(uint64_t master, uint64_t index);

GeneratedGraph GeneratePpm(NodeId n, NodeId k, double lambda_in, double lambda_out,
                           uint64_t seed);
GeneratedGraph GenerateHppm(NodeId n, double lambda_in, double lambda_out, double delta,
                            NodeId s_min, NodeId s_max, uint64_t seed);
GeneratedGraph GenerateDcppm(NodeId n, NodeId k, double lambda_in, double lambda_out,
                             double tau, uint64_t seed);
GeneratedGraph RingOfCliques(NodeId k, NodeId s);
GeneratedGraph LoadExternal(const std::string& edges_path, const std::string& membership_path,
                            bool one_based = false, bool tokens = false);

GeneratedGraph Generate(const GeneratorSpec& spec, uint64_t seed);

// Community sizes for the heterogeneous model: bounded discrete power law on
// [s_min, s_max], drawn until the total reaches n, the last size truncated and
// merged into its predecessor when below 2.
std::vector<NodeId> SampleCommunitySizes(NodeId n, double delta, NodeId s_min,
                                         NodeId s_max, std::mt19937_64& rng);

// Pareto weights with exponent tau and mean `mean`.
std::vector<double> SampleParetoWeights(NodeId n, double tau, double mean,
                                        std::mt19937_64& rng);

}  // namespace projcd

#endif  // PROJCD_GENERATORS_H_
