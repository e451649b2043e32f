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

// Declarative query descriptions, serialized as a flat config section:
//
//   method    = er_modularity | cl_modularity | markov_stability |
//               correlation_clustering | ppm_likelihood | linear_combination
//   gamma     = <real>            (modularity)
//   t         = <int>             (markov_stability)
//   isolated  = error | ignore    (markov_stability)
//   p_in      = <real>, p_out = <real>   (ppm_likelihood)
//   c_a, c_j, c_d, c_1 = <real>   (linear_combination)
//   heuristic = off | exact | fixed:<lambda_t>,<theta> | means:<k>
//   strategy  = heuristic | distance_min | match_planted

#ifndef PROJCD_QUERY_SPEC_H_
#define PROJCD_QUERY_SPEC_H_

#include <optional>
#include <string>

#include "projcd/config.h"
#include "projcd/graph.h"
#include "projcd/pair_vector.h"
#include "projcd/partition.h"
#include "projcd/queries.h"

namespace projcd {

enum class QueryMethod {
  kErModularity,
  kClModularity,
  kMarkovStability,
  kCorrelationClustering,  // +/-1 variant: +1 on edges, -1 on non-edges
  kPpmLikelihood,          // binary PPM
  kLinearCombination,
};

enum class HeuristicMode { kOff, kExact, kFixed, kMeans };

struct HeuristicSpec {
  HeuristicMode mode = HeuristicMode::kOff;
  LatitudeStrategy strategy = LatitudeStrategy::kGranularityHeuristic;
  double lambda_t = 0.0;  // kFixed
  double theta = 0.0;     // kFixed
  int pilot_samples = 10;  // kMeans
};

struct QuerySpec {
  std::string name;
  QueryMethod method = QueryMethod::kClModularity;
  double gamma = 1.0;
  int t = 1;
  bool allow_isolated = false;
  double p_in = 0.5;
  double p_out = 0.1;
  double c_a = 1.0;
  double c_j = 0.0;
  double c_d = 0.0;
  double c_1 = 0.0;
  HeuristicSpec heuristic;
};

std::string MethodName(QueryMethod method);
QueryMethod ParseMethod(const std::string& name);

// Parses `off`, `exact`, `fixed:<lambda_t>,<theta>` or `means:<k>`.
HeuristicSpec ParseHeuristicMode(const std::string& text);
std::string FormatHeuristicMode(const HeuristicSpec& spec);
LatitudeStrategy ParseStrategy(const std::string& text);
std::string StrategyName(LatitudeStrategy strategy);

QuerySpec ParseQuerySpec(const ConfigSection& section);
ConfigSection FormatQuerySpec(const QuerySpec& spec, const std::string& section_name);

// The query before any latitude correction.
PairVector BuildBaseQuery(const Graph& g, const QuerySpec& spec);

// Applies the heuristic of `spec` to a base query. `planted` is required for
// kExact; `estimates` for kMeans (kFixed carries its own).
// Throws ParameterError when the needed input is missing.
PairVector ApplyHeuristicSpec(const PairVector& base, const HeuristicSpec& spec,
                              const Partition* planted,
                              const std::optional<HeuristicInputs>& estimates = {});

}  // namespace projcd

#endif  // PROJCD_QUERY_SPEC_H_
