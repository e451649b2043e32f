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

#include "projcd/queries.h"

#include <cmath>
#include <numbers>
#include <string>

#include "projcd/errors.h"
#include "projcd/geometry.h"

namespace projcd {
namespace {

void RequireEdges(const Graph& g, const char* what) {
  if (g.num_edges() == 0) {
    throw DegenerateError(std::string(what) + " needs at least one edge");
  }
}

void RequireFinite(double x, const char* what) {
  if (!std::isfinite(x)) throw ParameterError(std::string(what) + " must be finite");
}

}  // namespace

PairVector ErModularityQuery(const Graph& g, double gamma) {
  RequireEdges(g, "ER-modularity query");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw ParameterError("resolution gamma must be finite and >= 0");
  }
  const double m = static_cast<double>(g.num_edges());
  const double big_n = static_cast<double>(NumPairs(g.n()));
  return AdjacencyVector(g).WithConstant(-gamma * m / big_n);
}

PairVector ClModularityQuery(const Graph& g, double gamma) {
  RequireEdges(g, "CL-modularity query");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw ParameterError("resolution gamma must be finite and >= 0");
  }
  if (gamma == 0.0) return AdjacencyVector(g);
  return AdjacencyVector(g) + DegreeProductVector(g).Scaled(-gamma);
}

PairVector MarkovStabilityQuery(const Graph& g, int t, const WalkOptions& options) {
  WalkDistribution walk = ComputeWalkDistribution(g, t, options);
  return PairVector(g.n(), std::move(walk.pair_weights),
                    {{-1.0, std::move(walk.stationary)}});
}

PairVector CorrelationClusteringQuery(const PairWeights& w_plus,
                                      const PairWeights& w_minus, NodeId n) {
  std::vector<PairEntry> entries;
  entries.reserve(w_plus.size() + w_minus.size());
  entries.insert(entries.end(), w_plus.begin(), w_plus.end());
  for (PairEntry e : w_minus) {
    e.weight = -e.weight;
    entries.push_back(e);
  }
  return PairVector(n, std::move(entries));
}

std::pair<PairWeights, PairWeights> CorrelationClusteringWeights(
    const PairVector& q) {
  if (!q.lowrank().empty() || q.constant() != 0.0) {
    throw ParameterError(
        "correlation-clustering weights need a purely sparse query");
  }
  PairWeights plus;
  PairWeights minus;
  for (const PairEntry& e : q.sparse()) {
    if (e.weight > 0.0) {
      plus.push_back(e);
    } else {
      minus.push_back({e.i, e.j, -e.weight});
    }
  }
  return {std::move(plus), std::move(minus)};
}

PairVector PpmLikelihoodQuery(const std::function<double(NodeId, NodeId)>& interaction,
                              const std::function<double(double)>& f_in,
                              const std::function<double(double)>& f_out,
                              NodeId n) {
  std::vector<PairEntry> entries;
  entries.reserve(NumPairs(n));
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const double a = interaction(i, j);
      const double in = f_in(a);
      const double out = f_out(a);
      if (!(in > 0.0) || !(out > 0.0)) {
        throw DegenerateError("zero likelihood density at observed interaction " +
                              std::to_string(a) + " for pair (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      entries.push_back({i, j, std::log(in / out)});
    }
  }
  return PairVector(n, std::move(entries));
}

PairVector BinaryPpmQuery(const Graph& g, double p_in, double p_out) {
  if (!(p_in > 0.0 && p_in < 1.0) || !(p_out > 0.0 && p_out < 1.0)) {
    throw ParameterError("PPM probabilities must lie in (0, 1)");
  }
  const double non_edge = std::log((1.0 - p_in) / (1.0 - p_out));
  const double edge = std::log(p_in / p_out);
  return AdjacencyVector(g).Scaled(edge - non_edge).WithConstant(non_edge);
}

PairVector LinearCombinationQuery(const Graph& g, double c_a, double c_j,
                                  double c_d, double c_1) {
  RequireFinite(c_a, "c_A");
  RequireFinite(c_j, "c_j");
  RequireFinite(c_d, "c_d");
  RequireFinite(c_1, "c_1");
  PairVector q = AdjacencyVector(g).Scaled(c_a);
  if (c_j != 0.0) q = q + JaccardVector(g).Scaled(c_j);
  if (c_d != 0.0) q = q + DegreeProductVector(g).Scaled(c_d);
  return q.WithConstant(q.constant() + c_1);
}

double HeuristicLatitude(double lambda_t, double theta) {
  if (!(lambda_t > 0.0 && lambda_t < std::numbers::pi)) {
    throw ParameterError("planted latitude must lie in (0, pi)");
  }
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2)) {
    throw ParameterError("correlation distance theta must lie in [0, pi/2]");
  }
  if (theta == 0.0) return lambda_t;
  if (theta == std::numbers::pi / 2) return std::numbers::pi / 2;
  return SafeAcos(std::cos(lambda_t) * std::cos(theta) /
                  (1.0 + std::sin(lambda_t) * std::sin(theta)));
}

double StrategyLatitude(LatitudeStrategy strategy, double lambda_t, double theta) {
  switch (strategy) {
    case LatitudeStrategy::kGranularityHeuristic:
      return HeuristicLatitude(lambda_t, theta);
    case LatitudeStrategy::kDistanceMinimizing:
      if (!(lambda_t > 0.0 && lambda_t < std::numbers::pi)) {
        throw ParameterError("planted latitude must lie in (0, pi)");
      }
      // Stationary point of cos l cos l_T + cos theta sin l sin l_T.
      return std::atan2(std::cos(theta) * std::sin(lambda_t), std::cos(lambda_t));
    case LatitudeStrategy::kMatchPlanted:
      if (!(lambda_t > 0.0 && lambda_t < std::numbers::pi)) {
        throw ParameterError("planted latitude must lie in (0, pi)");
      }
      return lambda_t;
  }
  throw ParameterError("unknown latitude strategy");
}

HeuristicInputs MeasureHeuristicInputs(const PairVector& q, const Partition& t) {
  return {PartitionLatitude(t), CorrelationDistanceToPartition(q, t)};
}

PairVector ApplyGranularityHeuristic(const PairVector& q, const Partition& planted,
                                     LatitudeStrategy strategy) {
  if (q.n() != planted.n()) throw DimensionError("query and planted sizes differ");
  return ApplyGranularityHeuristic(q, MeasureHeuristicInputs(q, planted), strategy);
}

PairVector ApplyGranularityHeuristic(const PairVector& q,
                                     const HeuristicInputs& inputs,
                                     LatitudeStrategy strategy) {
  return ParallelProjection(
      q, StrategyLatitude(strategy, inputs.lambda_t, inputs.theta));
}

}  // namespace projcd
