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

// Query mappings: graph -> pair vector. Projecting a query (finding the
// clustering vector nearest to it in angular distance) is equivalent to
// maximizing the corresponding classical objective.

#ifndef PROJCD_QUERIES_H_
#define PROJCD_QUERIES_H_

#include <functional>
#include <utility>

#include "projcd/graph.h"
#include "projcd/pair_vector.h"
#include "projcd/partition.h"

namespace projcd {

// v(A) - gamma (m / N) 1. Projection maximizes Erdos-Renyi modularity.
PairVector ErModularityQuery(const Graph& g, double gamma);

// v(A) - gamma d(A). Projection maximizes Chung-Lu modularity.
PairVector ClModularityQuery(const Graph& g, double gamma);

// v(diag(s) P^t - s s^T). Projection maximizes discrete-time Markov
// stability at time t.
PairVector MarkovStabilityQuery(const Graph& g, int t,
                                const WalkOptions& options = {});

// w+ - w-.
PairVector CorrelationClusteringQuery(const PairWeights& w_plus,
                                      const PairWeights& w_minus, NodeId n);

// Recovers non-negative weights with w+ - w- = q from the sparse part of q.
// Requires q to have no low-rank or constant terms.
std::pair<PairWeights, PairWeights> CorrelationClusteringWeights(
    const PairVector& q);

// log(f_in(a_ij) / f_out(a_ij)) over all pairs. `interaction` gives a_ij;
// densities must be positive at every observed value. Dense in N; meant for
// small instances and for weighted interactions without a sparse structure.
PairVector PpmLikelihoodQuery(const std::function<double(NodeId, NodeId)>& interaction,
                              const std::function<double(double)>& f_in,
                              const std::function<double(double)>& f_out,
                              NodeId n);

// Binary PPM specialization: log(p_in/p_out) on edges and
// log((1-p_in)/(1-p_out)) on non-edges, held as sparse + constant.
PairVector BinaryPpmQuery(const Graph& g, double p_in, double p_out);

// c_a v(A) + c_j j(A) + c_d d(A) + c_1 1.
PairVector LinearCombinationQuery(const Graph& g, double c_a, double c_j,
                                  double c_d, double c_1);

// Latitude rules for re-projecting a query given the planted latitude
// lambda_t and the correlation distance theta between query and planted
// clustering.
enum class LatitudeStrategy {
  kGranularityHeuristic,  // arccos(cos l_T cos theta / (1 + sin l_T sin theta))
  kDistanceMinimizing,    // tan l = cos theta tan l_T
  kMatchPlanted,          // l = l_T
};

// The granularity heuristic latitude. Requires lambda_t in (0, pi) and
// theta in [0, pi/2].
double HeuristicLatitude(double lambda_t, double theta);

double StrategyLatitude(LatitudeStrategy strategy, double lambda_t, double theta);

struct HeuristicInputs {
  double lambda_t;
  double theta;
};

// lambda_T = l(b(T)) and theta = d_cc(q, b(T)), computed exactly.
HeuristicInputs MeasureHeuristicInputs(const PairVector& q, const Partition& t);

// q* = parallel projection of q onto the latitude given by the strategy.
PairVector ApplyGranularityHeuristic(
    const PairVector& q, const Partition& planted,
    LatitudeStrategy strategy = LatitudeStrategy::kGranularityHeuristic);

// Same, with externally supplied estimates (e.g. generator means).
PairVector ApplyGranularityHeuristic(
    const PairVector& q, const HeuristicInputs& inputs,
    LatitudeStrategy strategy = LatitudeStrategy::kGranularityHeuristic);

}  // namespace projcd

#endif  // PROJCD_QUERIES_H_
