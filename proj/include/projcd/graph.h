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

#ifndef PROJCD_GRAPH_H_
#define PROJCD_GRAPH_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "projcd/pair_vector.h"

namespace projcd {

using Edge = std::pair<NodeId, NodeId>;

// Undirected simple graph. Parallel edges are merged and self-loops dropped
// at construction; the counts of both are kept for reporting.
class Graph {
 public:
  Graph() = default;
  Graph(NodeId n, std::span<const Edge> edges);

  NodeId n() const { return n_; }
  int64_t num_edges() const { return static_cast<int64_t>(edges_.size()); }

  // Sorted, i < j.
  std::span<const Edge> edges() const { return edges_; }
  std::span<const NodeId> neighbors(NodeId i) const {
    return {neighbors_.data() + offsets_[i],
            static_cast<size_t>(offsets_[i + 1] - offsets_[i])};
  }
  int64_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }
  std::vector<double> Degrees() const;
  bool HasEdge(NodeId i, NodeId j) const;

  int64_t dropped_self_loops() const { return dropped_self_loops_; }
  int64_t dropped_duplicates() const { return dropped_duplicates_; }

  NodeId NumIsolated() const;
  bool IsConnected() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  NodeId n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int64_t> offsets_ = {0};
  std::vector<NodeId> neighbors_;
  int64_t dropped_self_loops_ = 0;
  int64_t dropped_duplicates_ = 0;
};

// v(A): weight 1 on every edge.
PairVector AdjacencyVector(const Graph& g);

// d(A)_ij = d_i d_j / (2m), one rank-one term. Throws DegenerateError if the
// graph has no edges.
PairVector DegreeProductVector(const Graph& g);

// Jaccard similarity of closed neighborhoods (i is in N(i)), on every pair
// whose closed neighborhoods intersect.
PairVector JaccardVector(const Graph& g);

struct WalkOptions {
  // Per source row, once the reached set exceeds this fraction of n the
  // propagation switches from frontier lists to dense sweeps.
  double dense_fraction = 0.5;
  // When false, isolated nodes are an error (the transition matrix has no
  // row for them). When true they get stationary mass 0 and contribute
  // nothing, which equals evaluating diag(s) P^t as A/(2m) (D^-1 A)^(t-1).
  bool allow_isolated = false;
};

// Discrete-time simple random walk statistics at time t.
struct WalkDistribution {
  int t = 1;
  // v(diag(s) P^t), i < j, nonzero entries only.
  std::vector<PairEntry> pair_weights;
  // s_i = d_i / (2m).
  std::vector<double> stationary;
  // max |s_i P^t_ij - s_j P^t_ji| seen before symmetrization.
  double max_asymmetry = 0.0;
};

// Throws ParameterError for t < 1 and DegenerateError for graphs without
// edges or (unless allowed) with isolated nodes.
WalkDistribution ComputeWalkDistribution(const Graph& g, int t,
                                         const WalkOptions& options = {});

// Row i of P^t as a dense vector; used by the walk distribution and by tests.
std::vector<double> TransitionRow(const Graph& g, NodeId source, int t);

}  // namespace projcd

#endif  // PROJCD_GRAPH_H_
