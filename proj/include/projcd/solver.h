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

// Projection of a query vector onto the set of clustering vectors:
// maximize <q, b(C)>, which minimizes d_a(q, b(C)).

#ifndef PROJCD_SOLVER_H_
#define PROJCD_SOLVER_H_

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "projcd/config.h"
#include "projcd/pair_vector.h"
#include "projcd/partition.h"

namespace projcd {

struct SolverConfig {
  uint64_t seed = 0;
  // Moves must gain more than epsilon * ||q|| * sqrt(N).
  double epsilon = 1e-12;
  int max_sweeps = 1000;  // per level
  // All communities are screened while their count is at most
  // screening_threshold * sqrt(n); above it only the extremes per rank-one term.
  double screening_threshold = 4.0;
  int exact_cap = 12;
  // After unfolding, sweep the finest level against every community so the
  // result is a local optimum under single-node moves.
  bool final_exhaustive_pass = true;
  // The exhaustive pass is skipped when n * communities exceeds this.
  int64_t exhaustive_budget = 200'000'000;
};

SolverConfig ParseSolverConfig(const ConfigSection& section);
ConfigSection FormatSolverConfig(const SolverConfig& config, const std::string& name);

struct SolveStats {
  int levels = 0;
  int64_t moves = 0;
  int64_t sweeps = 0;
  int sweep_cap_hits = 0;
  bool exhaustive_pass_run = false;
  int64_t exhaustive_moves = 0;
  double objective = 0.0;  // tracked <q, b(C)>
  // Largest |tracked - recomputed| / max(1, |recomputed|) over all checks.
  double max_objective_drift = 0.0;
};

// Local-move state over a (possibly aggregated) node set. Pair weights are
// sparse entries plus rank-one terms; the constant of the query is folded into
// a rank-one term whose factor is the node size.
class LocalMoveState {
 public:
  static constexpr CommunityId kFresh = -1;

  explicit LocalMoveState(const PairVector& q);
  LocalMoveState(const PairVector& q, const Partition& initial);

  NodeId n() const { return static_cast<NodeId>(community_.size()); }
  CommunityId community(NodeId i) const { return community_[i]; }
  CommunityId num_communities() const {
    return static_cast<CommunityId>(nonempty_.size());
  }

  // Change of <q, b(C)> when i is relabelled to `target` (kFresh for a new
  // empty community).
  double MoveGain(NodeId i, CommunityId target) const;
  void Move(NodeId i, CommunityId target);

  // Tracked <q, b(C)> at this level.
  double Objective() const { return 2.0 * intra_ - total_; }
  // Same value computed from scratch.
  double RecomputeObjective() const;
  // True if community sizes and rank-one aggregates match the membership.
  bool CheckAggregates(double tolerance) const;

  Partition ToPartition() const;

  // One pass of best-gain sweeps until no node moves or max_sweeps is hit.
  // Returns the number of moves.
  int64_t RunLocalMoves(std::mt19937_64& rng, const SolverConfig& config,
                        double min_gain, bool exhaustive, SolveStats* stats);

  // Collapses communities into supernodes, relabelled by canonical order.
  LocalMoveState Aggregate() const;

 private:
  LocalMoveState() = default;
  void InitFromQuery(const PairVector& q);
  void AssignInitial(std::span<const CommunityId> labels);
  double ComputeIntra() const;
  double LowRankWeight(NodeId i, CommunityId a) const;
  double SparseWeight(NodeId i, CommunityId a) const;
  void ApplyMove(NodeId i, CommunityId target, double delta_intra);
  void AccumulateNeighbors(NodeId i) const;
  void ClearNeighbors() const;
  void UpdateExtremes(CommunityId a, bool insert);
  void AddNonempty(CommunityId a);
  void RemoveNonempty(CommunityId a);

  // Level graph: symmetric CSR of sparse weights.
  std::vector<int64_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<double> weights_;
  std::vector<double> coefficients_;
  std::vector<std::vector<double>> factors_;  // per term, per node
  std::vector<double> self_;                  // intra-supernode weight
  double total_ = 0.0;                        // sum of all pair weights

  std::vector<CommunityId> community_;
  std::vector<NodeId> size_;                    // nodes per label
  std::vector<std::vector<double>> aggregate_;  // per term, per label
  std::vector<CommunityId> nonempty_;
  std::vector<int64_t> nonempty_pos_;
  std::vector<CommunityId> empty_;  // unused labels
  double intra_ = 0.0;

  // Per-term ordered (aggregate, label) sets for screening.
  std::vector<std::set<std::pair<double, CommunityId>>> extremes_;

  mutable std::vector<double> scratch_;
  mutable std::vector<char> marked_;
  mutable std::vector<CommunityId> touched_;
};

// Louvain-style local moves and aggregation from singletons.
Partition LouvainProject(const PairVector& q, const SolverConfig& config = {},
                         SolveStats* stats = nullptr);

// Exhaustive search over all set partitions; n must not exceed
// config.exact_cap. Ties go to the lexicographically smallest membership.
Partition ExactProject(const PairVector& q, const SolverConfig& config = {},
                       double* objective = nullptr);

struct DetectionResult {
  Partition partition;
  CommunityId num_communities = 0;
  double objective = 0.0;  // <q, b(C)>
  std::optional<double> d_a_qc;
  std::optional<double> latitude_c;
  // Present only with a planted partition and when defined.
  std::optional<double> rho;
  std::optional<double> granularity_error;
  std::optional<double> latitude_t;
  std::optional<double> d_a_qt;
  std::optional<double> d_cc_qt;
  std::optional<double> excess_ratio;
};

DetectionResult Evaluate(const PairVector& q, const Partition& c,
                         const Partition* planted = nullptr);

}  // namespace projcd

#endif  // PROJCD_SOLVER_H_
