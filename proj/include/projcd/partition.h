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

#ifndef PROJCD_PARTITION_H_
#define PROJCD_PARTITION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "projcd/pair_vector.h"

namespace projcd {

using CommunityId = int32_t;

// A clustering of n nodes into disjoint non-empty communities. Labels are
// canonicalized to first-appearance order, so two partitions compare equal
// iff they group the nodes identically.
class Partition {
 public:
  Partition() = default;

  // Arbitrary non-negative labels; throws ParameterError on negatives.
  explicit Partition(std::span<const int64_t> labels);
  explicit Partition(const std::vector<int>& labels);

  static Partition Singletons(NodeId n);
  static Partition OneCluster(NodeId n);

  NodeId n() const { return static_cast<NodeId>(membership_.size()); }
  CommunityId num_communities() const {
    return static_cast<CommunityId>(sizes_.size());
  }
  std::span<const CommunityId> membership() const { return membership_; }
  CommunityId community(NodeId i) const { return membership_[i]; }
  std::span<const NodeId> sizes() const { return sizes_; }

  // Number of intra-community pairs.
  PairIndex intra_pairs() const { return intra_pairs_; }

  std::vector<std::vector<NodeId>> Communities() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  void Canonicalize(std::span<const int64_t> labels);

  std::vector<CommunityId> membership_;
  std::vector<NodeId> sizes_;
  PairIndex intra_pairs_ = 0;
};

struct PairCounts {
  PairIndex m_c;   // intra pairs of C
  PairIndex m_t;   // intra pairs of T
  PairIndex m_ct;  // pairs intra in both
  PairIndex total;  // N
};

// b(C): +1 on intra-community pairs, -1 on inter-community pairs. Stored as
// constant -1 plus one rank-one term 2 * 1_a 1_a^T per non-singleton
// community a.
PairVector AsPairVector(const Partition& c);

// <q, b(C)> = 2 * sum_{intra} q_ij - sum_{all} q_ij without materializing b(C).
double InnerWithPartition(const PairVector& q, const Partition& c);

// Sum of q over intra-community pairs of C.
double IntraSum(const PairVector& q, const Partition& c);

// Latitude of b(C): arccos(1 - 2 m_C / N). n must be at least 2.
double PartitionLatitude(const Partition& c);

// Angular distance between q and b(C), using InnerWithPartition.
double AngularDistanceToPartition(const PairVector& q, const Partition& c);

// Correlation distance between q and b(C).
double CorrelationDistanceToPartition(const PairVector& q, const Partition& c);

PairCounts CountPairs(const Partition& c, const Partition& t);

// Pearson correlation between b(C) and b(T). Throws DegenerateError when
// either partition is all singletons or a single cluster.
double PearsonCorrelation(const Partition& c, const Partition& t);

// l(b(C)) / l(b(T)) - 1. Throws DegenerateError when T is all singletons.
double RelativeGranularityError(const Partition& c, const Partition& t);

// Pair weights keyed by (i, j); missing pairs weigh 0.
using PairWeights = std::vector<PairEntry>;

double CorClustAgreement(const Partition& c, const PairWeights& w_plus,
                         const PairWeights& w_minus);
double CorClustDisagreement(const Partition& c, const PairWeights& w_plus,
                            const PairWeights& w_minus);

}  // namespace projcd

#endif  // PROJCD_PARTITION_H_
