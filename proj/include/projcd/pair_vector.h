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

#ifndef PROJCD_PAIR_VECTOR_H_
#define PROJCD_PAIR_VECTOR_H_

#include <cstdint>
#include <span>
#include <vector>

namespace projcd {

using NodeId = int32_t;
using PairIndex = int64_t;

// Number of unordered pairs of n nodes, n(n-1)/2.
constexpr PairIndex NumPairs(NodeId n) {
  return static_cast<PairIndex>(n) * (n - 1) / 2;
}

struct PairEntry {
  NodeId i;  // i < j
  NodeId j;
  double weight;

  friend bool operator==(const PairEntry&, const PairEntry&) = default;
};

// Contributes coefficient * factor[i] * factor[j] to every pair (i, j).
struct RankOneTerm {
  double coefficient;
  std::vector<double> factor;
};

// A vector in the space of node pairs, held in sparse-plus-low-rank form:
//
//   x_ij = sparse(i, j) + sum_k c_k u_k[i] u_k[j] + constant.
//
// The dense N-dimensional vector is never materialized. Instances are
// immutable values; arithmetic returns new vectors.
class PairVector {
 public:
  explicit PairVector(NodeId n = 0);

  // Sparse entries may arrive in any order with either orientation (i > j is
  // flipped); duplicate pairs are summed and exact zeros are dropped.
  // Throws IndexError for i == j or out-of-range ids, ParameterError for
  // non-finite values or factors of the wrong length.
  PairVector(NodeId n, std::vector<PairEntry> sparse,
             std::vector<RankOneTerm> lowrank = {}, double constant = 0.0);

  static PairVector Constant(NodeId n, double value);

  NodeId n() const { return n_; }
  PairIndex num_pairs() const { return NumPairs(n_); }

  // Sorted by (i, j), unique keys.
  std::span<const PairEntry> sparse() const { return sparse_; }
  std::span<const RankOneTerm> lowrank() const { return lowrank_; }
  double constant() const { return constant_; }

  double Entry(NodeId i, NodeId j) const;

  // Sum over all pairs i < j of the entries.
  double Sum() const;

  PairVector Scaled(double alpha) const;
  PairVector WithConstant(double constant) const;
  PairVector Plus(const PairVector& other) const;

 private:
  // Low-rank plus constant part of entry (i, j).
  double DenseEntry(NodeId i, NodeId j) const;

  NodeId n_;
  std::vector<PairEntry> sparse_;
  std::vector<RankOneTerm> lowrank_;
  double constant_ = 0.0;
};

inline PairVector operator+(const PairVector& x, const PairVector& y) {
  return x.Plus(y);
}
inline PairVector operator*(double alpha, const PairVector& x) {
  return x.Scaled(alpha);
}

// Sum over i < j of w[i] * w[j].
double PairProductSum(std::span<const double> w);

}  // namespace projcd

#endif  // PROJCD_PAIR_VECTOR_H_
