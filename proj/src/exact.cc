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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "projcd/errors.h"
#include "projcd/geometry.h"
#include "projcd/solver.h"

namespace projcd {
namespace {

// Depth-first enumeration of restricted growth strings in lexicographic
// order; only strictly better optima replace the incumbent.
class PartitionSearch {
 public:
  PartitionSearch(const PairVector& q, double tolerance)
      : n_(q.n()), tolerance_(tolerance), weights_(n_ * n_, 0.0), labels_(n_, 0),
        best_labels_(n_, 0) {
    for (NodeId i = 0; i < n_; ++i) {
      for (NodeId j = i + 1; j < n_; ++j) {
        weights_[i * n_ + j] = weights_[j * n_ + i] = q.Entry(i, j);
      }
    }
  }

  void Run() { Visit(1, 1, 0.0); }
  const std::vector<int>& best_labels() const { return best_labels_; }
  double best_intra() const { return best_intra_; }

 private:
  void Visit(NodeId i, int used, double intra) {
    if (i == n_) {
      if (!found_ || intra > best_intra_ + tolerance_) {
        found_ = true;
        best_intra_ = intra;
        best_labels_ = labels_;
      }
      return;
    }
    for (int a = 0; a <= used && a < n_; ++a) {
      double gain = 0.0;
      for (NodeId j = 0; j < i; ++j) {
        if (labels_[j] == a) gain += weights_[i * n_ + j];
      }
      labels_[i] = a;
      Visit(i + 1, a == used ? used + 1 : used, intra + gain);
    }
    labels_[i] = 0;
  }

  NodeId n_;
  double tolerance_;
  std::vector<double> weights_;
  std::vector<int> labels_;
  std::vector<int> best_labels_;
  double best_intra_ = 0.0;
  bool found_ = false;
};

}  // namespace

Partition ExactProject(const PairVector& q, const SolverConfig& config, double* objective) {
  const NodeId n = q.n();
  if (n > config.exact_cap) {
    throw ParameterError("exact projection limited to n <= " +
                         std::to_string(config.exact_cap) + ", got " + std::to_string(n));
  }
  if (n <= 1) {
    if (objective != nullptr) *objective = 0.0;
    return Partition::Singletons(n);
  }
  const double scale = Norm(q) * std::sqrt(static_cast<double>(NumPairs(n)));
  PartitionSearch search(q, 1e-12 * std::max(1.0, scale));
  search.Run();
  if (objective != nullptr) *objective = 2.0 * search.best_intra() - q.Sum();
  return Partition(search.best_labels());
}

}  // namespace projcd
