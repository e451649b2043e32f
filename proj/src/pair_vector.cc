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

#include "projcd/pair_vector.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "projcd/errors.h"

namespace projcd {
namespace {

void CheckFinite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw ParameterError(std::string("non-finite value in ") + what);
  }
}

}  // namespace

double PairProductSum(std::span<const double> w) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : w) {
    sum += x;
    sum_sq += x * x;
  }
  return 0.5 * (sum * sum - sum_sq);
}

PairVector::PairVector(NodeId n) : n_(n) {
  if (n < 0) throw ParameterError("negative node count");
}

PairVector::PairVector(NodeId n, std::vector<PairEntry> sparse,
                       std::vector<RankOneTerm> lowrank, double constant)
    : n_(n), lowrank_(std::move(lowrank)), constant_(constant) {
  if (n < 0) throw ParameterError("negative node count");
  CheckFinite(constant_, "constant term");
  for (PairEntry& e : sparse) {
    if (e.i == e.j || e.i < 0 || e.j < 0 || e.i >= n || e.j >= n) {
      throw IndexError("invalid pair (" + std::to_string(e.i) + ", " +
                       std::to_string(e.j) + ") for n = " + std::to_string(n));
    }
    CheckFinite(e.weight, "sparse entry");
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(sparse.begin(), sparse.end(),
            [](const PairEntry& a, const PairEntry& b) {
              return a.i != b.i ? a.i < b.i : a.j < b.j;
            });
  sparse_.reserve(sparse.size());
  for (const PairEntry& e : sparse) {
    if (!sparse_.empty() && sparse_.back().i == e.i && sparse_.back().j == e.j) {
      sparse_.back().weight += e.weight;
    } else {
      sparse_.push_back(e);
    }
  }
  std::erase_if(sparse_, [](const PairEntry& e) { return e.weight == 0.0; });

  for (const RankOneTerm& term : lowrank_) {
    CheckFinite(term.coefficient, "rank-one coefficient");
    if (static_cast<NodeId>(term.factor.size()) != n) {
      throw ParameterError("rank-one factor has length " +
                           std::to_string(term.factor.size()) +
                           ", expected " + std::to_string(n));
    }
    for (double u : term.factor) CheckFinite(u, "rank-one factor");
  }
  std::erase_if(lowrank_,
                [](const RankOneTerm& t) { return t.coefficient == 0.0; });
}

PairVector PairVector::Constant(NodeId n, double value) {
  return PairVector(n, {}, {}, value);
}

double PairVector::DenseEntry(NodeId i, NodeId j) const {
  double value = constant_;
  for (const RankOneTerm& term : lowrank_) {
    value += term.coefficient * term.factor[i] * term.factor[j];
  }
  return value;
}

double PairVector::Entry(NodeId i, NodeId j) const {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw IndexError("invalid pair (" + std::to_string(i) + ", " +
                     std::to_string(j) + ") for n = " + std::to_string(n_));
  }
  if (i > j) std::swap(i, j);
  double value = DenseEntry(i, j);
  auto it = std::lower_bound(sparse_.begin(), sparse_.end(), std::pair{i, j},
                             [](const PairEntry& e, std::pair<NodeId, NodeId> key) {
                               return e.i != key.first ? e.i < key.first
                                                       : e.j < key.second;
                             });
  if (it != sparse_.end() && it->i == i && it->j == j) value += it->weight;
  return value;
}

double PairVector::Sum() const {
  double sum = 0.0;
  for (const PairEntry& e : sparse_) sum += e.weight;
  for (const RankOneTerm& term : lowrank_) {
    sum += term.coefficient * PairProductSum(term.factor);
  }
  return sum + constant_ * static_cast<double>(num_pairs());
}

PairVector PairVector::Scaled(double alpha) const {
  CheckFinite(alpha, "scale factor");
  PairVector out(n_);
  if (alpha == 0.0) return out;
  out.sparse_ = sparse_;
  for (PairEntry& e : out.sparse_) e.weight *= alpha;
  out.lowrank_ = lowrank_;
  for (RankOneTerm& term : out.lowrank_) term.coefficient *= alpha;
  out.constant_ = alpha * constant_;
  return out;
}

PairVector PairVector::WithConstant(double constant) const {
  CheckFinite(constant, "constant term");
  PairVector out = *this;
  out.constant_ = constant;
  return out;
}

PairVector PairVector::Plus(const PairVector& other) const {
  if (other.n_ != n_) {
    throw DimensionError("adding pair vectors of different node counts");
  }
  std::vector<PairEntry> sparse;
  sparse.reserve(sparse_.size() + other.sparse_.size());
  sparse.insert(sparse.end(), sparse_.begin(), sparse_.end());
  sparse.insert(sparse.end(), other.sparse_.begin(), other.sparse_.end());
  std::vector<RankOneTerm> lowrank = lowrank_;
  lowrank.insert(lowrank.end(), other.lowrank_.begin(), other.lowrank_.end());
  return PairVector(n_, std::move(sparse), std::move(lowrank),
                    constant_ + other.constant_);
}

}  // namespace projcd
