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

#include "projcd/partition.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "projcd/errors.h"
#include "projcd/geometry.h"

namespace projcd {
namespace {

PairIndex Choose2(int64_t s) { return s * (s - 1) / 2; }

void CheckSameSize(const Partition& c, const Partition& t) {
  if (c.n() != t.n()) {
    throw DimensionError("partitions over " + std::to_string(c.n()) + " and " +
                         std::to_string(t.n()) + " nodes");
  }
}

double PairWeightSum(const PairWeights& w) {
  double sum = 0.0;
  for (const PairEntry& e : w) sum += e.weight;
  return sum;
}

double IntraWeightSum(const Partition& c, const PairWeights& w) {
  double sum = 0.0;
  for (const PairEntry& e : w) {
    if (e.i < 0 || e.j < 0 || e.i >= c.n() || e.j >= c.n() || e.i == e.j) {
      throw IndexError("pair weight key out of range");
    }
    if (c.community(e.i) == c.community(e.j)) sum += e.weight;
  }
  return sum;
}

}  // namespace

Partition::Partition(std::span<const int64_t> labels) { Canonicalize(labels); }

Partition::Partition(const std::vector<int>& labels) {
  std::vector<int64_t> wide(labels.begin(), labels.end());
  Canonicalize(wide);
}

Partition Partition::Singletons(NodeId n) {
  std::vector<int64_t> labels(n);
  for (NodeId i = 0; i < n; ++i) labels[i] = i;
  return Partition(labels);
}

Partition Partition::OneCluster(NodeId n) {
  std::vector<int64_t> labels(n, 0);
  return Partition(labels);
}

void Partition::Canonicalize(std::span<const int64_t> labels) {
  std::unordered_map<int64_t, CommunityId> relabel;
  relabel.reserve(labels.size());
  membership_.resize(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) throw ParameterError("negative community label");
    auto [it, inserted] =
        relabel.try_emplace(labels[i], static_cast<CommunityId>(sizes_.size()));
    if (inserted) sizes_.push_back(0);
    membership_[i] = it->second;
    ++sizes_[it->second];
  }
  intra_pairs_ = 0;
  for (NodeId s : sizes_) intra_pairs_ += Choose2(s);
}

std::vector<std::vector<NodeId>> Partition::Communities() const {
  std::vector<std::vector<NodeId>> out(sizes_.size());
  for (size_t a = 0; a < sizes_.size(); ++a) out[a].reserve(sizes_[a]);
  for (NodeId i = 0; i < n(); ++i) out[membership_[i]].push_back(i);
  return out;
}

PairVector AsPairVector(const Partition& c) {
  std::vector<RankOneTerm> terms;
  for (CommunityId a = 0; a < c.num_communities(); ++a) {
    if (c.sizes()[a] < 2) continue;
    std::vector<double> indicator(c.n(), 0.0);
    for (NodeId i = 0; i < c.n(); ++i) {
      if (c.community(i) == a) indicator[i] = 1.0;
    }
    terms.push_back({2.0, std::move(indicator)});
  }
  return PairVector(c.n(), {}, std::move(terms), -1.0);
}

double IntraSum(const PairVector& q, const Partition& c) {
  if (q.n() != c.n()) throw DimensionError("query and partition sizes differ");
  double sum = 0.0;
  for (const PairEntry& e : q.sparse()) {
    if (c.community(e.i) == c.community(e.j)) sum += e.weight;
  }
  const CommunityId k = c.num_communities();
  std::vector<double> aggregate(k);
  std::vector<double> aggregate_sq(k);
  for (const RankOneTerm& term : q.lowrank()) {
    std::fill(aggregate.begin(), aggregate.end(), 0.0);
    std::fill(aggregate_sq.begin(), aggregate_sq.end(), 0.0);
    for (NodeId i = 0; i < c.n(); ++i) {
      const double u = term.factor[i];
      aggregate[c.community(i)] += u;
      aggregate_sq[c.community(i)] += u * u;
    }
    double within = 0.0;
    for (CommunityId a = 0; a < k; ++a) {
      within += 0.5 * (aggregate[a] * aggregate[a] - aggregate_sq[a]);
    }
    sum += term.coefficient * within;
  }
  return sum + q.constant() * static_cast<double>(c.intra_pairs());
}

double InnerWithPartition(const PairVector& q, const Partition& c) {
  return 2.0 * IntraSum(q, c) - q.Sum();
}

double PartitionLatitude(const Partition& c) {
  const PairIndex total = NumPairs(c.n());
  if (total == 0) throw DegenerateError("latitude needs at least two nodes");
  return SafeAcos(1.0 - 2.0 * static_cast<double>(c.intra_pairs()) /
                            static_cast<double>(total));
}

double AngularDistanceToPartition(const PairVector& q, const Partition& c) {
  const double norm = Norm(q);
  if (!(norm > 0.0)) throw DegenerateError("angular distance to zero query");
  const double big_n = static_cast<double>(NumPairs(c.n()));
  return SafeAcos(InnerWithPartition(q, c) / (norm * std::sqrt(big_n)));
}

double CorrelationDistanceToPartition(const PairVector& q, const Partition& c) {
  const PairIndex total = NumPairs(c.n());
  if (c.intra_pairs() == 0 || c.intra_pairs() == total) {
    throw DegenerateError("correlation distance to a trivial partition");
  }
  const double norm = Norm(q);
  if (!(norm > 0.0)) throw DegenerateError("correlation distance to zero query");
  const double big_n = static_cast<double>(total);
  const double sum = q.Sum();
  const double centered = std::sqrt(std::max(0.0, norm * norm - sum * sum / big_n));
  if (centered <= 1e-12 * norm) {
    throw DegenerateError("correlation distance of a query on the pole axis");
  }
  // Centered inner product <q - mean(q), b(C) - mean(b(C))>.
  const double b_sum = 2.0 * static_cast<double>(c.intra_pairs()) - big_n;
  const double inner_centered = InnerWithPartition(q, c) - sum * b_sum / big_n;
  const double b_centered = std::sqrt(big_n - b_sum * b_sum / big_n);
  return SafeAcos(inner_centered / (centered * b_centered));
}

PairCounts CountPairs(const Partition& c, const Partition& t) {
  CheckSameSize(c, t);
  std::unordered_map<int64_t, int64_t> cells;
  cells.reserve(c.n());
  for (NodeId i = 0; i < c.n(); ++i) {
    ++cells[static_cast<int64_t>(c.community(i)) * t.num_communities() +
            t.community(i)];
  }
  PairIndex joint = 0;
  for (const auto& [key, count] : cells) joint += Choose2(count);
  return {c.intra_pairs(), t.intra_pairs(), joint, NumPairs(c.n())};
}

double PearsonCorrelation(const Partition& c, const Partition& t) {
  const PairCounts counts = CountPairs(c, t);
  const PairIndex total = counts.total;
  if (counts.m_c <= 0 || counts.m_c >= total || counts.m_t <= 0 ||
      counts.m_t >= total) {
    throw DegenerateError(
        "Pearson correlation undefined for singleton or one-cluster partitions");
  }
  // The numerator is exact in 128-bit integers; the denominator is a product
  // of four 64-bit counts and is formed in long double.
  const __int128 numerator = static_cast<__int128>(counts.m_ct) * total -
                             static_cast<__int128>(counts.m_c) * counts.m_t;
  const long double denominator =
      std::sqrt(static_cast<long double>(counts.m_c) * (total - counts.m_c)) *
      std::sqrt(static_cast<long double>(counts.m_t) * (total - counts.m_t));
  return static_cast<double>(static_cast<long double>(numerator) / denominator);
}

double RelativeGranularityError(const Partition& c, const Partition& t) {
  CheckSameSize(c, t);
  const double planted = PartitionLatitude(t);
  if (!(planted > 0.0)) {
    throw DegenerateError("granularity error relative to singleton partition");
  }
  return PartitionLatitude(c) / planted - 1.0;
}

double CorClustAgreement(const Partition& c, const PairWeights& w_plus,
                         const PairWeights& w_minus) {
  // intra w+ plus inter w-.
  return IntraWeightSum(c, w_plus) +
         (PairWeightSum(w_minus) - IntraWeightSum(c, w_minus));
}

double CorClustDisagreement(const Partition& c, const PairWeights& w_plus,
                            const PairWeights& w_minus) {
  return PairWeightSum(w_plus) + PairWeightSum(w_minus) -
         CorClustAgreement(c, w_plus, w_minus);
}

}  // namespace projcd
