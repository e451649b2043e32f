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
#include <numeric>

#include "projcd/errors.h"
#include "projcd/solver.h"

namespace projcd {

LocalMoveState::LocalMoveState(const PairVector& q) {
  InitFromQuery(q);
  std::vector<CommunityId> labels(q.n());
  std::iota(labels.begin(), labels.end(), 0);
  AssignInitial(labels);
}

LocalMoveState::LocalMoveState(const PairVector& q, const Partition& initial) {
  if (initial.n() != q.n()) throw DimensionError("initial partition size differs from query");
  InitFromQuery(q);
  AssignInitial(initial.membership());
}

void LocalMoveState::InitFromQuery(const PairVector& q) {
  const NodeId n = q.n();
  offsets_.assign(n + 1, 0);
  for (const PairEntry& e : q.sparse()) {
    ++offsets_[e.i + 1];
    ++offsets_[e.j + 1];
  }
  for (NodeId i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  targets_.resize(offsets_[n]);
  weights_.resize(offsets_[n]);
  std::vector<int64_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const PairEntry& e : q.sparse()) {
    targets_[fill[e.i]] = e.j;
    weights_[fill[e.i]++] = e.weight;
    targets_[fill[e.j]] = e.i;
    weights_[fill[e.j]++] = e.weight;
  }
  for (const RankOneTerm& term : q.lowrank()) {
    coefficients_.push_back(term.coefficient);
    factors_.push_back(term.factor);
  }
  if (q.constant() != 0.0) {
    coefficients_.push_back(q.constant());
    factors_.emplace_back(n, 1.0);
  }
  self_.assign(n, 0.0);
  total_ = q.Sum();
}

void LocalMoveState::AssignInitial(std::span<const CommunityId> labels) {
  const NodeId n = static_cast<NodeId>(labels.size());
  const size_t terms = coefficients_.size();
  community_.assign(labels.begin(), labels.end());
  size_.assign(n, 0);
  aggregate_.assign(terms, std::vector<double>(n, 0.0));
  for (NodeId i = 0; i < n; ++i) {
    const CommunityId a = community_[i];
    if (a < 0 || a >= n) throw IndexError("community label out of range");
    ++size_[a];
    for (size_t k = 0; k < terms; ++k) aggregate_[k][a] += factors_[k][i];
  }
  nonempty_.clear();
  nonempty_pos_.assign(n, -1);
  empty_.clear();
  extremes_.assign(terms, {});
  for (CommunityId a = n - 1; a >= 0; --a) {
    if (size_[a] == 0) empty_.push_back(a);
  }
  for (CommunityId a = 0; a < n; ++a) {
    if (size_[a] > 0) {
      AddNonempty(a);
      UpdateExtremes(a, true);
    }
  }
  scratch_.assign(n, 0.0);
  marked_.assign(n, 0);
  touched_.clear();
  intra_ = ComputeIntra();
}

void LocalMoveState::AddNonempty(CommunityId a) {
  nonempty_pos_[a] = static_cast<int64_t>(nonempty_.size());
  nonempty_.push_back(a);
}

void LocalMoveState::RemoveNonempty(CommunityId a) {
  const int64_t pos = nonempty_pos_[a];
  const CommunityId last = nonempty_.back();
  nonempty_[pos] = last;
  nonempty_pos_[last] = pos;
  nonempty_.pop_back();
  nonempty_pos_[a] = -1;
}

void LocalMoveState::UpdateExtremes(CommunityId a, bool insert) {
  for (size_t k = 0; k < extremes_.size(); ++k) {
    if (insert) {
      extremes_[k].emplace(aggregate_[k][a], a);
    } else {
      extremes_[k].erase({aggregate_[k][a], a});
    }
  }
}

double LocalMoveState::ComputeIntra() const {
  double intra = 0.0;
  for (double s : self_) intra += s;
  const NodeId n = this->n();
  for (NodeId i = 0; i < n; ++i) {
    for (int64_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
      const NodeId j = targets_[e];
      if (j > i && community_[j] == community_[i]) intra += weights_[e];
    }
  }
  for (size_t k = 0; k < coefficients_.size(); ++k) {
    std::vector<double> sums(n, 0.0);
    double squares = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      sums[community_[i]] += factors_[k][i];
      squares += factors_[k][i] * factors_[k][i];
    }
    double total = 0.0;
    for (double s : sums) total += s * s;
    intra += coefficients_[k] * (total - squares) / 2.0;
  }
  return intra;
}

double LocalMoveState::RecomputeObjective() const { return 2.0 * ComputeIntra() - total_; }

bool LocalMoveState::CheckAggregates(double tolerance) const {
  const NodeId n = this->n();
  std::vector<NodeId> sizes(n, 0);
  std::vector<std::vector<double>> sums(coefficients_.size(), std::vector<double>(n, 0.0));
  for (NodeId i = 0; i < n; ++i) {
    ++sizes[community_[i]];
    for (size_t k = 0; k < coefficients_.size(); ++k) sums[k][community_[i]] += factors_[k][i];
  }
  if (sizes != size_) return false;
  for (size_t k = 0; k < coefficients_.size(); ++k) {
    for (CommunityId a = 0; a < n; ++a) {
      const double scale = std::max(1.0, std::abs(sums[k][a]));
      if (std::abs(sums[k][a] - aggregate_[k][a]) > tolerance * scale) return false;
    }
  }
  return true;
}

double LocalMoveState::LowRankWeight(NodeId i, CommunityId a) const {
  const bool inside = community_[i] == a;
  double w = 0.0;
  for (size_t k = 0; k < coefficients_.size(); ++k) {
    const double u = factors_[k][i];
    w += coefficients_[k] * u * (aggregate_[k][a] - (inside ? u : 0.0));
  }
  return w;
}

double LocalMoveState::SparseWeight(NodeId i, CommunityId a) const {
  double w = 0.0;
  for (int64_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
    if (community_[targets_[e]] == a) w += weights_[e];
  }
  return w;
}

void LocalMoveState::AccumulateNeighbors(NodeId i) const {
  for (int64_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
    const CommunityId c = community_[targets_[e]];
    if (!marked_[c]) {
      marked_[c] = 1;
      touched_.push_back(c);
    }
    scratch_[c] += weights_[e];
  }
}

void LocalMoveState::ClearNeighbors() const {
  for (CommunityId c : touched_) {
    marked_[c] = 0;
    scratch_[c] = 0.0;
  }
  touched_.clear();
}

double LocalMoveState::MoveGain(NodeId i, CommunityId target) const {
  if (i < 0 || i >= n()) throw IndexError("node out of range");
  const CommunityId a = community_[i];
  if (target == a || (target == kFresh && size_[a] == 1)) return 0.0;
  const double w_current = SparseWeight(i, a) + LowRankWeight(i, a);
  if (target == kFresh) return -2.0 * w_current;
  if (target < 0 || target >= n()) throw IndexError("community out of range");
  if (size_[target] == 0) return -2.0 * w_current;
  return 2.0 * (SparseWeight(i, target) + LowRankWeight(i, target) - w_current);
}

void LocalMoveState::Move(NodeId i, CommunityId target) {
  const CommunityId a = community_[i];
  if (target == a || (target == kFresh && size_[a] == 1)) return;
  if (target == kFresh) target = empty_.back();
  ApplyMove(i, target, MoveGain(i, target) / 2.0);
}

void LocalMoveState::ApplyMove(NodeId i, CommunityId target, double delta_intra) {
  const CommunityId a = community_[i];
  if (size_[target] == 0) {
    const auto it = std::find(empty_.rbegin(), empty_.rend(), target);
    empty_.erase(std::next(it).base());
  } else {
    UpdateExtremes(target, false);
  }
  UpdateExtremes(a, false);
  for (size_t k = 0; k < coefficients_.size(); ++k) {
    aggregate_[k][a] -= factors_[k][i];
    aggregate_[k][target] += factors_[k][i];
  }
  --size_[a];
  if (size_[target]++ == 0) AddNonempty(target);
  community_[i] = target;
  if (size_[a] == 0) {
    for (auto& agg : aggregate_) agg[a] = 0.0;
    RemoveNonempty(a);
    empty_.push_back(a);
  } else {
    UpdateExtremes(a, true);
  }
  UpdateExtremes(target, true);
  intra_ += delta_intra;
}

int64_t LocalMoveState::RunLocalMoves(std::mt19937_64& rng, const SolverConfig& config,
                                      double min_gain, bool exhaustive,
                                      SolveStats* stats) {
  const NodeId n = this->n();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  int64_t total_moves = 0;
  const double screen_limit = config.screening_threshold * std::sqrt(static_cast<double>(n));
  int sweep = 0;
  for (; sweep < config.max_sweeps; ++sweep) {
    for (NodeId k = n - 1; k > 0; --k) {
      std::uniform_int_distribution<NodeId> pick(0, k);
      std::swap(order[k], order[pick(rng)]);
    }
    int64_t moves = 0;
    for (NodeId i : order) {
      const CommunityId a = community_[i];
      AccumulateNeighbors(i);
      const double w_current = (marked_[a] ? scratch_[a] : 0.0) + LowRankWeight(i, a);
      bool have = false;
      double best_gain = 0.0;
      CommunityId best = -1;
      auto consider = [&](CommunityId c, double gain) {
        if (!(gain > min_gain)) return;
        if (!have || gain > best_gain + min_gain) {
          have = true;
          best_gain = gain;
          best = c;
        } else if (gain >= best_gain - min_gain && c < best) {
          best_gain = std::max(best_gain, gain);
          best = c;
        }
      };
      auto evaluate = [&](CommunityId c) {
        if (c == a) return;
        const double w = (marked_[c] ? scratch_[c] : 0.0) + LowRankWeight(i, c);
        consider(c, 2.0 * (w - w_current));
      };
      for (CommunityId c : touched_) evaluate(c);
      if (size_[a] > 1 && !empty_.empty()) consider(empty_.back(), -2.0 * w_current);
      if (!coefficients_.empty()) {
        if (exhaustive || static_cast<double>(nonempty_.size()) <= screen_limit) {
          for (CommunityId c : nonempty_) evaluate(c);
        } else {
          for (size_t k = 0; k < coefficients_.size(); ++k) {
            const double direction = coefficients_[k] * factors_[k][i];
            const auto& set = extremes_[k];
            if (direction > 0.0) {
              int taken = 0;
              for (auto it = set.rbegin(); it != set.rend() && taken < 2; ++it, ++taken) {
                evaluate(it->second);
              }
            } else if (direction < 0.0) {
              int taken = 0;
              for (auto it = set.begin(); it != set.end() && taken < 2; ++it, ++taken) {
                evaluate(it->second);
              }
            }
          }
        }
      }
      ClearNeighbors();
      if (have) {
        ApplyMove(i, best, best_gain / 2.0);
        ++moves;
      }
    }
    total_moves += moves;
    if (stats != nullptr) ++stats->sweeps;
    if (moves == 0) break;
  }
  if (sweep == config.max_sweeps && stats != nullptr) ++stats->sweep_cap_hits;
  if (stats != nullptr) stats->moves += total_moves;
  return total_moves;
}

Partition LocalMoveState::ToPartition() const {
  return Partition(std::vector<int>(community_.begin(), community_.end()));
}

LocalMoveState LocalMoveState::Aggregate() const {
  const Partition p = ToPartition();
  const NodeId n = this->n();
  const NodeId k = p.num_communities();
  const size_t terms = coefficients_.size();
  std::vector<std::vector<NodeId>> members(k);
  for (NodeId i = 0; i < n; ++i) members[p.community(i)].push_back(i);

  LocalMoveState next;
  next.coefficients_ = coefficients_;
  next.total_ = total_;
  next.factors_.assign(terms, std::vector<double>(k, 0.0));
  next.self_.assign(k, 0.0);
  next.offsets_.assign(k + 1, 0);
  std::vector<double> accum(k, 0.0);
  std::vector<char> seen(k, 0);
  std::vector<CommunityId> hit;
  for (CommunityId b = 0; b < k; ++b) {
    double self = 0.0;
    for (NodeId i : members[b]) {
      self += self_[i];
      for (int64_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
        const NodeId j = targets_[e];
        const CommunityId c = p.community(j);
        if (c == b) {
          if (j > i) self += weights_[e];
          continue;
        }
        if (!seen[c]) {
          seen[c] = 1;
          hit.push_back(c);
        }
        accum[c] += weights_[e];
      }
    }
    for (size_t t = 0; t < terms; ++t) {
      double sum = 0.0;
      double squares = 0.0;
      for (NodeId i : members[b]) {
        sum += factors_[t][i];
        squares += factors_[t][i] * factors_[t][i];
      }
      next.factors_[t][b] = sum;
      self += coefficients_[t] * (sum * sum - squares) / 2.0;
    }
    next.self_[b] = self;
    std::sort(hit.begin(), hit.end());
    for (CommunityId c : hit) {
      if (accum[c] != 0.0) {
        next.targets_.push_back(c);
        next.weights_.push_back(accum[c]);
      }
      accum[c] = 0.0;
      seen[c] = 0;
    }
    hit.clear();
    next.offsets_[b + 1] = static_cast<int64_t>(next.targets_.size());
  }
  std::vector<CommunityId> labels(k);
  std::iota(labels.begin(), labels.end(), 0);
  next.AssignInitial(labels);
  return next;
}

}  // namespace projcd
