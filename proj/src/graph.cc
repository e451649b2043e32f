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

#include "projcd/graph.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "projcd/errors.h"

namespace projcd {

Graph::Graph(NodeId n, std::span<const Edge> edges) : n_(n) {
  if (n < 0) throw ParameterError("negative node count");
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw IndexError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") out of range for n = " + std::to_string(n));
    }
    if (u == v) {
      ++dropped_self_loops_;
      continue;
    }
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  const size_t before = edges_.size();
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  dropped_duplicates_ = static_cast<int64_t>(before - edges_.size());

  offsets_.assign(n + 1, 0);
  for (auto [u, v] : edges_) {
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  for (NodeId i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  neighbors_.resize(offsets_[n]);
  std::vector<int64_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (auto [u, v] : edges_) {
    neighbors_[fill[u]++] = v;
    neighbors_[fill[v]++] = u;
  }
  for (NodeId i = 0; i < n; ++i) {
    std::sort(neighbors_.begin() + offsets_[i], neighbors_.begin() + offsets_[i + 1]);
  }
}

std::vector<double> Graph::Degrees() const {
  std::vector<double> d(n_);
  for (NodeId i = 0; i < n_; ++i) d[i] = static_cast<double>(degree(i));
  return d;
}

bool Graph::HasEdge(NodeId i, NodeId j) const {
  auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

NodeId Graph::NumIsolated() const {
  NodeId count = 0;
  for (NodeId i = 0; i < n_; ++i) count += degree(i) == 0;
  return count;
}

bool Graph::IsConnected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(n_, 0);
  std::vector<NodeId> stack = {0};
  seen[0] = 1;
  NodeId reached = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n_;
}

PairVector AdjacencyVector(const Graph& g) {
  std::vector<PairEntry> entries;
  entries.reserve(g.edges().size());
  for (auto [u, v] : g.edges()) entries.push_back({u, v, 1.0});
  return PairVector(g.n(), std::move(entries));
}

PairVector DegreeProductVector(const Graph& g) {
  if (g.num_edges() == 0) {
    throw DegenerateError("degree-product vector of a graph without edges");
  }
  const double two_m = 2.0 * static_cast<double>(g.num_edges());
  return PairVector(g.n(), {}, {{1.0 / two_m, g.Degrees()}});
}

PairVector JaccardVector(const Graph& g) {
  const NodeId n = g.n();
  std::vector<int64_t> common(n, 0);
  std::vector<NodeId> touched;
  std::vector<PairEntry> entries;
  auto visit_closed = [&](NodeId k, auto&& fn) {
    fn(k);
    for (NodeId j : g.neighbors(k)) fn(j);
  };
  for (NodeId i = 0; i < n; ++i) {
    visit_closed(i, [&](NodeId k) {
      visit_closed(k, [&](NodeId j) {
        if (j <= i) return;
        if (common[j]++ == 0) touched.push_back(j);
      });
    });
    for (NodeId j : touched) {
      const int64_t inter = common[j];
      const int64_t uni = (g.degree(i) + 1) + (g.degree(j) + 1) - inter;
      entries.push_back({i, j, static_cast<double>(inter) / static_cast<double>(uni)});
      common[j] = 0;
    }
    touched.clear();
  }
  return PairVector(n, std::move(entries));
}

namespace {

// Sparse vector with a dense backing array and a list of nonzero positions.
// Once the support grows past `dense_limit` the list is abandoned and loops
// run over all n positions.
class PropagationRow {
 public:
  PropagationRow(NodeId n, NodeId dense_limit)
      : values_(n, 0.0), dense_limit_(dense_limit) {}

  void Add(NodeId j, double v) {
    if (!dense_ && values_[j] == 0.0) {
      support_.push_back(j);
      if (static_cast<NodeId>(support_.size()) > dense_limit_) dense_ = true;
    }
    values_[j] += v;
  }

  template <typename Fn>
  void ForEach(Fn&& fn) const {
    if (dense_) {
      for (NodeId j = 0; j < static_cast<NodeId>(values_.size()); ++j) {
        if (values_[j] != 0.0) fn(j, values_[j]);
      }
    } else {
      for (NodeId j : support_) fn(j, values_[j]);
    }
  }

  void Clear() {
    if (dense_) {
      std::fill(values_.begin(), values_.end(), 0.0);
    } else {
      for (NodeId j : support_) values_[j] = 0.0;
    }
    support_.clear();
    dense_ = false;
  }

  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
  std::vector<NodeId> support_;
  NodeId dense_limit_;
  bool dense_ = false;
};

void Propagate(const Graph& g, NodeId source, int t, PropagationRow& cur,
               PropagationRow& next) {
  cur.Clear();
  cur.Add(source, 1.0);
  for (int step = 0; step < t; ++step) {
    next.Clear();
    cur.ForEach([&](NodeId k, double mass) {
      const double share = mass / static_cast<double>(g.degree(k));
      for (NodeId j : g.neighbors(k)) next.Add(j, share);
    });
    std::swap(cur, next);
  }
}

}  // namespace

std::vector<double> TransitionRow(const Graph& g, NodeId source, int t) {
  if (t < 0) throw ParameterError("walk time must be non-negative");
  if (source < 0 || source >= g.n()) throw IndexError("source out of range");
  if (g.degree(source) == 0) {
    throw DegenerateError("transition row of isolated node " +
                          std::to_string(source));
  }
  PropagationRow cur(g.n(), g.n());
  PropagationRow next(g.n(), g.n());
  Propagate(g, source, t, cur, next);
  return cur.values();
}

WalkDistribution ComputeWalkDistribution(const Graph& g, int t,
                                         const WalkOptions& options) {
  if (t < 1) throw ParameterError("walk time must be at least 1");
  if (g.num_edges() == 0) {
    throw DegenerateError("random walk on a graph without edges");
  }
  const NodeId n = g.n();
  if (!options.allow_isolated) {
    for (NodeId i = 0; i < n; ++i) {
      if (g.degree(i) == 0) {
        throw DegenerateError("random walk undefined: node " + std::to_string(i) +
                              " is isolated");
      }
    }
  }
  WalkDistribution out;
  out.t = t;
  const double two_m = 2.0 * static_cast<double>(g.num_edges());
  out.stationary.resize(n);
  for (NodeId i = 0; i < n; ++i) {
    out.stationary[i] = static_cast<double>(g.degree(i)) / two_m;
  }

  const NodeId dense_limit = static_cast<NodeId>(
      std::clamp(options.dense_fraction, 0.0, 1.0) * static_cast<double>(n));
  PropagationRow cur(n, dense_limit);
  PropagationRow next(n, dense_limit);
  // Both orientations of every pair: (min, max, s_source * P^t[source][j]).
  std::vector<PairEntry> directed;
  for (NodeId i = 0; i < n; ++i) {
    if (g.degree(i) == 0) continue;
    Propagate(g, i, t, cur, next);
    const double s_i = out.stationary[i];
    cur.ForEach([&](NodeId j, double p) {
      if (j != i) directed.push_back({std::min(i, j), std::max(i, j), s_i * p});
    });
  }
  std::sort(directed.begin(), directed.end(),
            [](const PairEntry& a, const PairEntry& b) {
              return a.i != b.i ? a.i < b.i : a.j < b.j;
            });
  out.pair_weights.reserve(directed.size() / 2 + 1);
  for (size_t p = 0; p < directed.size();) {
    size_t q = p + 1;
    double sum = directed[p].weight;
    while (q < directed.size() && directed[q].i == directed[p].i &&
           directed[q].j == directed[p].j) {
      sum += directed[q].weight;
      ++q;
    }
    // Reversibility makes the two orientations equal; a lone orientation
    // means the other one underflowed to zero.
    const double asym =
        q - p == 2 ? std::abs(directed[p].weight - directed[p + 1].weight)
                   : directed[p].weight;
    out.max_asymmetry = std::max(out.max_asymmetry, asym);
    out.pair_weights.push_back({directed[p].i, directed[p].j, 0.5 * sum});
    p = q;
  }
  return out;
}

}  // namespace projcd
