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

// Dense reference implementations and random instance builders for tests.
// Everything here materializes the full pair vector, so keep n small.

#ifndef PROJCD_TESTS_TEST_UTIL_H_
#define PROJCD_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "projcd/graph.h"
#include "projcd/pair_vector.h"
#include "projcd/partition.h"

namespace projcd::testing {

using Dense = std::vector<double>;

// Position of pair (i, j), i < j, in row-major upper-triangle order.
inline int64_t PairPos(NodeId i, NodeId j, NodeId n) {
  if (i > j) std::swap(i, j);
  return static_cast<int64_t>(i) * n - static_cast<int64_t>(i) * (i + 1) / 2 + (j - i - 1);
}

inline Dense ToDense(const PairVector& x) {
  const NodeId n = x.n();
  Dense d(NumPairs(n), x.constant());
  for (const RankOneTerm& term : x.lowrank()) {
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) {
        d[PairPos(i, j, n)] += term.coefficient * term.factor[i] * term.factor[j];
      }
    }
  }
  for (const PairEntry& e : x.sparse()) d[PairPos(e.i, e.j, n)] += e.weight;
  return d;
}

inline Dense DenseClustering(const std::vector<int>& labels) {
  const NodeId n = static_cast<NodeId>(labels.size());
  Dense d(NumPairs(n));
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) d[PairPos(i, j, n)] = labels[i] == labels[j] ? 1 : -1;
  }
  return d;
}

inline Dense DenseClustering(const Partition& c) {
  return DenseClustering(std::vector<int>(c.membership().begin(), c.membership().end()));
}

inline double Dot(const Dense& a, const Dense& b) {
  long double s = 0;
  for (size_t k = 0; k < a.size(); ++k) s += static_cast<long double>(a[k]) * b[k];
  return static_cast<double>(s);
}

inline double DenseNorm(const Dense& a) { return std::sqrt(Dot(a, a)); }

inline double ClampedAcos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

inline double DenseAngle(const Dense& a, const Dense& b) {
  return ClampedAcos(Dot(a, b) / (DenseNorm(a) * DenseNorm(b)));
}

inline double DenseLatitude(const Dense& a) {
  return DenseAngle(a, Dense(a.size(), -1.0));
}

inline double DensePearson(const Dense& a, const Dense& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (size_t k = 0; k < a.size(); ++k) {
    ma += a[k];
    mb += b[k];
  }
  ma /= n;
  mb /= n;
  long double sab = 0, saa = 0, sbb = 0;
  for (size_t k = 0; k < a.size(); ++k) {
    sab += (a[k] - ma) * (b[k] - mb);
    saa += (a[k] - ma) * (a[k] - ma);
    sbb += (b[k] - mb) * (b[k] - mb);
  }
  return static_cast<double>(sab / std::sqrt(saa * sbb));
}

// Angle at r between the great circles towards x and towards y, from the
// tangent directions at r.
inline double DenseSphericalAngle(const Dense& x, const Dense& r, const Dense& y) {
  const double nr = DenseNorm(r);
  auto tangent = [&](const Dense& v) {
    const double along = Dot(v, r) / (nr * nr);
    Dense t(v.size());
    for (size_t k = 0; k < v.size(); ++k) t[k] = v[k] - along * r[k];
    return t;
  };
  return DenseAngle(tangent(x), tangent(y));
}

inline Dense DenseParallelProjection(const Dense& x, double lambda) {
  const double n = static_cast<double>(x.size());
  double mean = 0;
  for (double v : x) mean += v;
  mean /= n;
  Dense centered(x.size());
  for (size_t k = 0; k < x.size(); ++k) centered[k] = x[k] - mean;
  const double scale = std::sin(lambda) * std::sqrt(n) / DenseNorm(centered);
  Dense out(x.size());
  for (size_t k = 0; k < x.size(); ++k) out[k] = scale * centered[k] - std::cos(lambda);
  return out;
}

struct RandomSLOptions {
  double density = 0.3;
  int max_terms = 2;
  bool constant = true;
};

inline PairVector RandomSL(NodeId n, std::mt19937_64& rng, const RandomSLOptions& o = {}) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::bernoulli_distribution keep(o.density);
  std::vector<PairEntry> sparse;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (keep(rng)) sparse.push_back({i, j, u(rng)});
    }
  }
  std::vector<RankOneTerm> lowrank;
  const int terms = std::uniform_int_distribution<int>(1, std::max(1, o.max_terms))(rng);
  for (int k = 0; k < terms; ++k) {
    RankOneTerm term{u(rng), std::vector<double>(n)};
    for (double& f : term.factor) f = u(rng);
    lowrank.push_back(std::move(term));
  }
  const double constant = o.constant ? 0.5 * u(rng) : 0.0;
  return PairVector(n, std::move(sparse), std::move(lowrank), constant);
}

inline Partition RandomPartition(NodeId n, int max_k, std::mt19937_64& rng) {
  const int k = std::uniform_int_distribution<int>(1, std::max(1, max_k))(rng);
  std::uniform_int_distribution<int> label(0, k - 1);
  std::vector<int> labels(n);
  for (int& l : labels) l = label(rng);
  return Partition(labels);
}

inline Graph RandomGraph(NodeId n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution edge(p);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (edge(rng)) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges);
}

// Invokes visit(labels) for every set partition of n nodes, as restricted
// growth strings.
inline void ForEachPartition(NodeId n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> labels(n, 0);
  std::function<void(NodeId, int)> rec = [&](NodeId i, int used) {
    if (i == n) {
      visit(labels);
      return;
    }
    for (int a = 0; a <= used; ++a) {
      labels[i] = a;
      rec(i + 1, a == used ? used + 1 : used);
    }
  };
  if (n == 0) {
    visit(labels);
    return;
  }
  rec(1, 1);
}

inline bool RelClose(double a, double b, double rel, double abs_floor = 1e-12) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), abs_floor});
}

}  // namespace projcd::testing

#endif  // PROJCD_TESTS_TEST_UTIL_H_
