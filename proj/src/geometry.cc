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

#include "projcd/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "projcd/errors.h"

namespace projcd {
namespace {

// Relative size of the component orthogonal to 1 below which a vector is
// treated as lying on the pole axis.
constexpr double kPoleTolerance = 1e-12;

// Low-rank part of x (constant included as a term with an all-ones factor)
// evaluated at the sparse keys of y, weighted by y's sparse values.
double SparseTimesDense(std::span<const PairEntry> sparse,
                        const PairVector& dense) {
  double sum = 0.0;
  for (const PairEntry& e : sparse) {
    double value = dense.constant();
    for (const RankOneTerm& term : dense.lowrank()) {
      value += term.coefficient * term.factor[e.i] * term.factor[e.j];
    }
    sum += e.weight * value;
  }
  return sum;
}

double SparseTimesSparse(std::span<const PairEntry> a,
                         std::span<const PairEntry> b) {
  double sum = 0.0;
  size_t p = 0;
  size_t q = 0;
  while (p < a.size() && q < b.size()) {
    if (a[p].i == b[q].i && a[p].j == b[q].j) {
      sum += a[p].weight * b[q].weight;
      ++p;
      ++q;
    } else if (a[p].i < b[q].i || (a[p].i == b[q].i && a[p].j < b[q].j)) {
      ++p;
    } else {
      ++q;
    }
  }
  return sum;
}

// Dense parts only: sum_{i<j} (L_x + c_x)(L_y + c_y).
double DenseTimesDense(const PairVector& x, const PairVector& y) {
  const NodeId n = x.n();
  double sum = x.constant() * y.constant() * static_cast<double>(NumPairs(n));
  std::vector<double> product(n);
  for (const RankOneTerm& tx : x.lowrank()) {
    sum += tx.coefficient * y.constant() * PairProductSum(tx.factor);
    for (const RankOneTerm& ty : y.lowrank()) {
      for (NodeId i = 0; i < n; ++i) product[i] = tx.factor[i] * ty.factor[i];
      sum += tx.coefficient * ty.coefficient * PairProductSum(product);
    }
  }
  for (const RankOneTerm& ty : y.lowrank()) {
    sum += ty.coefficient * x.constant() * PairProductSum(ty.factor);
  }
  return sum;
}

// Cosine and sine of the latitude, computed from inner products so that no
// arccos/cos round trip is involved.
struct LatitudeTrig {
  double cos_lat;
  double sin_lat;
};

LatitudeTrig LatitudeTrigOf(const PairVector& x, double norm) {
  const double big_n = static_cast<double>(x.num_pairs());
  const double sum = x.Sum();
  const double centered_sq = std::max(0.0, norm * norm - sum * sum / big_n);
  return {std::clamp(-sum / (std::sqrt(big_n) * norm), -1.0, 1.0),
          std::sqrt(centered_sq) / norm};
}

}  // namespace

double SafeAcos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

double Inner(const PairVector& x, const PairVector& y) {
  if (x.n() != y.n()) {
    throw DimensionError("inner product of pair vectors with n = " +
                         std::to_string(x.n()) + " and " +
                         std::to_string(y.n()));
  }
  return SparseTimesSparse(x.sparse(), y.sparse()) +
         SparseTimesDense(x.sparse(), y) + SparseTimesDense(y.sparse(), x) +
         DenseTimesDense(x, y);
}

double Norm(const PairVector& x) { return std::sqrt(std::max(0.0, Inner(x, x))); }

SphericalCoords Coordinates(const PairVector& x) {
  const double norm = Norm(x);
  if (!(norm > 0.0)) throw DegenerateError("latitude of the zero vector");
  const double big_n = static_cast<double>(x.num_pairs());
  const double mean = x.Sum() / big_n;
  return {SafeAcos(-mean * std::sqrt(big_n) / norm), norm, mean};
}

double AngularDistance(const PairVector& x, const PairVector& y) {
  const double nx = Norm(x);
  const double ny = Norm(y);
  if (!(nx > 0.0) || !(ny > 0.0)) {
    throw DegenerateError("angular distance involving the zero vector");
  }
  return SafeAcos(Inner(x, y) / (nx * ny));
}

double Latitude(const PairVector& x) { return Coordinates(x).latitude; }

double CorrelationDistanceFromAngles(double angular_distance,
                                     double latitude_x, double latitude_y) {
  const double denom = std::sin(latitude_x) * std::sin(latitude_y);
  if (!(denom > kPoleTolerance)) {
    throw DegenerateError("correlation distance of a vector on the pole axis");
  }
  return SafeAcos((std::cos(angular_distance) -
                   std::cos(latitude_x) * std::cos(latitude_y)) /
                  denom);
}

double CorrelationDistance(const PairVector& x, const PairVector& y) {
  if (x.n() != y.n()) throw DimensionError("correlation distance: n mismatch");
  const double nx = Norm(x);
  const double ny = Norm(y);
  if (!(nx > 0.0) || !(ny > 0.0)) {
    throw DegenerateError("correlation distance involving the zero vector");
  }
  const LatitudeTrig tx = LatitudeTrigOf(x, nx);
  const LatitudeTrig ty = LatitudeTrigOf(y, ny);
  if (tx.sin_lat <= kPoleTolerance || ty.sin_lat <= kPoleTolerance) {
    throw DegenerateError("correlation distance of a vector on the pole axis");
  }
  const double cos_da = Inner(x, y) / (nx * ny);
  return SafeAcos((cos_da - tx.cos_lat * ty.cos_lat) /
                  (tx.sin_lat * ty.sin_lat));
}

double SphericalAngle(const PairVector& x, const PairVector& r,
                      const PairVector& y) {
  const double nx = Norm(x);
  const double nr = Norm(r);
  const double ny = Norm(y);
  if (!(nx > 0.0) || !(nr > 0.0) || !(ny > 0.0)) {
    throw DegenerateError("spherical angle involving the zero vector");
  }
  const double cos_xy = std::clamp(Inner(x, y) / (nx * ny), -1.0, 1.0);
  const double cos_xr = std::clamp(Inner(x, r) / (nx * nr), -1.0, 1.0);
  const double cos_yr = std::clamp(Inner(y, r) / (ny * nr), -1.0, 1.0);
  const double sin_xr = std::sqrt(1.0 - cos_xr * cos_xr);
  const double sin_yr = std::sqrt(1.0 - cos_yr * cos_yr);
  if (sin_xr <= kPoleTolerance || sin_yr <= kPoleTolerance) {
    throw DegenerateError("spherical angle at a vertex coinciding with x or y");
  }
  return SafeAcos((cos_xy - cos_xr * cos_yr) / (sin_xr * sin_yr));
}

PairVector ParallelProjection(const PairVector& x, double lambda) {
  if (!(lambda > 0.0 && lambda < std::numbers::pi)) {
    throw ParameterError("parallel projection latitude must lie in (0, pi)");
  }
  const double big_n = static_cast<double>(x.num_pairs());
  const double norm = Norm(x);
  const double mean = x.Sum() / big_n;
  const double centered =
      std::sqrt(std::max(0.0, norm * norm - mean * mean * big_n));
  if (!(norm > 0.0) || centered <= kPoleTolerance * norm) {
    throw DegenerateError("parallel projection of a vector on the pole axis");
  }
  const double alpha = std::sin(lambda) * std::sqrt(big_n) / centered;
  return x.Scaled(alpha).WithConstant(alpha * (x.constant() - mean) -
                                      std::cos(lambda));
}

}  // namespace projcd
