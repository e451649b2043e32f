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

// Hyperspherical geometry of the pair space R^N, N = n(n-1)/2.
//
// Clustering vectors live on the sphere of radius sqrt(N). The all-minus-ones
// vector (all singletons) is the south pole; latitude is the angle to it.
// Every function here works on the sparse-plus-low-rank representation and
// costs O(nnz + n * terms^2).

#ifndef PROJCD_GEOMETRY_H_
#define PROJCD_GEOMETRY_H_

#include "projcd/pair_vector.h"

namespace projcd {

struct SphericalCoords {
  double latitude;  // radians in [0, pi]
  double norm;
  double mean;  // <x, 1> / N
};

// Sum over i < j of x_ij * y_ij. Throws DimensionError if x.n() != y.n().
double Inner(const PairVector& x, const PairVector& y);

double Norm(const PairVector& x);

// Throws DegenerateError for the zero vector.
SphericalCoords Coordinates(const PairVector& x);

// arccos(<x,y> / (|x| |y|)) in [0, pi]. Throws DegenerateError if either
// vector is zero.
double AngularDistance(const PairVector& x, const PairVector& y);

// Angular distance to -1.
double Latitude(const PairVector& x);

// Angle between the meridians of x and y at the south pole, i.e. the
// arccosine of the Pearson correlation of the entries. Throws
// DegenerateError if either vector is a multiple of 1.
double CorrelationDistance(const PairVector& x, const PairVector& y);

// Angle at r between the great circles through x and through y.
// Throws DegenerateError if x or y coincides with r or -r.
double SphericalAngle(const PairVector& x, const PairVector& r,
                      const PairVector& y);

// Projection of x onto the parallel at latitude lambda along x's meridian.
// Requires lambda in (0, pi) and x not a multiple of 1. The result has norm
// sqrt(N).
PairVector ParallelProjection(const PairVector& x, double lambda);

// Clamped arccos; arguments outside [-1, 1] come only from round-off.
double SafeAcos(double c);

// The spherical law of cosines at r = -1 (cosine form):
//   cos d_cc = (cos d_a - cos l_x cos l_y) / (sin l_x sin l_y).
double CorrelationDistanceFromAngles(double angular_distance,
                                     double latitude_x, double latitude_y);

}  // namespace projcd

#endif  // PROJCD_GEOMETRY_H_
