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

#include <functional>

#include "projcd/errors.h"
#include "projcd/solver.h"

namespace projcd {
namespace {

std::optional<double> Guarded(const std::function<double()>& metric) {
  try {
    return metric();
  } catch (const DegenerateError&) {
    return std::nullopt;
  }
}

}  // namespace

DetectionResult Evaluate(const PairVector& q, const Partition& c, const Partition* planted) {
  if (q.n() != c.n()) throw DimensionError("query and partition sizes differ");
  if (planted != nullptr && planted->n() != c.n()) {
    throw DimensionError("planted partition size differs");
  }
  DetectionResult r;
  r.partition = c;
  r.num_communities = c.num_communities();
  r.objective = InnerWithPartition(q, c);
  r.d_a_qc = Guarded([&] { return AngularDistanceToPartition(q, c); });
  r.latitude_c = Guarded([&] { return PartitionLatitude(c); });
  if (planted == nullptr) return r;
  r.rho = Guarded([&] { return PearsonCorrelation(c, *planted); });
  r.granularity_error = Guarded([&] { return RelativeGranularityError(c, *planted); });
  r.latitude_t = Guarded([&] { return PartitionLatitude(*planted); });
  r.d_a_qt = Guarded([&] { return AngularDistanceToPartition(q, *planted); });
  r.d_cc_qt = Guarded([&] { return CorrelationDistanceToPartition(q, *planted); });
  if (r.d_a_qc && r.d_a_qt && *r.d_a_qt > 0.0) r.excess_ratio = *r.d_a_qc / *r.d_a_qt - 1.0;
  return r;
}

}  // namespace projcd
