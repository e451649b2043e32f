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
#include <sstream>

#include "projcd/errors.h"
#include "projcd/geometry.h"
#include "projcd/solver.h"

namespace projcd {
namespace {

double Drift(double tracked, double recomputed) {
  return std::abs(tracked - recomputed) / std::max(1.0, std::abs(recomputed));
}

void RecordDrift(SolveStats* stats, double tracked, double recomputed) {
  if (stats != nullptr) {
    stats->max_objective_drift =
        std::max(stats->max_objective_drift, Drift(tracked, recomputed));
  }
}

}  // namespace

SolverConfig ParseSolverConfig(const ConfigSection& section) {
  SolverConfig config;
  if (section.Has("seed")) {
    const std::string text = section.GetString("seed");
    try {
      size_t used = 0;
      config.seed = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw ConfigError(section.KeyPath("seed"), "expected an unsigned integer");
    }
  }
  config.epsilon = section.GetDouble("epsilon", config.epsilon);
  if (!(config.epsilon >= 0.0)) throw ConfigError(section.KeyPath("epsilon"), "must be >= 0");
  config.max_sweeps = static_cast<int>(section.GetInt("max_sweeps", config.max_sweeps));
  if (config.max_sweeps < 1) throw ConfigError(section.KeyPath("max_sweeps"), "must be >= 1");
  config.screening_threshold =
      section.GetDouble("screening_threshold", config.screening_threshold);
  if (!(config.screening_threshold >= 0.0)) {
    throw ConfigError(section.KeyPath("screening_threshold"), "must be >= 0");
  }
  config.exact_cap = static_cast<int>(section.GetInt("exact_cap", config.exact_cap));
  if (config.exact_cap < 1) throw ConfigError(section.KeyPath("exact_cap"), "must be >= 1");
  config.final_exhaustive_pass =
      section.GetBool("final_exhaustive_pass", config.final_exhaustive_pass);
  config.exhaustive_budget = section.GetInt("exhaustive_budget", config.exhaustive_budget);
  section.RejectUnknownKeys();
  return config;
}

ConfigSection FormatSolverConfig(const SolverConfig& config, const std::string& name) {
  ConfigSection out(name, {});
  std::ostringstream eps;
  eps.precision(17);
  eps << config.epsilon;
  std::ostringstream screen;
  screen.precision(17);
  screen << config.screening_threshold;
  out.Set("seed", std::to_string(config.seed));
  out.Set("epsilon", eps.str());
  out.Set("max_sweeps", std::to_string(config.max_sweeps));
  out.Set("screening_threshold", screen.str());
  out.Set("exact_cap", std::to_string(config.exact_cap));
  out.Set("final_exhaustive_pass", config.final_exhaustive_pass ? "true" : "false");
  out.Set("exhaustive_budget", std::to_string(config.exhaustive_budget));
  return out;
}

Partition LouvainProject(const PairVector& q, const SolverConfig& config,
                         SolveStats* stats) {
  const NodeId n = q.n();
  if (n <= 1) return Partition::Singletons(n);
  const double scale = Norm(q) * std::sqrt(static_cast<double>(NumPairs(n)));
  if (!(scale > 0.0)) {
    if (stats != nullptr) stats->objective = 0.0;
    return Partition::Singletons(n);
  }
  const double min_gain = config.epsilon * scale;
  std::mt19937_64 rng(config.seed);

  LocalMoveState state(q);
  std::vector<CommunityId> level_of(n);
  std::iota(level_of.begin(), level_of.end(), 0);
  int levels = 0;
  while (true) {
    const int64_t moves = state.RunLocalMoves(rng, config, min_gain, false, stats);
    ++levels;
    RecordDrift(stats, state.Objective(), state.RecomputeObjective());
    if (moves == 0 || state.num_communities() == state.n()) break;
    const Partition level_partition = state.ToPartition();
    for (NodeId v = 0; v < n; ++v) level_of[v] = level_partition.community(level_of[v]);
    state = state.Aggregate();
    RecordDrift(stats, state.Objective(), state.RecomputeObjective());
  }
  std::vector<int> labels(n);
  for (NodeId v = 0; v < n; ++v) labels[v] = state.community(level_of[v]);
  Partition result(labels);
  double tracked = state.Objective();

  if (config.final_exhaustive_pass &&
      static_cast<int64_t>(n) * result.num_communities() <= config.exhaustive_budget) {
    LocalMoveState fine(q, result);
    const double start = fine.Objective();
    const int64_t before = stats != nullptr ? stats->moves : 0;
    fine.RunLocalMoves(rng, config, min_gain, true, stats);
    if (stats != nullptr) {
      stats->exhaustive_pass_run = true;
      stats->exhaustive_moves = stats->moves - before;
    }
    tracked += fine.Objective() - start;
    result = fine.ToPartition();
  }
  const double exact = InnerWithPartition(q, result);
  RecordDrift(stats, tracked, exact);
  if (stats != nullptr) {
    stats->levels = levels;
    stats->objective = tracked;
  }
  return result;
}

}  // namespace projcd
