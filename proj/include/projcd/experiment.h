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

// Batched generate -> query -> project -> evaluate runs, and a grid search
// over linear-combination coefficients.
//
// Experiment config:
//   [experiment]  name, repeats, seed, workers
//   [generator]   see generators.h
//   [solver]      see solver.h
//   [query.<id>]  one section per query, see query_spec.h
//
// Grid-search config:
//   [grid_search] name, seed, workers, training, validation, c_a,
//                 cj = <start>:<stop>:<step> | <v1>, <v2>, ...   (same for cd)
//                 heuristic, strategy
//   [generator]   training graphs (and validation unless overridden)
//   [validation_generator]  optional
//   [solver]

#ifndef PROJCD_EXPERIMENT_H_
#define PROJCD_EXPERIMENT_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "projcd/config.h"
#include "projcd/generators.h"
#include "projcd/query_spec.h"
#include "projcd/solver.h"

namespace projcd {

struct ExperimentPlan {
  std::string name = "experiment";
  GeneratorSpec generator;
  std::vector<QuerySpec> queries;
  int repeats = 1;
  uint64_t seed = 0;
  int workers = 1;
  SolverConfig solver;
};

ExperimentPlan ParseExperimentPlan(const Config& config);
Config FormatExperimentPlan(const ExperimentPlan& plan);

struct RunRow {
  std::string query;
  int query_index = 0;
  int sample = 0;
  uint64_t graph_seed = 0;
  uint64_t solver_seed = 0;
  bool ok = false;
  std::string error;
  NodeId n = 0;
  int64_t m = 0;
  NodeId isolated = 0;
  bool connected = false;
  int64_t capped_pairs = 0;
  DetectionResult result;
  std::optional<double> query_latitude;
  double query_ms = 0.0;
  double solve_ms = 0.0;
};

struct BoxStats {
  int count = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

// Quartiles by linear interpolation between order statistics.
BoxStats Summarize(std::vector<double> values);

struct CellSummary {
  std::string query;
  int runs = 0;
  int failures = 0;
  BoxStats rho;
  BoxStats granularity_error;
  BoxStats abs_granularity_error;
  BoxStats excess_ratio;
  // Runs whose detected clustering is farther from the query than the
  // planted one, and the worst such ratio.
  int excess_count = 0;
  double max_excess = 0.0;
};

struct ExperimentResult {
  std::vector<RunRow> rows;  // ordered by (sample, query)
  std::vector<CellSummary> cells;
};

// Deterministic per-sample seeds.
uint64_t GraphSeed(uint64_t master, int sample);
uint64_t SolverSeed(uint64_t graph_seed);

// Measures mean planted latitude and mean correlation distance of a query
// over `samples` pilot graphs drawn from a separate seed stream.
HeuristicInputs EstimateHeuristicInputs(const GeneratorSpec& generator,
                                        const QuerySpec& query, int samples,
                                        uint64_t master_seed);

// One run over a given graph. Failures are captured in the row.
RunRow RunOne(const GeneratedGraph& sample, const QuerySpec& query,
              const SolverConfig& solver, const std::optional<HeuristicInputs>& estimates);

ExperimentResult RunExperiment(const ExperimentPlan& plan);

std::vector<CellSummary> SummarizeRows(const std::vector<RunRow>& rows,
                                       const std::vector<QuerySpec>& queries);

std::string RowsToCsv(const std::vector<RunRow>& rows);
std::string RowsToJson(const std::vector<RunRow>& rows);
std::string SummaryToCsv(const std::vector<CellSummary>& cells);
std::string SummaryTable(const std::vector<CellSummary>& cells);

// Runs `task(i)` for i in [0, count) on up to `workers` threads.
void ParallelFor(int count, int workers, const std::function<void(int)>& task);

struct GridSearchPlan {
  std::string name = "grid_search";
  GeneratorSpec generator;
  std::optional<GeneratorSpec> validation_generator;
  std::vector<double> cj_grid;
  std::vector<double> cd_grid;
  double c_a = 1.0;
  int training = 15;
  int validation = 20;
  uint64_t seed = 0;
  int workers = 1;
  HeuristicSpec heuristic{HeuristicMode::kExact};
  SolverConfig solver;
};

// c_j in 0, 0.1, ..., 1 and c_d in -6, -5.5, ..., 0.
std::vector<double> DefaultCjGrid();
std::vector<double> DefaultCdGrid();
// `start:stop:step` (inclusive) or a comma-separated list.
std::vector<double> ParseGrid(const std::string& text);

GridSearchPlan ParseGridSearchPlan(const Config& config);

struct GridCell {
  double c_j = 0.0;
  double c_d = 0.0;
  double median_rho = 0.0;
  double mean_rho = 0.0;
  int n_runs = 0;
};

struct GridSearchResult {
  std::vector<GridCell> heatmap;  // c_j outer, c_d inner, grid order
  GridCell best;
  std::vector<double> training_rho;  // winner, per training graph
  std::vector<double> validation_rho;
  double validation_median = 0.0;
  double validation_mean = 0.0;
};

// Winner: largest median rho, then largest mean rho, then earliest grid cell.
GridSearchResult RunGridSearch(const GridSearchPlan& plan);

std::string HeatmapToCsv(const std::vector<GridCell>& heatmap);
std::string GridReport(const GridSearchResult& result);

}  // namespace projcd

#endif  // PROJCD_EXPERIMENT_H_
