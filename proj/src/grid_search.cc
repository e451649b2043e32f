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

#include <cmath>
#include <cstdio>
#include <sstream>

#include "projcd/errors.h"
#include "projcd/experiment.h"

namespace projcd {
namespace {

constexpr uint64_t kValidationStream = 0x7661'6c69'6461'7465ULL;

double ParseValue(const std::string& text) {
  size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument(text);
  return v;
}

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  return s.substr(begin, s.find_last_not_of(" \t") - begin + 1);
}

std::vector<GeneratedGraph> GenerateSet(const GeneratorSpec& spec, int count, uint64_t master,
                                        int workers, std::vector<uint64_t>& seeds) {
  std::vector<GeneratedGraph> graphs(count);
  seeds.resize(count);
  for (int i = 0; i < count; ++i) seeds[i] = GraphSeed(master, i);
  ParallelFor(count, workers, [&](int i) { graphs[i] = Generate(spec, seeds[i]); });
  return graphs;
}

std::vector<double> EvaluateCell(const std::vector<GeneratedGraph>& graphs,
                                 const std::vector<uint64_t>& seeds, const GridSearchPlan& plan,
                                 double c_j, double c_d) {
  QuerySpec query;
  query.name = "linear";
  query.method = QueryMethod::kLinearCombination;
  query.c_a = plan.c_a;
  query.c_j = c_j;
  query.c_d = c_d;
  query.heuristic = plan.heuristic;
  std::vector<double> rho;
  for (size_t i = 0; i < graphs.size(); ++i) {
    SolverConfig solver = plan.solver;
    solver.seed = SolverSeed(seeds[i]);
    const RunRow row = RunOne(graphs[i], query, solver, std::nullopt);
    if (row.ok && row.result.rho) rho.push_back(*row.result.rho);
  }
  return rho;
}

}  // namespace

std::vector<double> DefaultCjGrid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

std::vector<double> DefaultCdGrid() {
  std::vector<double> grid;
  for (int i = 0; i <= 12; ++i) grid.push_back(-6.0 + i / 2.0);
  return grid;
}

std::vector<double> ParseGrid(const std::string& text) {
  std::vector<double> grid;
  try {
    if (text.find(':') != std::string::npos) {
      std::vector<double> parts;
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ':')) parts.push_back(ParseValue(Trim(item)));
      if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
        throw ParameterError("grid range must be <start>:<stop>:<step> with step > 0");
      }
      const int64_t steps =
          static_cast<int64_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
      for (int64_t i = 0; i <= steps; ++i) grid.push_back(parts[0] + i * parts[2]);
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = Trim(item);
        if (!item.empty()) grid.push_back(ParseValue(item));
      }
    }
  } catch (const std::invalid_argument&) {
    throw ParameterError("invalid grid '" + text + "'");
  } catch (const std::out_of_range&) {
    throw ParameterError("invalid grid '" + text + "'");
  }
  if (grid.empty()) throw ParameterError("grid must not be empty");
  return grid;
}

GridSearchPlan ParseGridSearchPlan(const Config& config) {
  GridSearchPlan plan;
  plan.cj_grid = DefaultCjGrid();
  plan.cd_grid = DefaultCdGrid();
  if (config.HasSection("grid_search")) {
    const ConfigSection& s = config.Section("grid_search");
    plan.name = s.GetString("name", plan.name);
    if (s.Has("seed")) {
      const std::string text = s.GetString("seed");
      try {
        plan.seed = std::stoull(text);
      } catch (const std::exception&) {
        throw ConfigError(s.KeyPath("seed"), "expected an unsigned integer");
      }
    }
    plan.workers = static_cast<int>(s.GetInt("workers", plan.workers));
    plan.training = static_cast<int>(s.GetInt("training", plan.training));
    plan.validation = static_cast<int>(s.GetInt("validation", plan.validation));
    if (plan.workers < 1) throw ConfigError(s.KeyPath("workers"), "must be >= 1");
    if (plan.training < 1) throw ConfigError(s.KeyPath("training"), "must be >= 1");
    if (plan.validation < 0) throw ConfigError(s.KeyPath("validation"), "must be >= 0");
    plan.c_a = s.GetDouble("c_a", plan.c_a);
    for (const char* key : {"cj", "cd"}) {
      if (!s.Has(key)) continue;
      try {
        (key[1] == 'j' ? plan.cj_grid : plan.cd_grid) = ParseGrid(s.GetString(key));
      } catch (const ParameterError& e) {
        throw ConfigError(s.KeyPath(key), e.what());
      }
    }
    try {
      const HeuristicSpec h = ParseHeuristicMode(s.GetString("heuristic", "exact"));
      if (h.mode == HeuristicMode::kMeans) {
        throw ParameterError("'means' is not supported in grid search");
      }
      plan.heuristic = h;
      plan.heuristic.strategy = ParseStrategy(s.GetString("strategy", "heuristic"));
    } catch (const ParameterError& e) {
      throw ConfigError(s.KeyPath("heuristic"), e.what());
    }
    s.RejectUnknownKeys();
  }
  plan.generator = ParseGeneratorSpec(config.Section("generator"));
  if (config.HasSection("validation_generator")) {
    plan.validation_generator = ParseGeneratorSpec(config.Section("validation_generator"));
  }
  if (config.HasSection("solver")) plan.solver = ParseSolverConfig(config.Section("solver"));
  for (const ConfigSection& section : config.sections()) {
    const std::string& name = section.name();
    if (name != "grid_search" && name != "generator" && name != "validation_generator" &&
        name != "solver") {
      throw ConfigError(name.empty() ? "(top level)" : name, "unknown section");
    }
  }
  return plan;
}

GridSearchResult RunGridSearch(const GridSearchPlan& plan) {
  if (plan.training < 1) throw ParameterError("grid search needs training samples");
  if (plan.cj_grid.empty() || plan.cd_grid.empty()) throw ParameterError("empty grid");
  std::vector<uint64_t> train_seeds;
  const std::vector<GeneratedGraph> training =
      GenerateSet(plan.generator, plan.training, plan.seed, plan.workers, train_seeds);

  const int cd_count = static_cast<int>(plan.cd_grid.size());
  const int cells = static_cast<int>(plan.cj_grid.size()) * cd_count;
  GridSearchResult result;
  result.heatmap.resize(cells);
  std::vector<std::vector<double>> cell_rho(cells);
  ParallelFor(cells, plan.workers, [&](int c) {
    GridCell& cell = result.heatmap[c];
    cell.c_j = plan.cj_grid[c / cd_count];
    cell.c_d = plan.cd_grid[c % cd_count];
    cell_rho[c] = EvaluateCell(training, train_seeds, plan, cell.c_j, cell.c_d);
    const BoxStats s = Summarize(cell_rho[c]);
    cell.n_runs = s.count;
    cell.median_rho = s.median;
    cell.mean_rho = s.mean;
  });

  int best = -1;
  for (int c = 0; c < cells; ++c) {
    const GridCell& cell = result.heatmap[c];
    if (cell.n_runs == 0) continue;
    if (best < 0) {
      best = c;
      continue;
    }
    const GridCell& incumbent = result.heatmap[best];
    if (cell.median_rho > incumbent.median_rho ||
        (cell.median_rho == incumbent.median_rho && cell.mean_rho > incumbent.mean_rho)) {
      best = c;
    }
  }
  if (best < 0) throw DegenerateError("no grid cell produced a defined similarity");
  result.best = result.heatmap[best];
  result.training_rho = cell_rho[best];

  if (plan.validation > 0) {
    std::vector<uint64_t> validation_seeds;
    const std::vector<GeneratedGraph> validation =
        GenerateSet(plan.validation_generator.value_or(plan.generator), plan.validation,
                    plan.seed ^ kValidationStream, plan.workers, validation_seeds);
    result.validation_rho =
        EvaluateCell(validation, validation_seeds, plan, result.best.c_j, result.best.c_d);
    const BoxStats s = Summarize(result.validation_rho);
    result.validation_median = s.median;
    result.validation_mean = s.mean;
  }
  return result;
}

std::string HeatmapToCsv(const std::vector<GridCell>& heatmap) {
  std::ostringstream out;
  out << "c_j,c_d,median_rho,mean_rho,n_runs\n";
  char line[160];
  for (const GridCell& c : heatmap) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%d\n", c.c_j, c.c_d,
                  c.median_rho, c.mean_rho, c.n_runs);
    out << line;
  }
  return out.str();
}

std::string GridReport(const GridSearchResult& result) {
  std::ostringstream out;
  char line[200];
  std::snprintf(line, sizeof(line), "best c_j = %g, c_d = %g\n", result.best.c_j,
                result.best.c_d);
  out << line;
  std::snprintf(line, sizeof(line), "training:   median rho %.4f, mean rho %.4f (%d runs)\n",
                result.best.median_rho, result.best.mean_rho, result.best.n_runs);
  out << line;
  if (!result.validation_rho.empty()) {
    std::snprintf(line, sizeof(line), "validation: median rho %.4f, mean rho %.4f (%zu runs)\n",
                  result.validation_median, result.validation_mean,
                  result.validation_rho.size());
    out << line;
  }
  return out.str();
}

}  // namespace projcd
