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

#include "projcd/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "projcd/errors.h"
#include "projcd/geometry.h"

namespace projcd {
namespace {

constexpr uint64_t kPilotStream = 0x7069'6c6f'7473'0001ULL;

double MillisecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string Num(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

std::string Opt(const std::optional<double>& x) { return x ? Num(*x) : ""; }

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json JsonOpt(const std::optional<double>& x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

int PositiveInt(const ConfigSection& section, const char* key, int fallback) {
  const int64_t v = section.GetInt(key, fallback);
  if (v < 1 || v > 1'000'000) throw ConfigError(section.KeyPath(key), "must be >= 1");
  return static_cast<int>(v);
}

uint64_t ParseSeed(const ConfigSection& section, const char* key) {
  if (!section.Has(key)) return 0;
  const std::string text = section.GetString(key);
  try {
    size_t used = 0;
    const uint64_t seed = std::stoull(text, &used);
    if (used == text.size()) return seed;
  } catch (const std::exception&) {
  }
  throw ConfigError(section.KeyPath(key), "expected an unsigned integer");
}

}  // namespace

uint64_t GraphSeed(uint64_t master, int sample) {
  return SampleSeed(master, static_cast<uint64_t>(sample));
}

uint64_t SolverSeed(uint64_t graph_seed) { return SampleSeed(graph_seed, 0x501e); }

ExperimentPlan ParseExperimentPlan(const Config& config) {
  ExperimentPlan plan;
  if (config.HasSection("experiment")) {
    const ConfigSection& section = config.Section("experiment");
    plan.name = section.GetString("name", plan.name);
    plan.repeats = PositiveInt(section, "repeats", plan.repeats);
    plan.seed = ParseSeed(section, "seed");
    plan.workers = PositiveInt(section, "workers", plan.workers);
    section.RejectUnknownKeys();
  }
  plan.generator = ParseGeneratorSpec(config.Section("generator"));
  if (config.HasSection("solver")) plan.solver = ParseSolverConfig(config.Section("solver"));
  for (const ConfigSection* section : config.SectionsWithPrefix("query.")) {
    plan.queries.push_back(ParseQuerySpec(*section));
  }
  if (plan.queries.empty()) throw ConfigError("query", "no [query.<id>] sections");
  for (const ConfigSection& section : config.sections()) {
    const std::string& name = section.name();
    if (name != "experiment" && name != "generator" && name != "solver" &&
        !name.starts_with("query.")) {
      throw ConfigError(name.empty() ? "(top level)" : name, "unknown section");
    }
  }
  return plan;
}

Config FormatExperimentPlan(const ExperimentPlan& plan) {
  Config config;
  ConfigSection head("experiment", {});
  head.Set("name", plan.name);
  head.Set("repeats", std::to_string(plan.repeats));
  head.Set("seed", std::to_string(plan.seed));
  head.Set("workers", std::to_string(plan.workers));
  config.AddSection(head);
  config.AddSection(FormatGeneratorSpec(plan.generator, "generator"));
  config.AddSection(FormatSolverConfig(plan.solver, "solver"));
  for (const QuerySpec& q : plan.queries) config.AddSection(FormatQuerySpec(q, "query." + q.name));
  return config;
}

BoxStats Summarize(std::vector<double> values) {
  BoxStats s;
  s.count = static_cast<int>(values.size());
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  auto quantile = [&values](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const size_t lo = static_cast<size_t>(std::floor(pos));
    const size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  s.min = values.front();
  s.max = values.back();
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  return s;
}

HeuristicInputs EstimateHeuristicInputs(const GeneratorSpec& generator, const QuerySpec& query,
                                        int samples, uint64_t master_seed) {
  double lambda_sum = 0.0;
  double theta_sum = 0.0;
  int used = 0;
  for (int i = 0; i < samples; ++i) {
    try {
      const GeneratedGraph pilot =
          Generate(generator, SampleSeed(master_seed ^ kPilotStream, static_cast<uint64_t>(i)));
      const HeuristicInputs inputs =
          MeasureHeuristicInputs(BuildBaseQuery(pilot.graph, query), pilot.planted);
      lambda_sum += inputs.lambda_t;
      theta_sum += inputs.theta;
      ++used;
    } catch (const DomainError&) {
    }
  }
  if (used == 0) throw DegenerateError("no pilot sample yielded heuristic inputs");
  return {lambda_sum / used, theta_sum / used};
}

RunRow RunOne(const GeneratedGraph& sample, const QuerySpec& query, const SolverConfig& solver,
              const std::optional<HeuristicInputs>& estimates) {
  RunRow row;
  row.query = query.name;
  row.solver_seed = solver.seed;
  row.n = sample.graph.n();
  row.m = sample.graph.num_edges();
  row.isolated = sample.graph.NumIsolated();
  row.connected = sample.graph.IsConnected();
  row.capped_pairs = sample.capped_pairs;
  try {
    const auto query_start = std::chrono::steady_clock::now();
    const PairVector base = BuildBaseQuery(sample.graph, query);
    const PairVector q = ApplyHeuristicSpec(base, query.heuristic, &sample.planted, estimates);
    row.query_ms = MillisecondsSince(query_start);
    try {
      row.query_latitude = Latitude(q);
    } catch (const DegenerateError&) {
    }
    const auto solve_start = std::chrono::steady_clock::now();
    const Partition detected = LouvainProject(q, solver);
    row.solve_ms = MillisecondsSince(solve_start);
    row.result = Evaluate(q, detected, &sample.planted);
    row.result.partition = Partition();
    row.ok = true;
  } catch (const DomainError& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

void ParallelFor(int count, int workers, const std::function<void(int)>& task) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

ExperimentResult RunExperiment(const ExperimentPlan& plan) {
  if (plan.repeats < 1) throw ParameterError("repeats must be >= 1");
  if (plan.queries.empty()) throw ParameterError("experiment needs at least one query");
  const int num_queries = static_cast<int>(plan.queries.size());
  std::vector<std::optional<HeuristicInputs>> estimates(num_queries);
  for (int j = 0; j < num_queries; ++j) {
    const HeuristicSpec& h = plan.queries[j].heuristic;
    if (h.mode == HeuristicMode::kMeans) {
      estimates[j] =
          EstimateHeuristicInputs(plan.generator, plan.queries[j], h.pilot_samples, plan.seed);
    }
  }
  ExperimentResult result;
  result.rows.resize(static_cast<size_t>(plan.repeats) * num_queries);
  ParallelFor(plan.repeats, plan.workers, [&](int sample) {
    const uint64_t graph_seed = GraphSeed(plan.seed, sample);
    SolverConfig solver = plan.solver;
    solver.seed = SolverSeed(graph_seed);
    std::optional<GeneratedGraph> graph;
    std::string generation_error;
    try {
      graph = Generate(plan.generator, graph_seed);
    } catch (const DomainError& e) {
      generation_error = e.what();
    }
    for (int j = 0; j < num_queries; ++j) {
      RunRow row;
      if (graph) {
        row = RunOne(*graph, plan.queries[j], solver, estimates[j]);
      } else {
        row.query = plan.queries[j].name;
        row.solver_seed = solver.seed;
        row.error = "generation failed: " + generation_error;
      }
      row.query_index = j;
      row.sample = sample;
      row.graph_seed = graph_seed;
      result.rows[static_cast<size_t>(sample) * num_queries + j] = std::move(row);
    }
  });
  result.cells = SummarizeRows(result.rows, plan.queries);
  return result;
}

std::vector<CellSummary> SummarizeRows(const std::vector<RunRow>& rows,
                                       const std::vector<QuerySpec>& queries) {
  std::vector<CellSummary> cells;
  for (size_t j = 0; j < queries.size(); ++j) {
    CellSummary cell;
    cell.query = queries[j].name;
    std::vector<double> rho, error, abs_error, excess;
    for (const RunRow& row : rows) {
      if (row.query_index != static_cast<int>(j)) continue;
      ++cell.runs;
      if (!row.ok) {
        ++cell.failures;
        continue;
      }
      const DetectionResult& r = row.result;
      if (r.rho) rho.push_back(*r.rho);
      if (r.granularity_error) {
        error.push_back(*r.granularity_error);
        abs_error.push_back(std::abs(*r.granularity_error));
      }
      if (r.excess_ratio) {
        excess.push_back(*r.excess_ratio);
        if (*r.excess_ratio > 0.0) {
          ++cell.excess_count;
          cell.max_excess = std::max(cell.max_excess, *r.excess_ratio);
        }
      }
    }
    cell.rho = Summarize(rho);
    cell.granularity_error = Summarize(error);
    cell.abs_granularity_error = Summarize(abs_error);
    cell.excess_ratio = Summarize(excess);
    cells.push_back(cell);
  }
  return cells;
}

std::string RowsToCsv(const std::vector<RunRow>& rows) {
  std::ostringstream out;
  out << "query,sample,graph_seed,solver_seed,status,error,n,m,isolated,connected,"
         "capped_pairs,num_communities,objective,rho,latitude_C,latitude_T,d_a_qC,d_a_qT,"
         "d_cc_qT,granularity_error,excess_ratio,query_latitude,query_ms,solve_ms\n";
  for (const RunRow& row : rows) {
    const DetectionResult& r = row.result;
    out << CsvField(row.query) << ',' << row.sample << ',' << row.graph_seed << ','
        << row.solver_seed << ',' << (row.ok ? "ok" : "error") << ',' << CsvField(row.error)
        << ',' << row.n << ',' << row.m << ',' << row.isolated << ','
        << (row.connected ? 1 : 0) << ',' << row.capped_pairs << ',';
    if (row.ok) {
      out << r.num_communities << ',' << Num(r.objective);
    } else {
      out << ',';
    }
    out << ',' << Opt(r.rho) << ',' << Opt(r.latitude_c) << ',' << Opt(r.latitude_t) << ','
        << Opt(r.d_a_qc) << ',' << Opt(r.d_a_qt) << ',' << Opt(r.d_cc_qt) << ','
        << Opt(r.granularity_error) << ',' << Opt(r.excess_ratio) << ','
        << Opt(row.query_latitude) << ',' << Num(row.query_ms) << ',' << Num(row.solve_ms)
        << '\n';
  }
  return out.str();
}

std::string RowsToJson(const std::vector<RunRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const RunRow& row : rows) {
    const DetectionResult& r = row.result;
    nlohmann::json j;
    j["query"] = row.query;
    j["sample"] = row.sample;
    j["graph_seed"] = row.graph_seed;
    j["seed"] = row.solver_seed;
    j["status"] = row.ok ? "ok" : "error";
    if (!row.ok) j["error"] = row.error;
    j["n"] = row.n;
    j["m"] = row.m;
    j["isolated"] = row.isolated;
    j["connected"] = row.connected;
    j["capped_pairs"] = row.capped_pairs;
    if (row.ok) {
      j["num_communities"] = r.num_communities;
      j["objective"] = r.objective;
    }
    j["rho"] = JsonOpt(r.rho);
    j["latitude_C"] = JsonOpt(r.latitude_c);
    j["latitude_T"] = JsonOpt(r.latitude_t);
    j["d_a_qC"] = JsonOpt(r.d_a_qc);
    j["d_a_qT"] = JsonOpt(r.d_a_qt);
    j["d_cc_qT"] = JsonOpt(r.d_cc_qt);
    j["granularity_error"] = JsonOpt(r.granularity_error);
    j["excess_ratio"] = JsonOpt(r.excess_ratio);
    j["query_latitude"] = JsonOpt(row.query_latitude);
    j["query_ms"] = row.query_ms;
    j["solve_ms"] = row.solve_ms;
    out.push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

std::string SummaryToCsv(const std::vector<CellSummary>& cells) {
  std::ostringstream out;
  out << "query,metric,count,min,q1,median,q3,max,mean\n";
  for (const CellSummary& c : cells) {
    const std::pair<const char*, const BoxStats*> metrics[] = {
        {"rho", &c.rho},
        {"granularity_error", &c.granularity_error},
        {"abs_granularity_error", &c.abs_granularity_error},
        {"excess_ratio", &c.excess_ratio}};
    for (const auto& [name, s] : metrics) {
      out << CsvField(c.query) << ',' << name << ',' << s->count << ',' << Num(s->min) << ','
          << Num(s->q1) << ',' << Num(s->median) << ',' << Num(s->q3) << ',' << Num(s->max)
          << ',' << Num(s->mean) << '\n';
    }
  }
  return out.str();
}

std::string SummaryTable(const std::vector<CellSummary>& cells) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-24s %5s %5s %9s %9s %9s %11s %9s\n", "query", "runs",
                "fail", "rho_med", "rho_q1", "rho_min", "gran_med", "excess");
  out << line;
  for (const CellSummary& c : cells) {
    std::snprintf(line, sizeof(line), "%-24s %5d %5d %9.4f %9.4f %9.4f %+11.4f %4d/%-4d\n",
                  c.query.c_str(), c.runs, c.failures, c.rho.median, c.rho.q1, c.rho.min,
                  c.granularity_error.median, c.excess_count, c.excess_ratio.count);
    out << line;
  }
  return out.str();
}

}  // namespace projcd
