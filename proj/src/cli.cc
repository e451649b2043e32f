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

#include "projcd/cli.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "projcd/config.h"
#include "projcd/errors.h"
#include "projcd/experiment.h"
#include "projcd/generators.h"
#include "projcd/geometry.h"
#include "projcd/io.h"
#include "projcd/query_spec.h"
#include "projcd/solver.h"

namespace projcd {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::optional<uint64_t> seed;
  std::string out = ".";
  std::optional<std::string> config;
  int workers = 1;
};

struct QueryFlags {
  std::optional<std::string> method;
  std::optional<double> gamma;
  std::optional<int> t;
  std::optional<std::string> isolated;
  std::optional<double> p_in;
  std::optional<double> p_out;
  std::optional<double> c_a;
  std::optional<double> c_j;
  std::optional<double> c_d;
  std::optional<double> c_1;
  std::optional<std::string> heuristic;
  std::optional<std::string> strategy;
};

struct GraphFlags {
  std::string graph;
  std::optional<std::string> planted;
  bool one_based = false;
  bool tokens = false;
};

void AddSeed(CLI::App* app, CommonFlags& flags) {
  app->add_option("--seed", flags.seed, "Random seed (drawn and printed when omitted)");
}

void AddOut(CLI::App* app, CommonFlags& flags) {
  app->add_option("--out", flags.out, "Output directory")->capture_default_str();
}

void AddQueryFlags(CLI::App* app, QueryFlags& q) {
  app->add_option("--method", q.method,
                  "er-modularity | cl-modularity | markov | correlation-clustering | ppm | "
                  "linear");
  app->add_option("--gamma", q.gamma, "Modularity resolution");
  app->add_option("--t", q.t, "Markov time");
  app->add_option("--isolated", q.isolated, "Isolated nodes in Markov queries: error | ignore");
  app->add_option("--pin", q.p_in, "PPM intra probability");
  app->add_option("--pout", q.p_out, "PPM inter probability");
  app->add_option("--ca", q.c_a, "Adjacency coefficient");
  app->add_option("--cj", q.c_j, "Jaccard coefficient");
  app->add_option("--cd", q.c_d, "Degree-product coefficient");
  app->add_option("--c1", q.c_1, "Constant coefficient");
  app->add_option("--heuristic", q.heuristic,
                  "off | exact | fixed:<lambda_t>,<theta> | means:<k>");
  app->add_option("--strategy", q.strategy, "heuristic | distance_min | match_planted");
}

void AddGraphFlags(CLI::App* app, GraphFlags& g, bool planted) {
  app->add_option("--graph", g.graph, "Edge-list file")->required();
  if (planted) app->add_option("--planted", g.planted, "Planted membership file");
  app->add_flag("--one-based", g.one_based, "Integer node ids start at 1");
  app->add_flag("--tokens", g.tokens, "Treat node ids as arbitrary tokens");
}

uint64_t ResolveSeed(const CommonFlags& flags, std::ostream& out) {
  if (flags.seed) return *flags.seed;
  std::random_device device;
  const uint64_t seed = (static_cast<uint64_t>(device()) << 32) ^ device();
  out << "seed: " << seed << "\n";
  return seed;
}

std::optional<Config> LoadConfig(const CommonFlags& flags) {
  if (!flags.config) return std::nullopt;
  return Config::ReadFile(*flags.config);
}

QuerySpec ResolveQuery(const QueryFlags& flags, const std::optional<Config>& config) {
  QuerySpec spec;
  if (config && config->HasSection("query")) {
    spec = ParseQuerySpec(config->Section("query"));
  } else if (!flags.method) {
    throw UsageError("--method or a [query] config section is required");
  }
  try {
    if (flags.method) spec.method = ParseMethod(*flags.method);
    if (flags.heuristic) {
      const LatitudeStrategy strategy = spec.heuristic.strategy;
      spec.heuristic = ParseHeuristicMode(*flags.heuristic);
      spec.heuristic.strategy = strategy;
    }
    if (flags.strategy) spec.heuristic.strategy = ParseStrategy(*flags.strategy);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  if (flags.gamma) spec.gamma = *flags.gamma;
  if (flags.t) spec.t = *flags.t;
  if (flags.isolated) {
    if (*flags.isolated != "error" && *flags.isolated != "ignore") {
      throw UsageError("--isolated must be 'error' or 'ignore'");
    }
    spec.allow_isolated = *flags.isolated == "ignore";
  }
  if (flags.p_in) spec.p_in = *flags.p_in;
  if (flags.p_out) spec.p_out = *flags.p_out;
  if (flags.c_a) spec.c_a = *flags.c_a;
  if (flags.c_j) spec.c_j = *flags.c_j;
  if (flags.c_d) spec.c_d = *flags.c_d;
  if (flags.c_1) spec.c_1 = *flags.c_1;
  if (spec.method == QueryMethod::kMarkovStability && spec.t < 1) {
    throw UsageError("--t must be >= 1");
  }
  spec.name = MethodName(spec.method);
  return spec;
}

SolverConfig ResolveSolver(const std::optional<Config>& config) {
  if (config && config->HasSection("solver")) return ParseSolverConfig(config->Section("solver"));
  return {};
}

std::string JoinPath(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

void EnsureDir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory '" + dir + "': " + ec.message());
}

struct LoadedGraph {
  EdgeListData data;
  std::optional<Partition> planted;
};

LoadedGraph LoadGraph(const GraphFlags& flags) {
  ReadOptions options;
  options.one_based = flags.one_based;
  if (flags.tokens) options.mode = NodeIdMode::kTokens;
  LoadedGraph loaded;
  loaded.data = ReadEdgeListFile(flags.graph, options);
  if (flags.planted) {
    loaded.planted = ReadMembershipFile(*flags.planted, loaded.data.graph.n(), options,
                                        loaded.data.names ? &*loaded.data.names : nullptr);
  }
  return loaded;
}

std::string MembershipText(const Partition& c, const std::optional<NodeNames>& names) {
  std::ostringstream out;
  if (names) {
    for (NodeId i = 0; i < c.n(); ++i) out << names->names[i] << " " << c.community(i) << "\n";
  } else {
    WriteMembership(out, c);
  }
  return out.str();
}

nlohmann::json OptJson(const std::optional<double>& x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

nlohmann::json ResultJson(const DetectionResult& r) {
  nlohmann::json j;
  j["num_communities"] = r.num_communities;
  j["objective"] = r.objective;
  j["rho"] = OptJson(r.rho);
  j["latitude_C"] = OptJson(r.latitude_c);
  j["latitude_T"] = OptJson(r.latitude_t);
  j["d_a_qC"] = OptJson(r.d_a_qc);
  j["d_a_qT"] = OptJson(r.d_a_qt);
  j["d_cc_qT"] = OptJson(r.d_cc_qt);
  j["granularity_error"] = OptJson(r.granularity_error);
  j["excess_ratio"] = OptJson(r.excess_ratio);
  return j;
}

void PrintResult(const DetectionResult& r, std::ostream& out) {
  auto line = [&out](const char* key, const std::optional<double>& v) {
    if (v) out << key << ": " << *v << "\n";
  };
  out << "communities: " << r.num_communities << "\n";
  line("d_a(q, C)", r.d_a_qc);
  line("latitude(C)", r.latitude_c);
  line("rho(C, T)", r.rho);
  line("granularity error", r.granularity_error);
  line("latitude(T)", r.latitude_t);
  line("d_a(q, T)", r.d_a_qt);
  line("d_CC(q, T)", r.d_cc_qt);
  line("excess ratio", r.excess_ratio);
}

double MillisecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

// Builds the heuristic-corrected query; kExact needs the planted partition.
PairVector BuildQuery(const Graph& g, const QuerySpec& spec, const std::optional<Partition>& t) {
  if (spec.heuristic.mode == HeuristicMode::kMeans) {
    throw UsageError("--heuristic means:<k> is only available in experiments");
  }
  if (spec.heuristic.mode == HeuristicMode::kExact && !t) {
    throw UsageError("--heuristic exact requires --planted");
  }
  const PairVector base = BuildBaseQuery(g, spec);
  return ApplyHeuristicSpec(base, spec.heuristic, t ? &*t : nullptr);
}

int CmdGenerate(const CommonFlags& common, const std::string& family,
                const std::map<std::string, std::string>& values, const std::string& name_flag,
                std::ostream& out) {
  const std::optional<Config> config = LoadConfig(common);
  GeneratorSpec spec;
  if (config && config->HasSection("generator")) {
    spec = ParseGeneratorSpec(config->Section("generator"));
  } else {
    if (family.empty()) throw UsageError("--family or a [generator] config section is required");
    std::vector<std::pair<std::string, std::string>> entries = {{"family", family}};
    GeneratorFamily parsed;
    try {
      parsed = ParseFamily(family);
    } catch (const ParameterError& e) {
      throw UsageError(e.what());
    }
    for (const auto& [key, value] : values) {
      std::string mapped = key;
      if (parsed == GeneratorFamily::kRingOfCliques) {
        if (key == "k") mapped = "cliques";
        if (key == "s") mapped = "clique_size";
      }
      entries.emplace_back(mapped, value);
    }
    try {
      spec = ParseGeneratorSpec(ConfigSection("generator", entries));
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  }
  const uint64_t seed = ResolveSeed(common, out);
  const GeneratedGraph sample = Generate(spec, seed);
  const std::string name = name_flag.empty() ? FamilyName(spec.family) : name_flag;
  EnsureDir(common.out);
  std::ostringstream edges;
  WriteEdgeList(edges, sample.graph);
  std::ostringstream membership;
  WriteMembership(membership, sample.planted);
  Config meta;
  meta.AddSection(FormatGeneratorSpec(spec, "generator"));
  ConfigSection info("sample", {});
  info.Set("seed", std::to_string(seed));
  info.Set("n", std::to_string(sample.graph.n()));
  info.Set("m", std::to_string(sample.graph.num_edges()));
  info.Set("communities", std::to_string(sample.planted.num_communities()));
  info.Set("isolated", std::to_string(sample.graph.NumIsolated()));
  info.Set("connected", sample.graph.IsConnected() ? "true" : "false");
  info.Set("capped_pairs", std::to_string(sample.capped_pairs));
  meta.AddSection(info);
  AtomicWriteFile(JoinPath(common.out, name + ".edges"), edges.str());
  AtomicWriteFile(JoinPath(common.out, name + ".membership"), membership.str());
  AtomicWriteFile(JoinPath(common.out, name + ".meta"), meta.ToString());
  out << "wrote " << JoinPath(common.out, name) << ".{edges,membership,meta}: n = "
      << sample.graph.n() << ", m = " << sample.graph.num_edges()
      << ", communities = " << sample.planted.num_communities() << "\n";
  if (sample.capped_pairs > 0) {
    out << "warning: " << sample.capped_pairs << " pair probabilities clamped to 1\n";
  }
  return kExitOk;
}

int CmdDetect(const CommonFlags& common, const QueryFlags& query_flags,
              const GraphFlags& graph_flags, const std::string& name, std::ostream& out) {
  const std::optional<Config> config = LoadConfig(common);
  const QuerySpec spec = ResolveQuery(query_flags, config);
  SolverConfig solver = ResolveSolver(config);
  const LoadedGraph loaded = LoadGraph(graph_flags);
  const Graph& g = loaded.data.graph;
  if (spec.heuristic.mode == HeuristicMode::kMeans) {
    throw UsageError("--heuristic means:<k> is only available in experiments");
  }
  if (spec.heuristic.mode == HeuristicMode::kExact && !loaded.planted) {
    throw UsageError("--heuristic exact requires --planted");
  }
  solver.seed = ResolveSeed(common, out);
  const auto query_start = std::chrono::steady_clock::now();
  const PairVector q = BuildQuery(g, spec, loaded.planted);
  const double query_ms = MillisecondsSince(query_start);
  const auto solve_start = std::chrono::steady_clock::now();
  SolveStats stats;
  const Partition detected = LouvainProject(q, solver, &stats);
  const double solve_ms = MillisecondsSince(solve_start);
  const DetectionResult result =
      Evaluate(q, detected, loaded.planted ? &*loaded.planted : nullptr);
  nlohmann::json j = ResultJson(result);
  j["method"] = MethodName(spec.method);
  j["heuristic"] = FormatHeuristicMode(spec.heuristic);
  j["n"] = g.n();
  j["m"] = g.num_edges();
  j["seed"] = solver.seed;
  j["query_ms"] = query_ms;
  j["solve_ms"] = solve_ms;
  EnsureDir(common.out);
  AtomicWriteFile(JoinPath(common.out, name + ".membership"),
                  MembershipText(detected, loaded.data.names));
  AtomicWriteFile(JoinPath(common.out, name + ".json"), j.dump(2) + "\n");
  PrintResult(result, out);
  if (stats.sweep_cap_hits > 0) {
    out << "warning: sweep cap reached " << stats.sweep_cap_hits << " time(s)\n";
  }
  out << "wrote " << JoinPath(common.out, name) << ".{membership,json}\n";
  return kExitOk;
}

int CmdEvaluate(const CommonFlags& common, const QueryFlags& query_flags,
                const GraphFlags& graph_flags, const std::string& detected_path,
                const std::string& name, std::ostream& out) {
  const std::optional<Config> config = LoadConfig(common);
  const QuerySpec spec = ResolveQuery(query_flags, config);
  const LoadedGraph loaded = LoadGraph(graph_flags);
  ReadOptions options;
  options.one_based = graph_flags.one_based;
  const Partition detected =
      ReadMembershipFile(detected_path, loaded.data.graph.n(), options,
                         loaded.data.names ? &*loaded.data.names : nullptr);
  const PairVector q = BuildQuery(loaded.data.graph, spec, loaded.planted);
  const DetectionResult result =
      Evaluate(q, detected, loaded.planted ? &*loaded.planted : nullptr);
  nlohmann::json j = ResultJson(result);
  j["method"] = MethodName(spec.method);
  j["heuristic"] = FormatHeuristicMode(spec.heuristic);
  EnsureDir(common.out);
  AtomicWriteFile(JoinPath(common.out, name + ".json"), j.dump(2) + "\n");
  PrintResult(result, out);
  return kExitOk;
}

int CmdExperiment(const CommonFlags& common, bool workers_set, std::ostream& out) {
  if (!common.config) throw UsageError("experiment requires --config");
  ExperimentPlan plan = ParseExperimentPlan(*LoadConfig(common));
  if (common.seed) {
    plan.seed = *common.seed;
  } else if (!LoadConfig(common)->Section("experiment").Has("seed")) {
    plan.seed = ResolveSeed(common, out);
  }
  if (workers_set) plan.workers = common.workers;
  const ExperimentResult result = RunExperiment(plan);
  EnsureDir(common.out);
  AtomicWriteFile(JoinPath(common.out, plan.name + "_runs.csv"), RowsToCsv(result.rows));
  AtomicWriteFile(JoinPath(common.out, plan.name + "_runs.json"), RowsToJson(result.rows));
  AtomicWriteFile(JoinPath(common.out, plan.name + "_summary.csv"),
                  SummaryToCsv(result.cells));
  AtomicWriteFile(JoinPath(common.out, plan.name + "_plan.ini"),
                  FormatExperimentPlan(plan).ToString());
  out << SummaryTable(result.cells);
  out << "wrote " << JoinPath(common.out, plan.name)
      << "_{runs.csv,runs.json,summary.csv,plan.ini}\n";
  return kExitOk;
}

int CmdGridSearch(const CommonFlags& common, bool workers_set, std::ostream& out) {
  if (!common.config) throw UsageError("grid-search requires --config");
  const Config config = *LoadConfig(common);
  GridSearchPlan plan = ParseGridSearchPlan(config);
  if (common.seed) {
    plan.seed = *common.seed;
  } else if (!config.HasSection("grid_search") || !config.Section("grid_search").Has("seed")) {
    plan.seed = ResolveSeed(common, out);
  }
  if (workers_set) plan.workers = common.workers;
  const GridSearchResult result = RunGridSearch(plan);
  EnsureDir(common.out);
  AtomicWriteFile(JoinPath(common.out, plan.name + "_heatmap.csv"),
                  HeatmapToCsv(result.heatmap));
  const std::string report = GridReport(result);
  AtomicWriteFile(JoinPath(common.out, plan.name + "_report.txt"), report);
  out << report;
  out << "wrote " << JoinPath(common.out, plan.name) << "_{heatmap.csv,report.txt}\n";
  return kExitOk;
}

int CmdRingDemo(const CommonFlags& common, int k, int s, double gamma, std::ostream& out) {
  const uint64_t seed = ResolveSeed(common, out);
  const GeneratedGraph ring = RingOfCliques(k, s);
  const PairVector base = ErModularityQuery(ring.graph, gamma);
  struct Variant {
    const char* label;
    std::optional<LatitudeStrategy> strategy;
  };
  const Variant variants[] = {{"none", std::nullopt},
                              {"match_planted", LatitudeStrategy::kMatchPlanted},
                              {"distance_min", LatitudeStrategy::kDistanceMinimizing},
                              {"heuristic", LatitudeStrategy::kGranularityHeuristic}};
  SolverConfig solver;
  solver.seed = seed;
  std::ostringstream csv;
  csv << "strategy,communities,granularity_error,rho,latitude_q\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%-14s %11s %11s %8s %10s\n", "strategy", "communities",
                "gran_error", "rho", "lat(q)");
  out << "ring of " << k << " cliques of size " << s << ", ER-modularity gamma = " << gamma
      << ", latitude(T) = " << PartitionLatitude(ring.planted) << "\n"
      << line;
  for (const Variant& v : variants) {
    const PairVector q =
        v.strategy ? ApplyGranularityHeuristic(base, ring.planted, *v.strategy) : base;
    const Partition c = LouvainProject(q, solver);
    const DetectionResult r = Evaluate(q, c, &ring.planted);
    std::snprintf(line, sizeof(line), "%-14s %11d %+11.4f %8.4f %10.4f\n", v.label,
                  r.num_communities, r.granularity_error.value_or(NAN), r.rho.value_or(NAN),
                  Latitude(q));
    out << line;
    csv << v.label << ',' << r.num_communities << ',' << r.granularity_error.value_or(NAN)
        << ',' << r.rho.value_or(NAN) << ',' << Latitude(q) << '\n';
  }
  if (common.out != ".") {
    EnsureDir(common.out);
    AtomicWriteFile(JoinPath(common.out, "ring_demo.csv"), csv.str());
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Community detection by projection onto clustering vectors", "projcd"};
  app.require_subcommand(1, 1);
  CommonFlags common;
  QueryFlags query;
  GraphFlags graph;

  CLI::App* generate = app.add_subcommand("generate", "Sample a graph with a planted partition");
  std::string family;
  std::string generate_name;
  std::map<std::string, std::string> values;
  for (const auto& [flag, key] : std::vector<std::pair<std::string, std::string>>{
           {"--n", "n"}, {"--k", "k"}, {"--s", "s"}, {"--lin", "lambda_in"},
           {"--lout", "lambda_out"}, {"--delta", "delta"}, {"--smin", "s_min"},
           {"--smax", "s_max"}, {"--tau", "tau"}}) {
    generate->add_option_function<std::string>(
        flag, [&values, key = key](const std::string& v) { values[key] = v; }, key);
  }
  generate->add_option("--family", family, "ppm | hppm | dcppm | ring");
  generate->add_option("--name", generate_name, "Output file stem (default: family)");
  generate->add_option("--config", common.config, "Config with a [generator] section");
  AddSeed(generate, common);
  AddOut(generate, common);

  CLI::App* detect = app.add_subcommand("detect", "Detect communities in an edge list");
  std::string detect_name;
  AddGraphFlags(detect, graph, true);
  AddQueryFlags(detect, query);
  detect->add_option("--config", common.config, "Config with [query] and [solver] sections");
  detect->add_option("--name", detect_name, "Output file stem")->default_val("detected");
  AddSeed(detect, common);
  AddOut(detect, common);

  CLI::App* evaluate = app.add_subcommand("evaluate", "Score a clustering against a query");
  std::string detected_path;
  std::string evaluate_name;
  AddGraphFlags(evaluate, graph, true);
  AddQueryFlags(evaluate, query);
  evaluate->add_option("--detected", detected_path, "Membership file to score")->required();
  evaluate->add_option("--config", common.config, "Config with a [query] section");
  evaluate->add_option("--name", evaluate_name, "Output file stem")->default_val("evaluation");
  AddSeed(evaluate, common);
  AddOut(evaluate, common);

  CLI::App* experiment = app.add_subcommand("experiment", "Run an experiment plan");
  experiment->add_option("--config", common.config, "Plan config")->required();
  CLI::Option* experiment_workers =
      experiment->add_option("--workers", common.workers, "Parallel runs")
          ->check(CLI::PositiveNumber);
  AddSeed(experiment, common);
  AddOut(experiment, common);

  CLI::App* grid = app.add_subcommand("grid-search", "Grid search over c_j and c_d");
  grid->add_option("--config", common.config, "Plan config")->required();
  CLI::Option* grid_workers =
      grid->add_option("--workers", common.workers, "Parallel runs")->check(CLI::PositiveNumber);
  AddSeed(grid, common);
  AddOut(grid, common);

  CLI::App* ring = app.add_subcommand("ring-demo", "Resolution-limit demo on a ring of cliques");
  int ring_k = 20;
  int ring_s = 5;
  double ring_gamma = 1.0;
  ring->add_option("--k", ring_k, "Number of cliques")->capture_default_str();
  ring->add_option("--s", ring_s, "Clique size")->capture_default_str();
  ring->add_option("--gamma", ring_gamma, "Resolution")->capture_default_str();
  AddSeed(ring, common);
  AddOut(ring, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (generate->parsed()) return CmdGenerate(common, family, values, generate_name, out);
    if (detect->parsed()) return CmdDetect(common, query, graph, detect_name, out);
    if (evaluate->parsed()) {
      return CmdEvaluate(common, query, graph, detected_path, evaluate_name, out);
    }
    if (experiment->parsed()) return CmdExperiment(common, experiment_workers->count() > 0, out);
    if (grid->parsed()) return CmdGridSearch(common, grid_workers->count() > 0, out);
    if (ring->parsed()) return CmdRingDemo(common, ring_k, ring_s, ring_gamma, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitUsageError;
}

}  // namespace projcd
