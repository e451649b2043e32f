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

#include "projcd/generators.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "projcd/errors.h"
#include "projcd/io.h"

namespace projcd {
namespace {

std::string FormatDouble(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

void RequireProbability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError(std::string(what) + " = " + FormatDouble(p) + " outside [0, 1]");
  }
}

void RequireRates(double lambda_in, double lambda_out) {
  if (!(lambda_in >= 0.0) || !(lambda_out >= 0.0) || !std::isfinite(lambda_in) ||
      !std::isfinite(lambda_out)) {
    throw ParameterError("lambda_in and lambda_out must be finite and >= 0");
  }
}

// Calls visit(t) for each index t in [0, count) selected independently with
// probability p, in increasing order.
template <typename Visit>
void GeometricSample(int64_t count, double p, std::mt19937_64& rng, Visit visit) {
  if (count <= 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (int64_t t = 0; t < count; ++t) visit(t);
    return;
  }
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double log_q = std::log1p(-p);
  int64_t t = -1;
  while (true) {
    const double u = 1.0 - uniform(rng);  // (0, 1]
    const double skip = std::floor(std::log(u) / log_q);
    if (skip >= static_cast<double>(count - t)) return;
    t += 1 + static_cast<int64_t>(skip);
    if (t >= count) return;
    visit(t);
  }
}

// Edges inside [offset, offset + size) with probability p.
void SampleTriangle(NodeId offset, NodeId size, double p, std::mt19937_64& rng,
                    std::vector<Edge>& edges) {
  NodeId row = 0;
  int64_t row_start = 0;  // linear index of (row, row + 1)
  GeometricSample(NumPairs(size), p, rng, [&](int64_t t) {
    while (t >= row_start + (size - 1 - row)) {
      row_start += size - 1 - row;
      ++row;
    }
    const NodeId col = static_cast<NodeId>(row + 1 + (t - row_start));
    edges.emplace_back(offset + row, offset + col);
  });
}

// Edges between [a, a + size_a) and [b, b + size_b) with probability p.
void SampleRectangle(NodeId a, NodeId size_a, NodeId b, NodeId size_b, double p,
                     std::mt19937_64& rng, std::vector<Edge>& edges) {
  GeometricSample(static_cast<int64_t>(size_a) * size_b, p, rng, [&](int64_t t) {
    edges.emplace_back(a + static_cast<NodeId>(t / size_b), b + static_cast<NodeId>(t % size_b));
  });
}

Partition BlockPartition(const std::vector<NodeId>& sizes) {
  std::vector<int> labels;
  for (size_t a = 0; a < sizes.size(); ++a) {
    labels.insert(labels.end(), sizes[a], static_cast<int>(a));
  }
  return Partition(labels);
}

GeneratedGraph BlockModel(const std::vector<NodeId>& sizes, const std::vector<double>& p_in,
                          double p_out, std::mt19937_64& rng) {
  std::vector<NodeId> offsets(sizes.size() + 1, 0);
  for (size_t a = 0; a < sizes.size(); ++a) offsets[a + 1] = offsets[a] + sizes[a];
  GeneratedGraph out;
  std::vector<Edge> edges;
  for (size_t a = 0; a < sizes.size(); ++a) {
    double p = p_in[a];
    if (p > 1.0) {
      out.capped_pairs += NumPairs(sizes[a]);
      p = 1.0;
    }
    SampleTriangle(offsets[a], sizes[a], p, rng, edges);
    for (size_t b = a + 1; b < sizes.size(); ++b) {
      SampleRectangle(offsets[a], sizes[a], offsets[b], sizes[b], p_out, rng, edges);
    }
  }
  out.graph = Graph(offsets.back(), edges);
  out.planted = BlockPartition(sizes);
  return out;
}

}  // namespace

std::string FamilyName(GeneratorFamily family) {
  switch (family) {
    case GeneratorFamily::kPpm: return "ppm";
    case GeneratorFamily::kHppm: return "hppm";
    case GeneratorFamily::kDcppm: return "dcppm";
    case GeneratorFamily::kRingOfCliques: return "ring_of_cliques";
    case GeneratorFamily::kExternal: return "external";
  }
  return "ppm";
}

GeneratorFamily ParseFamily(const std::string& name) {
  if (name == "ppm") return GeneratorFamily::kPpm;
  if (name == "hppm") return GeneratorFamily::kHppm;
  if (name == "dcppm") return GeneratorFamily::kDcppm;
  if (name == "ring_of_cliques" || name == "ring") return GeneratorFamily::kRingOfCliques;
  if (name == "external" || name == "abcd") return GeneratorFamily::kExternal;
  throw ParameterError("unknown generator family '" + name + "'");
}

GeneratorSpec ParseGeneratorSpec(const ConfigSection& section) {
  GeneratorSpec spec;
  try {
    spec.family = ParseFamily(section.GetString("family"));
  } catch (const ParameterError& e) {
    throw ConfigError(section.KeyPath("family"), e.what());
  }
  auto positive = [&section](const char* key, int64_t fallback) {
    const int64_t v = section.GetInt(key, fallback);
    if (v < 1 || v > std::numeric_limits<NodeId>::max()) {
      throw ConfigError(section.KeyPath(key), "must be a positive node count");
    }
    return static_cast<NodeId>(v);
  };
  auto rate = [&section](const char* key, double fallback) {
    const double v = section.GetDouble(key, fallback);
    if (!(v >= 0.0)) throw ConfigError(section.KeyPath(key), "must be >= 0");
    return v;
  };
  auto exponent = [&section](const char* key, double fallback) {
    const double v = section.GetDouble(key, fallback);
    if (!(v > 1.0)) throw ConfigError(section.KeyPath(key), "exponent must be > 1");
    return v;
  };
  switch (spec.family) {
    case GeneratorFamily::kPpm:
    case GeneratorFamily::kDcppm:
      spec.n = positive("n", spec.n);
      spec.k = positive("k", spec.k);
      spec.lambda_in = rate("lambda_in", spec.lambda_in);
      spec.lambda_out = rate("lambda_out", spec.lambda_out);
      if (spec.family == GeneratorFamily::kDcppm) spec.tau = exponent("tau", spec.tau);
      break;
    case GeneratorFamily::kHppm:
      spec.n = positive("n", spec.n);
      spec.lambda_in = rate("lambda_in", spec.lambda_in);
      spec.lambda_out = rate("lambda_out", spec.lambda_out);
      spec.delta = exponent("delta", spec.delta);
      spec.s_min = positive("s_min", spec.s_min);
      spec.s_max = positive("s_max", spec.s_max);
      if (spec.s_min > spec.s_max) throw ConfigError(section.KeyPath("s_max"), "below s_min");
      break;
    case GeneratorFamily::kRingOfCliques:
      spec.cliques = positive("cliques", spec.cliques);
      spec.clique_size = positive("clique_size", spec.clique_size);
      break;
    case GeneratorFamily::kExternal:
      spec.edges_path = section.GetString("edges");
      spec.membership_path = section.GetString("membership");
      spec.one_based = section.GetBool("one_based", false);
      spec.tokens = section.GetBool("tokens", false);
      if (section.Has("xi")) spec.xi = section.GetDouble("xi");
      break;
  }
  section.RejectUnknownKeys();
  return spec;
}

ConfigSection FormatGeneratorSpec(const GeneratorSpec& spec, const std::string& name) {
  ConfigSection out(name, {});
  out.Set("family", FamilyName(spec.family));
  switch (spec.family) {
    case GeneratorFamily::kPpm:
    case GeneratorFamily::kDcppm:
      out.Set("n", std::to_string(spec.n));
      out.Set("k", std::to_string(spec.k));
      out.Set("lambda_in", FormatDouble(spec.lambda_in));
      out.Set("lambda_out", FormatDouble(spec.lambda_out));
      if (spec.family == GeneratorFamily::kDcppm) out.Set("tau", FormatDouble(spec.tau));
      break;
    case GeneratorFamily::kHppm:
      out.Set("n", std::to_string(spec.n));
      out.Set("lambda_in", FormatDouble(spec.lambda_in));
      out.Set("lambda_out", FormatDouble(spec.lambda_out));
      out.Set("delta", FormatDouble(spec.delta));
      out.Set("s_min", std::to_string(spec.s_min));
      out.Set("s_max", std::to_string(spec.s_max));
      break;
    case GeneratorFamily::kRingOfCliques:
      out.Set("cliques", std::to_string(spec.cliques));
      out.Set("clique_size", std::to_string(spec.clique_size));
      break;
    case GeneratorFamily::kExternal:
      out.Set("edges", spec.edges_path);
      out.Set("membership", spec.membership_path);
      out.Set("one_based", spec.one_based ? "true" : "false");
      out.Set("tokens", spec.tokens ? "true" : "false");
      if (spec.xi) out.Set("xi", FormatDouble(*spec.xi));
      break;
  }
  return out;
}

uint64_t SampleSeed(uint64_t master, uint64_t index) {
  // splitmix64 finalizer over a Weyl-sequence step.
  uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

GeneratedGraph GeneratePpm(NodeId n, NodeId k, double lambda_in, double lambda_out,
                           uint64_t seed) {
  RequireRates(lambda_in, lambda_out);
  if (k < 1 || n < 2 || n % k != 0) throw ParameterError("k must divide n, with n >= 2");
  const NodeId s = n / k;
  if (s < 2) throw ParameterError("communities need at least two nodes");
  const double p_in = lambda_in / (s - 1);
  double p_out = 0.0;
  if (k > 1) {
    p_out = lambda_out / (n - s);
  } else if (lambda_out > 0.0) {
    throw ParameterError("lambda_out > 0 needs at least two communities");
  }
  RequireProbability(p_in, "p_in");
  RequireProbability(p_out, "p_out");
  std::mt19937_64 rng(seed);
  return BlockModel(std::vector<NodeId>(k, s), std::vector<double>(k, p_in), p_out, rng);
}

std::vector<NodeId> SampleCommunitySizes(NodeId n, double delta, NodeId s_min, NodeId s_max,
                                         std::mt19937_64& rng) {
  if (!(delta > 1.0)) throw ParameterError("size exponent delta must be > 1");
  if (s_min < 1 || s_max < s_min) throw ParameterError("need 1 <= s_min <= s_max");
  if (n < 2) throw ParameterError("n must be >= 2");
  std::vector<double> weights;
  for (NodeId s = s_min; s <= s_max; ++s) weights.push_back(std::pow(s, -delta));
  std::discrete_distribution<NodeId> draw(weights.begin(), weights.end());
  std::vector<NodeId> sizes;
  NodeId total = 0;
  while (total < n) {
    const NodeId s = std::min<NodeId>(s_min + draw(rng), n - total);
    sizes.push_back(s);
    total += s;
  }
  if (sizes.back() < 2) {
    if (sizes.size() == 1) throw ParameterError("cannot form a community of size >= 2");
    const NodeId last = sizes.back();
    sizes.pop_back();
    sizes.back() += last;
  }
  for (NodeId& s : sizes) {
    if (s < 2) throw ParameterError("community sizes must be >= 2; raise s_min");
  }
  return sizes;
}

GeneratedGraph GenerateHppm(NodeId n, double lambda_in, double lambda_out, double delta,
                            NodeId s_min, NodeId s_max, uint64_t seed) {
  RequireRates(lambda_in, lambda_out);
  std::mt19937_64 rng(seed);
  const std::vector<NodeId> sizes = SampleCommunitySizes(n, delta, s_min, s_max, rng);
  PairIndex m_t = 0;
  std::vector<double> p_in;
  for (NodeId s : sizes) {
    m_t += NumPairs(s);
    p_in.push_back(lambda_in / (s - 1));
  }
  const PairIndex inter = NumPairs(n) - m_t;
  double p_out = 0.0;
  if (inter > 0) {
    p_out = static_cast<double>(n) * lambda_out / (2.0 * static_cast<double>(inter));
  } else if (lambda_out > 0.0) {
    throw ParameterError("lambda_out > 0 needs at least two communities");
  }
  RequireProbability(p_out, "p_out");
  return BlockModel(sizes, p_in, p_out, rng);
}

std::vector<double> SampleParetoWeights(NodeId n, double tau, double mean,
                                        std::mt19937_64& rng) {
  if (!(tau > 2.0)) throw ParameterError("weight exponent tau must be > 2 for a finite mean");
  if (!(mean >= 0.0)) throw ParameterError("mean weight must be >= 0");
  const double floor = mean * (tau - 2.0) / (tau - 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> weights(n);
  for (double& w : weights) w = floor * std::pow(1.0 - uniform(rng), -1.0 / (tau - 1.0));
  return weights;
}

GeneratedGraph GenerateDcppm(NodeId n, NodeId k, double lambda_in, double lambda_out,
                             double tau, uint64_t seed) {
  RequireRates(lambda_in, lambda_out);
  if (k < 1 || n < 2 || n % k != 0) throw ParameterError("k must divide n, with n >= 2");
  const NodeId s = n / k;
  if (s < 2) throw ParameterError("communities need at least two nodes");
  std::mt19937_64 rng(seed);
  const double lambda = lambda_in + lambda_out;
  const std::vector<double> theta = SampleParetoWeights(n, tau, lambda, rng);
  GeneratedGraph out;
  out.planted = BlockPartition(std::vector<NodeId>(k, s));
  std::vector<double> community_weight(k, 0.0);
  double total = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    community_weight[i / s] += theta[i];
    total += theta[i];
  }
  std::vector<Edge> edges;
  if (lambda > 0.0 && total > 0.0) {
    const double share_in = lambda_in / lambda;
    const double share_out = lambda_out / lambda;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) {
        const double product = theta[i] * theta[j];
        double p = share_out * product / total;
        if (i / s == j / s) p += share_in * product / community_weight[i / s];
        if (p > 1.0) {
          ++out.capped_pairs;
          p = 1.0;
        }
        if (uniform(rng) < p) edges.emplace_back(i, j);
      }
    }
  }
  out.graph = Graph(n, edges);
  return out;
}

GeneratedGraph RingOfCliques(NodeId k, NodeId s) {
  if (k < 3 || s < 2) throw ParameterError("ring of cliques needs k >= 3 and s >= 2");
  std::vector<Edge> edges;
  for (NodeId a = 0; a < k; ++a) {
    for (NodeId i = 0; i < s; ++i) {
      for (NodeId j = i + 1; j < s; ++j) edges.emplace_back(a * s + i, a * s + j);
    }
    edges.emplace_back(a * s + s - 1, ((a + 1) % k) * s);
  }
  GeneratedGraph out;
  out.graph = Graph(k * s, edges);
  out.planted = BlockPartition(std::vector<NodeId>(k, s));
  return out;
}

GeneratedGraph LoadExternal(const std::string& edges_path, const std::string& membership_path,
                            bool one_based, bool tokens) {
  ReadOptions options;
  options.one_based = one_based;
  options.mode = tokens ? NodeIdMode::kTokens : NodeIdMode::kIntegers;
  EdgeListData data = ReadEdgeListFile(edges_path, options);
  GeneratedGraph out;
  if (tokens) {
    out.planted =
        ReadMembershipFile(membership_path, data.graph.n(), options, &*data.names);
    out.graph = std::move(data.graph);
    return out;
  }
  // Nodes without edges appear only in the membership file.
  NodeId lines = 0;
  {
    std::ifstream in(membership_path);
    if (!in) throw ParseError("cannot open membership file '" + membership_path + "'");
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (line.substr(0, hash).find_first_not_of(" \t\r") != std::string::npos) ++lines;
    }
  }
  NodeId n = data.graph.n();
  if (lines > n) {
    n = lines;
    data.graph = Graph(n, data.graph.edges());
  }
  out.planted = ReadMembershipFile(membership_path, n, options);
  out.graph = std::move(data.graph);
  return out;
}

GeneratedGraph Generate(const GeneratorSpec& spec, uint64_t seed) {
  switch (spec.family) {
    case GeneratorFamily::kPpm:
      return GeneratePpm(spec.n, spec.k, spec.lambda_in, spec.lambda_out, seed);
    case GeneratorFamily::kHppm:
      return GenerateHppm(spec.n, spec.lambda_in, spec.lambda_out, spec.delta, spec.s_min,
                          spec.s_max, seed);
    case GeneratorFamily::kDcppm:
      return GenerateDcppm(spec.n, spec.k, spec.lambda_in, spec.lambda_out, spec.tau, seed);
    case GeneratorFamily::kRingOfCliques:
      return RingOfCliques(spec.cliques, spec.clique_size);
    case GeneratorFamily::kExternal:
      return LoadExternal(spec.edges_path, spec.membership_path, spec.one_based, spec.tokens);
  }
  throw ParameterError("unknown generator family");
}

}  // namespace projcd
