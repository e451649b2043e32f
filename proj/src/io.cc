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

#include "projcd/io.h"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "projcd/errors.h"

namespace projcd {
namespace {

struct Line {
  int64_t number;
  std::vector<std::string> fields;
};

std::vector<Line> Tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  int64_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    const auto hash = text.find('#');
    std::istringstream fields(hash == std::string::npos ? text : text.substr(0, hash));
    Line line{number, {}};
    std::string field;
    while (fields >> field) line.fields.push_back(field);
    if (!line.fields.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

std::optional<int64_t> ParseId(const std::string& s) {
  int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value < 0) return std::nullopt;
  return value;
}

// Node count from a `# nodes <n>` comment, if any.
std::optional<int64_t> DeclaredNodes(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string hash, key, value;
    if (fields >> hash >> key >> value && hash == "#" && key == "nodes") return ParseId(value);
  }
  return std::nullopt;
}

std::string Where(int64_t line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

EdgeListData ReadEdgeList(std::istream& in, const ReadOptions& options) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  std::istringstream body(text);
  const std::vector<Line> lines = Tokenize(body);
  for (const Line& line : lines) {
    if (line.fields.size() < 2) {
      throw ParseError(Where(line.number) + "expected '<u> <v>'");
    }
  }
  NodeIdMode mode = options.mode;
  if (mode == NodeIdMode::kAuto) {
    mode = NodeIdMode::kIntegers;
    for (const Line& line : lines) {
      if (!ParseId(line.fields[0]) || !ParseId(line.fields[1])) {
        mode = NodeIdMode::kTokens;
        break;
      }
    }
  }
  EdgeListData data;
  std::vector<Edge> edges;
  edges.reserve(lines.size());
  if (mode == NodeIdMode::kTokens) {
    NodeNames names;
    auto resolve = [&names](const std::string& token) {
      auto [it, inserted] = names.index.try_emplace(token, static_cast<NodeId>(names.names.size()));
      if (inserted) names.names.push_back(token);
      return it->second;
    };
    for (const Line& line : lines) {
      const NodeId u = resolve(line.fields[0]);
      const NodeId v = resolve(line.fields[1]);
      edges.emplace_back(u, v);
    }
    data.graph = Graph(static_cast<NodeId>(names.names.size()), edges);
    data.names = std::move(names);
    return data;
  }
  const int64_t base = options.one_based ? 1 : 0;
  int64_t n = 0;
  for (const Line& line : lines) {
    const auto u = ParseId(line.fields[0]);
    const auto v = ParseId(line.fields[1]);
    if (!u || !v || *u < base || *v < base) {
      throw ParseError(Where(line.number) + "invalid node id");
    }
    if (std::max(*u, *v) - base >= std::numeric_limits<NodeId>::max()) {
      throw ParseError(Where(line.number) + "node id too large");
    }
    edges.emplace_back(static_cast<NodeId>(*u - base), static_cast<NodeId>(*v - base));
    n = std::max(n, std::max(*u, *v) - base + 1);
  }
  if (const auto declared = DeclaredNodes(text)) {
    if (*declared < n) throw ParseError("declared node count is below the largest id");
    n = *declared;
  }
  data.graph = Graph(static_cast<NodeId>(n), edges);
  return data;
}

EdgeListData ReadEdgeListFile(const std::string& path, const ReadOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list '" + path + "'");
  try {
    return ReadEdgeList(in, options);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void WriteEdgeList(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.n() << "\n";
  for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
}

Partition ReadMembership(std::istream& in, NodeId n, const ReadOptions& options,
                         const NodeNames* names) {
  const std::vector<Line> lines = Tokenize(in);
  std::vector<int64_t> labels(n, -1);
  std::unordered_map<std::string, int64_t> label_ids;
  const int64_t base = options.one_based ? 1 : 0;
  for (const Line& line : lines) {
    if (line.fields.size() < 2) {
      throw ParseError(Where(line.number) + "expected '<node> <label>'");
    }
    int64_t node = -1;
    if (names != nullptr) {
      const auto it = names->index.find(line.fields[0]);
      if (it == names->index.end()) {
        throw ParseError(Where(line.number) + "unknown node '" + line.fields[0] + "'");
      }
      node = it->second;
    } else {
      const auto id = ParseId(line.fields[0]);
      if (!id || *id < base || *id - base >= n) {
        throw ParseError(Where(line.number) + "node id '" + line.fields[0] +
                         "' outside [0, " + std::to_string(n) + ")");
      }
      node = *id - base;
    }
    if (labels[node] >= 0) {
      throw ParseError(Where(line.number) + "node '" + line.fields[0] + "' listed twice");
    }
    auto [it, inserted] =
        label_ids.try_emplace(line.fields[1], static_cast<int64_t>(label_ids.size()));
    labels[node] = it->second;
  }
  for (NodeId i = 0; i < n; ++i) {
    if (labels[i] < 0) {
      const std::string name = names != nullptr ? names->names[i] : std::to_string(i + base);
      throw ParseError("membership has no line for node " + name);
    }
  }
  return Partition(labels);
}

Partition ReadMembershipFile(const std::string& path, NodeId n, const ReadOptions& options,
                             const NodeNames* names) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open membership file '" + path + "'");
  try {
    return ReadMembership(in, n, options, names);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void WriteMembership(std::ostream& out, const Partition& c) {
  for (NodeId i = 0; i < c.n(); ++i) out << i << " " << c.community(i) << "\n";
}

std::string ReadFileToString(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void AtomicWriteFile(const std::string& path, const std::string& content) {
  const std::string temp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + temp + "'");
    out << content;
    out.flush();
    if (!out) {
      std::remove(temp.c_str());
      throw std::runtime_error("write failed for '" + temp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::remove(temp.c_str());
    throw std::runtime_error("cannot rename onto '" + path + "': " + ec.message());
  }
}

}  // namespace projcd
