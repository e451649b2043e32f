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

// Text formats.
//
// Edge list: one `<u> <v>` per line, `#` starts a comment. Ids are either
// contiguous integers (0-based, or 1-based with `one_based`) or arbitrary
// tokens mapped to dense ids in order of first appearance. The writer adds a
// `# nodes <n>` comment, which the integer reader honors so isolated
// trailing nodes survive a round trip.
//
// Membership: one `<node> <label>` per line; labels are arbitrary strings.

#ifndef PROJCD_IO_H_
#define PROJCD_IO_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "projcd/graph.h"
#include "projcd/partition.h"

namespace projcd {

enum class NodeIdMode { kAuto, kIntegers, kTokens };

struct ReadOptions {
  NodeIdMode mode = NodeIdMode::kAuto;
  bool one_based = false;  // integer ids start at 1
};

struct NodeNames {
  std::vector<std::string> names;  // dense id -> token
  std::unordered_map<std::string, NodeId> index;
};

struct EdgeListData {
  Graph graph;
  std::optional<NodeNames> names;  // set in token mode
};

EdgeListData ReadEdgeList(std::istream& in, const ReadOptions& options = {});
EdgeListData ReadEdgeListFile(const std::string& path, const ReadOptions& options = {});
void WriteEdgeList(std::ostream& out, const Graph& g);

// Every node of [0, n) must appear exactly once. With `names`, node fields
// are resolved as tokens.
Partition ReadMembership(std::istream& in, NodeId n, const ReadOptions& options = {},
                         const NodeNames* names = nullptr);
Partition ReadMembershipFile(const std::string& path, NodeId n,
                             const ReadOptions& options = {},
                             const NodeNames* names = nullptr);
void WriteMembership(std::ostream& out, const Partition& c);

std::string ReadFileToString(const std::string& path);
// Writes to a sibling temporary file, then renames over `path`.
void AtomicWriteFile(const std::string& path, const std::string& content);

}  // namespace projcd

#endif  // PROJCD_IO_H_
