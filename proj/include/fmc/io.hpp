// Copyright 2026 The FairCover Authors
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

#ifndef FMC_IO_HPP_
#define FMC_IO_HPP_

// JSON file formats. Indices and colors are 1-based on disk.
//
// Instance: { "n", "m", "k", "chi", "weights"?, "colors", "sets",
//             "proportions"? : [[num, den], ...] }
// Graph:    { "nodes", "edges": [[u, v, color, weight], ...],
//             "k"?, "chi"? }

#include <optional>
#include <string>
#include <vector>

#include "fmc/instance.hpp"
#include "json.hpp"

namespace fmc {

using Json = nlohmann::json;

FmcInstance InstanceFromJson(const Json& j);
Json InstanceToJson(const FmcInstance& inst);

ColoredGraph GraphFromJson(const Json& j);
Json GraphToJson(const ColoredGraph& g, std::optional<int> k = std::nullopt);

bool LooksLikeGraph(const Json& j);

// Reads and parses a file; ParseError on I/O or syntax problems.
Json ReadJsonFile(const std::string& path);
// Writes through a temporary file and rename so readers never see a partial file.
void WriteFileAtomically(const std::string& path, const std::string& contents);

// A solver input: either a set system or a graph translated to one.
struct LoadedInput {
  FmcInstance instance;
  std::optional<ColoredGraph> graph;
  std::vector<int> node_of_set;  // only for graph inputs
};

// Graph files need a budget: from the file's "k" or from k_override.
LoadedInput LoadInput(const std::string& path, std::optional<int> k_override = std::nullopt);

FmcInstance LoadInstance(const std::string& path);

}  // namespace fmc

#endif  // FMC_IO_HPP_
