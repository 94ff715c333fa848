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

#include "fmc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fmc/errors.hpp"

namespace fmc {

namespace {

template <typename T>
T Get(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad field \"") + key + "\": " + e.what());
  }
}

}  // namespace

FmcInstance InstanceFromJson(const Json& j) {
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  const int n = Get<int>(j, "n");
  const int m = Get<int>(j, "m");
  const int k = Get<int>(j, "k");
  const int chi = Get<int>(j, "chi");
  std::vector<int> colors = Get<std::vector<int>>(j, "colors");
  for (int& c : colors) --c;
  std::vector<double> weights = j.contains("weights") ? Get<std::vector<double>>(j, "weights")
                                                      : std::vector<double>(n > 0 ? n : 0, 1.0);
  auto sets = Get<std::vector<std::vector<int>>>(j, "sets");
  if (static_cast<int>(sets.size()) != m) {
    throw ValidationError("m = " + std::to_string(m) + " but " + std::to_string(sets.size()) +
                          " sets listed");
  }
  for (auto& s : sets) {
    for (int& e : s) --e;
  }
  std::vector<Rational> proportions;
  if (j.contains("proportions")) {
    for (const auto& pair : Get<std::vector<std::vector<std::int64_t>>>(j, "proportions")) {
      if (pair.size() != 2) throw ParseError("proportions entries must be [num, den]");
      proportions.push_back(Rational::Make(pair[0], pair[1]));
    }
  }
  return FmcInstance::Create(n, k, chi, std::move(weights), std::move(colors), std::move(sets),
                             std::move(proportions));
}

Json InstanceToJson(const FmcInstance& inst) {
  Json j;
  j["n"] = inst.n();
  j["m"] = inst.m();
  j["k"] = inst.k();
  j["chi"] = inst.chi();
  j["weights"] = inst.weights();
  std::vector<int> colors(inst.colors());
  for (int& c : colors) ++c;
  j["colors"] = colors;
  Json sets = Json::array();
  for (const auto& s : inst.sets()) {
    std::vector<int> one(s.begin(), s.end());
    for (int& e : one) ++e;
    sets.push_back(one);
  }
  j["sets"] = std::move(sets);
  if (!inst.has_equal_proportions()) {
    Json props = Json::array();
    for (const Rational& q : inst.proportions()) props.push_back({q.num, q.den});
    j["proportions"] = std::move(props);
  }
  return j;
}

bool LooksLikeGraph(const Json& j) {
  return j.is_object() && j.contains("nodes") && j.contains("edges");
}

ColoredGraph GraphFromJson(const Json& j) {
  if (!LooksLikeGraph(j)) throw ParseError("graph must have \"nodes\" and \"edges\"");
  ColoredGraph g;
  g.nodes = Get<int>(j, "nodes");
  int max_color = 0;
  for (const auto& row : j.at("edges")) {
    if (!row.is_array() || row.size() < 3 || row.size() > 4) {
      throw ParseError("edges entries must be [u, v, color, weight]");
    }
    Edge e;
    try {
      e.u = row[0].get<int>() - 1;
      e.v = row[1].get<int>() - 1;
      e.color = row[2].get<int>() - 1;
      e.weight = row.size() == 4 ? row[3].get<double>() : 1.0;
    } catch (const Json::exception& ex) {
      throw ParseError(std::string("bad edge entry: ") + ex.what());
    }
    max_color = std::max(max_color, e.color + 1);
    g.edges.push_back(e);
  }
  g.chi = j.contains("chi") ? Get<int>(j, "chi") : max_color;
  ValidateGraph(g);
  return g;
}

Json GraphToJson(const ColoredGraph& g, std::optional<int> k) {
  Json j;
  j["nodes"] = g.nodes;
  j["chi"] = g.chi;
  Json edges = Json::array();
  for (const Edge& e : g.edges) edges.push_back({e.u + 1, e.v + 1, e.color + 1, e.weight});
  j["edges"] = std::move(edges);
  if (k) j["k"] = *k;
  return j;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void WriteFileAtomically(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << contents;
    if (!out) throw Error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("cannot rename " + tmp);
}

LoadedInput LoadInput(const std::string& path, std::optional<int> k_override) {
  const Json j = ReadJsonFile(path);
  if (!LooksLikeGraph(j)) {
    FmcInstance inst = InstanceFromJson(j);
    if (k_override) inst = inst.WithK(*k_override);
    return LoadedInput{std::move(inst), std::nullopt, {}};
  }
  ColoredGraph g = GraphFromJson(j);
  std::optional<int> k = k_override;
  if (!k && j.contains("k")) k = Get<int>(j, "k");
  if (!k) throw ParseError(path + ": graph input needs \"k\" in the file or --k");
  GraphInstance gi = FromGraph(g, *k);
  return LoadedInput{std::move(gi.instance), std::move(g), std::move(gi.node_of_set)};
}

FmcInstance LoadInstance(const std::string& path) { return LoadInput(path).instance; }

}  // namespace fmc
