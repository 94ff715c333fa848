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

#ifndef FMC_GENERATE_HPP_
#define FMC_GENERATE_HPP_

// Deterministic instance generators. Output depends only on
// (family, params, seed).
//
//   gap        alpha>=2. Integrality-gap family: alpha blocks of alpha+1
//              elements (one of color 1, alpha of color 2) with the alpha+1
//              leave-one-out sets of each block, plus alpha+1 disjoint
//              two-element sets {color 1, color 2}; k = alpha+1.
//   random     n, m, k, chi, density, weighted(0/1)
//   segregated chi, k, n_per_color, sets_per_color, max_size
//   balanced   delta, chi, k, m, n_per_color, base_max
//   graph      nodes, edges, chi, k, weighted(0/1)   (GenerateGraph)

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "fmc/instance.hpp"

namespace fmc {

using Params = std::map<std::string, double, std::less<>>;

// "alpha=2,n=10" -> {alpha: 2, n: 10}. Throws ParseError.
Params ParseParams(std::string_view text);

FmcInstance Generate(std::string_view family, const Params& params, std::uint64_t seed);

ColoredGraph GenerateGraph(const Params& params, std::uint64_t seed);

FmcInstance GapInstance(int alpha);

// Checks the per-set color balance bounds
// max(1, floor(|S|/chi) - delta) <= count <= ceil(|S|/chi) + delta.
bool IsDeltaBalanced(const FmcInstance& inst, int delta);

bool IsSegregated(const FmcInstance& inst);

}  // namespace fmc

#endif  // FMC_GENERATE_HPP_
