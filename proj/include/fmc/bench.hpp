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

#ifndef FMC_BENCH_HPP_
#define FMC_BENCH_HPP_

// The desk-scale acceptance suite: eleven property checks, each anchored to
// the exact oracle, plus a per-algorithm summary.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fmc/io.hpp"
#include "fmc/oracle.hpp"

namespace fmc {

struct SuiteOptions {
  std::uint64_t seed = 1;
  int threads = 1;
  std::uint64_t oracle_budget = kDefaultOracleBudget;
  // Reproducibility check: run this executable when set, else call the
  // command-line entry point in-process.
  std::string cli_path;
  std::string scratch_dir;  // default: a fresh directory under the system temp dir
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;  // 0: no runtime limit
  Json metrics;
};

struct AlgorithmSummary {
  std::string algorithm;
  int runs = 0;
  double ratio_sum = 0.0;  // weight / OPT over runs with an oracle optimum
  int ratio_runs = 0;
  double max_sigma = 0.0;
  int bound_checks = 0;
  int bound_passes = 0;
};

struct SuiteReport {
  std::vector<CriterionResult> criteria;
  std::vector<AlgorithmSummary> algorithms;
};

SuiteReport RunDeskSuite(const SuiteOptions& options,
                         const std::function<void(const CriterionResult&)>& progress = {});

bool AllPassed(const SuiteReport& report);
Json SuiteJson(const SuiteReport& report, bool timings);
std::string SuiteTable(const SuiteReport& report, bool timings);

}  // namespace fmc

#endif  // FMC_BENCH_HPP_
