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

#include <cstdio>
#include <iostream>
#include <string>

#include "fmc/bench.hpp"

int main() {
  fmc::SuiteOptions opt;
  opt.cli_path = FMC_CLI_PATH;
  const fmc::SuiteReport report = fmc::RunDeskSuite(opt, [](const fmc::CriterionResult& c) {
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", c.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), c.detail.c_str(), c.seconds);
    std::fflush(stdout);
  });
  std::cout << "\n" << fmc::SuiteTable(report, true);
  return fmc::AllPassed(report) ? 0 : 1;
}
