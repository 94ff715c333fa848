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

#ifndef FMC_CLI_HPP_
#define FMC_CLI_HPP_

// The fmc command-line tool: solve, gen, oracle and bench subcommands.
// Exit codes: 0 success, 1 error, 2 infeasible.

#include <ostream>
#include <string>
#include <vector>

namespace fmc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;

// args excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fmc

#endif  // FMC_CLI_HPP_
