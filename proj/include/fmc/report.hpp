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

#ifndef FMC_REPORT_HPP_
#define FMC_REPORT_HPP_

// JSON renderings shared by the command-line tool and the benchmark suite.
// Indices are 1-based; non-finite numbers are written as strings.

#include <string>

#include "fmc/geom.hpp"
#include "fmc/instance.hpp"
#include "fmc/io.hpp"
#include "fmc/oracle.hpp"

namespace fmc {

inline constexpr const char* kReportSchema = "fmc-report/1";

// FNV-1a 64 of the compact dump, as "fnv1a64:<16 hex digits>".
std::string Digest(const Json& j);

Json Number(double v);

Json InstanceSummary(const FmcInstance& inst);
Json EvaluationJson(const Evaluation& ev);
Json OracleJson(const OracleResult& r);
Json GeomEvaluationJson(const GeomEvaluation& ev);

// Two-space indented dump with a trailing newline.
std::string Render(const Json& j);

}  // namespace fmc

#endif  // FMC_REPORT_HPP_
