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

#include "fmc/report.hpp"

#include <cmath>
#include <cstdio>

namespace fmc {

namespace {

std::vector<int> OneBased(const std::vector<int>& v) {
  std::vector<int> out(v);
  for (int& x : out) ++x;
  return out;
}

}  // namespace

std::string Digest(const Json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json Number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json InstanceSummary(const FmcInstance& inst) {
  const InstanceStats st = ComputeStats(inst);
  Json j;
  j["digest"] = Digest(InstanceToJson(inst));
  j["n"] = inst.n();
  j["m"] = inst.m();
  j["k"] = inst.k();
  j["chi"] = inst.chi();
  j["a"] = st.a;
  j["f"] = st.f;
  j["unweighted"] = st.unweighted;
  return j;
}

Json EvaluationJson(const Evaluation& ev) {
  Json j;
  j["selected"] = OneBased(ev.solution.selected);
  j["count"] = ev.solution.selected.size();
  j["covered"] = ev.solution.covered.size();
  j["weight"] = ev.solution.weight;
  j["p"] = ev.solution.p;
  j["cardinality"] =
      ev.solution.cardinality_mode == CardinalityMode::kExactK ? "exactly-k" : "at-most-k";
  j["fairness"] = {{"sigma", Number(ev.fairness.sigma)},
                   {"epsilon", Number(ev.fairness.epsilon)},
                   {"within_epsilon", ev.fairness.deterministic_ok}};
  return j;
}

Json OracleJson(const OracleResult& r) {
  Json j;
  j["feasible"] = r.feasible;
  if (r.feasible) {
    j["opt_weight"] = *r.opt_weight;
    j["opt_count"] = *r.opt_count;
    j["witness"] = OneBased(r.witness->selected);
    j["witness_p"] = r.witness->p;
  }
  j["opt_unfair_weight"] = r.opt_unfair_weight;
  j["unfair_witness"] = OneBased(r.unfair_witness);
  j["enumerated"] = r.enumerated;
  return j;
}

Json GeomEvaluationJson(const GeomEvaluation& ev) {
  Json j;
  Json centers = Json::array();
  for (const Ball& b : ev.centers) centers.push_back({b.x, b.y});
  j["centers"] = std::move(centers);
  j["per_color"] = ev.per_color;
  j["coverage"] = ev.coverage;
  j["ratio"] = Number(ev.ratio);
  j["fair"] = ev.fair;
  return j;
}

std::string Render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace fmc
