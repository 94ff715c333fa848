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

#include "fmc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <thread>

#include "fmc/errors.hpp"

namespace fmc {

namespace {

using Mask = std::vector<std::uint64_t>;

struct Best {
  bool found = false;
  double weight = 0.0;
  int count = 0;
  std::vector<int> sets;
};

// Strictly better under (weight desc, count desc, lexicographic asc).
bool Better(double w, int c, const std::vector<int>& s, const Best& b) {
  if (!b.found) return true;
  if (w != b.weight) return w > b.weight;
  if (c != b.count) return c > b.count;
  return s < b.sets;
}

class Enumerator {
 public:
  explicit Enumerator(const FmcInstance& inst) : inst_(inst), words_((inst.n() + 63) / 64) {
    set_masks_.assign(inst.m(), Mask(words_, 0));
    for (int s = 0; s < inst.m(); ++s) {
      for (int e : inst.set(s)) set_masks_[s][e / 64] |= 1ULL << (e % 64);
    }
    color_masks_.assign(inst.chi(), Mask(words_, 0));
    for (int e = 0; e < inst.n(); ++e) color_masks_[inst.color(e)][e / 64] |= 1ULL << (e % 64);
    unweighted_ = std::all_of(inst.weights().begin(), inst.weights().end(),
                              [](double w) { return w == 1.0; });
  }

  // Enumerates r-subsets whose first index is congruent to `stripe` mod `stride`.
  void Run(int r, int stripe, int stride) {
    r_ = r;
    chosen_.assign(r, 0);
    unions_.assign(r + 1, Mask(words_, 0));
    if (r == 0) return;
    for (int first = stripe; first <= inst_.m() - r; first += stride) {
      chosen_[0] = first;
      Combine(unions_[0], set_masks_[first], unions_[1]);
      Recurse(1, first + 1);
    }
  }

  Best fair;
  Best unfair;
  std::uint64_t visited = 0;

 private:
  void Combine(const Mask& a, const Mask& b, Mask& out) const {
    for (int w = 0; w < words_; ++w) out[w] = a[w] | b[w];
  }

  void Recurse(int depth, int next) {
    if (depth == r_) {
      Score(unions_[depth]);
      return;
    }
    for (int s = next; s <= inst_.m() - (r_ - depth); ++s) {
      chosen_[depth] = s;
      Combine(unions_[depth], set_masks_[s], unions_[depth + 1]);
      Recurse(depth + 1, s + 1);
    }
  }

  void Score(const Mask& covered) {
    ++visited;
    int count = 0;
    p_.assign(inst_.chi(), 0);
    for (int c = 0; c < inst_.chi(); ++c) {
      for (int w = 0; w < words_; ++w) p_[c] += std::popcount(covered[w] & color_masks_[c][w]);
      count += p_[c];
    }
    double weight = 0.0;
    if (unweighted_) {
      weight = count;
    } else {
      for (int w = 0; w < words_; ++w) {
        for (std::uint64_t bits = covered[w]; bits; bits &= bits - 1) {
          weight += inst_.weight(w * 64 + std::countr_zero(bits));
        }
      }
    }
    if (Better(weight, count, chosen_, unfair)) unfair = Best{true, weight, count, chosen_};
    if (IsExactlyFair(inst_, p_) && Better(weight, count, chosen_, fair)) {
      fair = Best{true, weight, count, chosen_};
    }
  }

  const FmcInstance& inst_;
  int words_;
  bool unweighted_ = true;
  std::vector<Mask> set_masks_;
  std::vector<Mask> color_masks_;
  std::vector<Mask> unions_;
  std::vector<int> chosen_;
  std::vector<int> p_;
  int r_ = 0;
};

void Merge(Best& into, const Best& from) {
  if (from.found && Better(from.weight, from.count, from.sets, into)) into = from;
}

}  // namespace

std::uint64_t Binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= r; ++i) {
    acc = acc * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(acc);
}

OracleResult ExactSolve(const FmcInstance& inst, std::uint64_t budget, int threads) {
  const std::uint64_t total = Binomial(inst.m(), inst.k());
  if (total > budget) {
    throw BudgetExceeded("oracle would enumerate C(" + std::to_string(inst.m()) + ", " +
                         std::to_string(inst.k()) + ") = " + std::to_string(total) +
                         " selections, budget " + std::to_string(budget));
  }
  threads = std::clamp(threads, 1, std::max(1, inst.m()));
  std::vector<Enumerator> workers(threads, Enumerator(inst));
  if (threads == 1) {
    workers[0].Run(inst.k(), 0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] { workers[t].Run(inst.k(), t, threads); });
    }
    for (auto& th : pool) th.join();
  }
  Best fair;
  Best unfair;
  OracleResult result;
  for (const auto& w : workers) {
    Merge(fair, w.fair);
    Merge(unfair, w.unfair);
    result.enumerated += w.visited;
  }
  result.opt_unfair_weight = unfair.weight;
  result.unfair_witness = unfair.sets;
  if (fair.found) {
    result.feasible = true;
    result.opt_weight = fair.weight;
    result.opt_count = fair.count;
    result.witness = Evaluate(inst, fair.sets).solution;
  }
  return result;
}

bool FeasibleAtMost(const FmcInstance& inst, std::uint64_t budget) {
  std::uint64_t total = 0;
  for (int r = 1; r <= inst.k(); ++r) {
    const std::uint64_t c = Binomial(inst.m(), r);
    total = c > budget ? budget + 1 : total + c;
    if (total > budget) {
      throw BudgetExceeded("at-most-k oracle exceeds budget " + std::to_string(budget));
    }
  }
  for (int r = 1; r <= inst.k(); ++r) {
    Enumerator e(inst);
    e.Run(r, 0, 1);
    if (e.fair.found) return true;
  }
  return false;
}

}  // namespace fmc
