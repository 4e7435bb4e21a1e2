// Copyright 2026 The fairdiv Authors
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

#include "fairdiv/matching.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {
constexpr double kValueTol = 1e-9;
constexpr double kCanonicalBudget = 200000.0;
}  // namespace

bool OptCache::lookup(AgentMask agents, GoodMask goods, double* out) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = map_.find({agents, goods});
  if (it == map_.end()) return false;
  *out = it->second;
  return true;
}

void OptCache::store(AgentMask agents, GoodMask goods, double value) {
  std::lock_guard<std::mutex> lock(mu_);
  map_.emplace(std::pair<AgentMask, GoodMask>{agents, goods}, value);
}

std::size_t OptCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return map_.size();
}

double opt_value(const Scenario& s, const TypeVector& w, AgentMask coalition,
                 GoodMask goods, OptCache* cache) {
  if (coalition == 0) return 0.0;
  double cached;
  if (cache && cache->lookup(coalition, goods, &cached)) return cached;
  MatchingTemplate tpl(s, w, goods);
  IncrementalMatcher matcher(tpl);
  double total = 0.0;
  for (int a = 0; a < s.agent_count(); ++a)
    if (coalition & (AgentMask{1} << a)) total = matcher.push_agent(a);
  if (cache) cache->store(coalition, goods, total);
  return total;
}

namespace {

// Candidate bundles of one agent over the still-unallocated goods, visited
// in the lexicographic bundle order (empty first, then by ascending good
// sequence). Returns true when the visitor accepts a bundle.
bool scan_bundles(const std::vector<int>& avail, int cap,
                  std::vector<int>& prefix, std::size_t from,
                  const std::function<bool(const std::vector<int>&)>& accept) {
  if (accept(prefix)) return true;
  if (static_cast<int>(prefix.size()) == cap) return false;
  for (std::size_t i = from; i < avail.size(); ++i) {
    prefix.push_back(avail[i]);
    if (scan_bundles(avail, cap, prefix, i + 1, accept)) return true;
    prefix.pop_back();
  }
  return false;
}

double candidate_count(int avail, int cap) {
  double total = 0.0, term = 1.0;
  for (int k = 0; k <= cap && k <= avail; ++k) {
    total += term;
    term = term * (avail - k) / (k + 1);
  }
  return total;
}

}  // namespace

Allocation solve_optimal(const Scenario& s, const TypeVector& w) {
  const GoodMask all_goods = s.all_goods();
  MatchingTemplate tpl(s, w, all_goods);
  IncrementalMatcher matcher(tpl);
  for (int a = 0; a < s.agent_count(); ++a) matcher.push_agent(a);
  const double target = matcher.total();
  Allocation fallback(s, matcher.bundles());

  double budget = 0.0;
  for (int a = 0; a < s.agent_count(); ++a)
    budget += candidate_count(s.good_count(), s.capacity(a));
  if (budget > kCanonicalBudget) return fallback;

  OptCache cache;
  std::vector<std::vector<int>> chosen(s.agent_count());
  GoodMask used = 0;
  double fixed = 0.0;
  for (int a = 0; a < s.agent_count(); ++a) {
    std::vector<int> avail;
    for (int g = 0; g < s.good_count(); ++g)
      if (!(used & (GoodMask{1} << g))) avail.push_back(g);
    AgentMask rest = 0;
    for (int b = a + 1; b < s.agent_count(); ++b) rest |= AgentMask{1} << b;
    std::vector<int> prefix;
    const bool found = scan_bundles(
        avail, s.capacity(a), prefix, 0, [&](const std::vector<int>& bundle) {
          double own = 0.0;
          GoodMask bmask = 0;
          for (int g : bundle) {
            own += w(a, g);
            bmask |= GoodMask{1} << g;
          }
          const double rest_opt =
              opt_value(s, w, rest, all_goods & ~(used | bmask), &cache);
          if (std::fabs(fixed + own + rest_opt - target) > kValueTol)
            return false;
          chosen[a] = bundle;
          used |= bmask;
          fixed += own;
          return true;
        });
    if (!found)
      throw contract_error("no bundle completes an optimal allocation");
  }
  return Allocation(s, std::move(chosen));
}

std::vector<Allocation> enumerate_optima(const Scenario& s,
                                         const TypeVector& w,
                                         std::size_t limit) {
  int slots = 0;
  for (int a = 0; a < s.agent_count(); ++a) slots += s.capacity(a);
  if (s.good_count() > 8 || slots > 8)
    throw size_error("optimum enumeration is limited to 8 goods and 8 capacity slots");

  std::vector<int> free_cap(s.agent_count());
  for (int a = 0; a < s.agent_count(); ++a) free_cap[a] = s.capacity(a);
  std::vector<std::vector<int>> bundles(s.agent_count());

  double best = 0.0;
  bool collect = false;
  std::vector<Allocation> out;
  const std::function<void(int, double)> walk = [&](int g, double acc) {
    if (g == s.good_count()) {
      if (!collect) {
        best = std::max(best, acc);
      } else if (acc >= best - kValueTol) {
        out.emplace_back(s, bundles);
      }
      return;
    }
    walk(g + 1, acc);
    for (int a = 0; a < s.agent_count(); ++a) {
      if (free_cap[a] == 0) continue;
      --free_cap[a];
      bundles[a].push_back(g);
      walk(g + 1, acc + w(a, g));
      bundles[a].pop_back();
      ++free_cap[a];
    }
  };
  walk(0, 0.0);
  collect = true;
  walk(0, 0.0);
  std::sort(out.begin(), out.end());
  if (out.size() > limit) out.resize(limit);
  return out;
}

}  // namespace fairdiv
