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

// Independent oracles for the unit tests. Everything here recomputes
// results by direct enumeration, sharing no code with the library's
// solvers, so a bug in the incremental matcher cannot hide itself.

#ifndef FAIRDIV_TESTS_SUPPORT_HPP
#define FAIRDIV_TESTS_SUPPORT_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fairdiv/model.hpp"
#include "fairdiv/rng.hpp"

namespace testsupport {

using fairdiv::AgentMask;
using fairdiv::Allocation;
using fairdiv::GoodMask;
using fairdiv::Scenario;
using fairdiv::TypeVector;

/// Walks every feasible allocation of the goods in `goods` among the
/// agents in `coalition` (each good to one member or nobody) and calls the
/// visitor with the per-agent bundles and the total declared value.
inline void enumerate_allocations(
    const Scenario& s, const TypeVector& w, AgentMask coalition, GoodMask goods,
    const std::function<void(const std::vector<std::vector<int>>&, double)>& visit) {
  std::vector<int> members, glist, cap;
  for (int a = 0; a < s.agent_count(); ++a)
    if (coalition & (AgentMask{1} << a)) {
      members.push_back(a);
      cap.push_back(s.capacity(a));
    }
  for (int g = 0; g < s.good_count(); ++g)
    if (goods & (GoodMask{1} << g)) glist.push_back(g);

  std::vector<std::vector<int>> bundles(s.agent_count());
  const std::function<void(std::size_t, double)> rec = [&](std::size_t k,
                                                           double acc) {
    if (k == glist.size()) {
      visit(bundles, acc);
      return;
    }
    const int g = glist[k];
    rec(k + 1, acc);
    for (std::size_t m = 0; m < members.size(); ++m) {
      if (cap[m] == 0) continue;
      --cap[m];
      bundles[members[m]].push_back(g);
      rec(k + 1, acc + w(members[m], g));
      bundles[members[m]].pop_back();
      ++cap[m];
    }
  };
  rec(0, 0.0);
}

/// Brute-force optimal welfare of a coalition over a good subset.
inline double brute_opt(const Scenario& s, const TypeVector& w,
                        AgentMask coalition, GoodMask goods) {
  double best = 0.0;
  enumerate_allocations(s, w, coalition, goods,
                        [&](const std::vector<std::vector<int>>&, double v) {
                          best = std::max(best, v);
                        });
  return best;
}

/// All brute-force optimal allocations, lexicographically sorted.
inline std::vector<Allocation> brute_optima(const Scenario& s,
                                            const TypeVector& w,
                                            double tol = 1e-9) {
  const double best = brute_opt(s, w, s.all_agents(), s.all_goods());
  std::vector<Allocation> out;
  enumerate_allocations(
      s, w, s.all_agents(), s.all_goods(),
      [&](const std::vector<std::vector<int>>& bundles, double v) {
        if (v >= best - tol) out.emplace_back(s, bundles);
      });
  std::sort(out.begin(), out.end());
  return out;
}

/// Shapley value by full permutation enumeration (factorial, keep n small).
inline std::vector<double> brute_shapley(
    int n, const std::function<double(AgentMask)>& worth) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::vector<double> sum(n, 0.0);
  std::size_t count = 0;
  do {
    AgentMask cur = 0;
    double prev = 0.0;
    for (int k = 0; k < n; ++k) {
      cur |= AgentMask{1} << perm[k];
      const double v = worth(cur);
      sum[perm[k]] += v - prev;
      prev = v;
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (double& x : sum) x /= static_cast<double>(count);
  return sum;
}

/// Direct coalition-sum payment oracle: the share of agent i averages,
/// with the usual order coefficients, the brute-force optimum over the
/// allocated goods where i's declared row is replaced by its true one,
/// minus the optimum of the coalition without i.
inline std::vector<double> brute_shares(const Scenario& s, const Allocation& pi,
                                        const TypeVector& declared,
                                        const TypeVector& truth) {
  const int n = s.agent_count();
  const GoodMask img = pi.goods_mask();
  std::vector<double> fact(n + 1, 1.0);
  for (int k = 1; k <= n; ++k) fact[k] = fact[k - 1] * k;

  std::vector<double> shares(n, 0.0);
  for (int i = 0; i < n; ++i) {
    TypeVector sub = declared;
    for (int g = 0; g < s.good_count(); ++g) sub.set(i, g, truth(i, g));
    for (AgentMask c = 1; c < (AgentMask{1} << n); ++c) {
      if (!(c & (AgentMask{1} << i))) continue;
      const int size = std::popcount(c);
      const double coeff = fact[n - size] * fact[size - 1] / fact[n];
      const double with_i = brute_opt(s, sub, c, img);
      const double without_i = brute_opt(s, declared, c & ~(AgentMask{1} << i), img);
      shares[i] += coeff * (with_i - without_i);
    }
  }
  return shares;
}

/// Seeded random instance: integer scores in [-1, 10] with the given
/// authorship density, -1 meaning not authored.
struct RandomSpec {
  int agents = 3;
  int goods = 5;
  int max_capacity = 2;
  double density = 0.7;
};

inline Scenario random_scenario(const RandomSpec& spec, std::uint64_t seed) {
  fairdiv::SplitMix rng(seed, 1, 0);
  std::vector<std::string> aid, gid;
  std::vector<int> caps;
  for (int a = 0; a < spec.agents; ++a) {
    aid.push_back("a" + std::to_string(a));
    caps.push_back(1 + static_cast<int>(rng.next_below(
                           static_cast<std::uint32_t>(spec.max_capacity))));
  }
  for (int g = 0; g < spec.goods; ++g) gid.push_back("g" + std::to_string(g));
  return Scenario(aid, gid, caps);
}

inline TypeVector random_types(const Scenario& s, const RandomSpec& spec,
                               std::uint64_t seed) {
  fairdiv::SplitMix rng(seed, 2, 0);
  TypeVector t(s.agent_count(), s.good_count());
  for (int a = 0; a < s.agent_count(); ++a)
    for (int g = 0; g < s.good_count(); ++g)
      if (rng.next_unit() < spec.density)
        t.set(a, g, static_cast<double>(rng.next_below(11)));
  return t;
}

/// The worked reference instance used across the suite: two collectors
/// sharing interest in a middle band of goods.
inline Scenario fixture_scenario() {
  return Scenario({"r1", "r2"},
                  {"p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8"}, {3, 3});
}

inline TypeVector fixture_truth(const Scenario& s) {
  TypeVector t(2, 8);
  const double r1[8] = {10, 7, 7, 8, 8, -1, -1, -1};
  const double r2[8] = {-1, -1, -1, 8, 8, 7, 8, 10};
  for (int g = 0; g < 8; ++g) {
    if (r1[g] >= 0) t.set(0, g, r1[g]);
    if (r2[g] >= 0) t.set(1, g, r2[g]);
  }
  return t;
}

inline Allocation fixture_sigma(const Scenario& s) {
  // {p1, p2, p4} / {p5, p7, p8}, the lexicographically least optimum.
  return Allocation(s, {{0, 1, 3}, {4, 6, 7}});
}

inline Allocation fixture_sigma_hat(const Scenario& s) {
  // {p1, p4, p5} / {p6, p7, p8}, another optimum of value 51.
  return Allocation(s, {{0, 3, 4}, {5, 6, 7}});
}

}  // namespace testsupport

#endif  // FAIRDIV_TESTS_SUPPORT_HPP
