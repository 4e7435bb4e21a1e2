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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fairdiv/matching.hpp"
#include "support.hpp"

using namespace fairdiv;
namespace ts = testsupport;

TEST_CASE("optimal value matches brute force on random instances") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ts::RandomSpec spec;
    spec.agents = 2 + static_cast<int>(seed % 3);
    spec.goods = 4 + static_cast<int>(seed % 3);
    const Scenario s = ts::random_scenario(spec, seed);
    const TypeVector w = ts::random_types(s, spec, seed);
    for (AgentMask c = 0; c <= s.all_agents(); ++c) {
      const double expect = ts::brute_opt(s, w, c, s.all_goods());
      CHECK(opt_value(s, w, c, s.all_goods()) ==
            doctest::Approx(expect).epsilon(1e-12));
    }
    // A few good subsets too.
    const GoodMask half = s.all_goods() & 0b10101u;
    CHECK(opt_value(s, w, s.all_agents(), half) ==
          doctest::Approx(ts::brute_opt(s, w, s.all_agents(), half))
              .epsilon(1e-12));
  }
}

TEST_CASE("fixture optima") {
  const Scenario s = ts::fixture_scenario();
  const TypeVector t = ts::fixture_truth(s);
  CHECK(opt_value(s, t, s.all_agents(), s.all_goods()) == 51.0);
  CHECK(opt_value(s, t, 0b01, s.all_goods()) == 26.0);
  CHECK(opt_value(s, t, 0b10, s.all_goods()) == 26.0);
  CHECK(opt_value(s, t, 0, s.all_goods()) == 0.0);
  // Restricted to the goods of the least optimum, welfare is unchanged.
  CHECK(opt_value(s, t, s.all_agents(), ts::fixture_sigma(s).goods_mask()) ==
        51.0);
}

TEST_CASE("solve_optimal returns the lexicographically least optimum") {
  const Scenario s = ts::fixture_scenario();
  const TypeVector t = ts::fixture_truth(s);
  CHECK(solve_optimal(s, t) == ts::fixture_sigma(s));

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    ts::RandomSpec spec;
    const Scenario rs = ts::random_scenario(spec, seed);
    const TypeVector rw = ts::random_types(rs, spec, seed);
    const auto optima = ts::brute_optima(rs, rw);
    REQUIRE(!optima.empty());
    CHECK(solve_optimal(rs, rw) == optima.front());
  }
}

TEST_CASE("enumerate_optima agrees with independent enumeration") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    ts::RandomSpec spec;
    spec.agents = 3;
    spec.goods = 5;
    const Scenario s = ts::random_scenario(spec, seed);
    const TypeVector w = ts::random_types(s, spec, seed);
    const auto mine = enumerate_optima(s, w);
    const auto oracle = ts::brute_optima(s, w);
    CHECK(mine.size() == oracle.size());
    CHECK(mine == oracle);
  }
}

TEST_CASE("enumerate_optima refuses oversized instances") {
  std::vector<std::string> agents, goods;
  std::vector<int> caps;
  for (int i = 0; i < 5; ++i) {
    agents.push_back("a" + std::to_string(i));
    caps.push_back(2);
  }
  for (int g = 0; g < 9; ++g) goods.push_back("g" + std::to_string(g));
  const Scenario s(agents, goods, caps);
  const TypeVector w(5, 9);
  CHECK_THROWS_AS(enumerate_optima(s, w), size_error);
}

TEST_CASE("opt cache stores and reuses values") {
  const Scenario s = ts::fixture_scenario();
  const TypeVector t = ts::fixture_truth(s);
  OptCache cache;
  const double v = opt_value(s, t, s.all_agents(), s.all_goods(), &cache);
  CHECK(cache.size() == 1);
  double stored = 0.0;
  CHECK(cache.lookup(s.all_agents(), s.all_goods(), &stored));
  CHECK(stored == v);
  CHECK_FALSE(cache.lookup(1, s.all_goods(), &stored));
  CHECK(opt_value(s, t, s.all_agents(), s.all_goods(), &cache) == v);
  CHECK(cache.size() == 1);
}

TEST_CASE("incremental matcher keeps the optimum after every push") {
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    ts::RandomSpec spec;
    spec.agents = 4;
    spec.goods = 6;
    const Scenario s = ts::random_scenario(spec, seed);
    const TypeVector w = ts::random_types(s, spec, seed);
    const MatchingTemplate tpl(s, w, s.all_goods());
    IncrementalMatcher m(tpl);
    AgentMask pushed = 0;
    for (int a = 0; a < s.agent_count(); ++a) {
      const double total = m.push_agent(a);
      pushed |= AgentMask{1} << a;
      CHECK(total == doctest::Approx(ts::brute_opt(s, w, pushed, s.all_goods()))
                         .epsilon(1e-12));
    }
    // The reported bundles actually achieve the reported total.
    const Allocation pi(s, m.bundles());
    CHECK(value(s, pi, w) == doctest::Approx(m.total()).epsilon(1e-12));
  }
}

TEST_CASE("push order does not change the optimum") {
  for (std::uint64_t seed = 300; seed < 310; ++seed) {
    ts::RandomSpec spec;
    spec.agents = 4;
    const Scenario s = ts::random_scenario(spec, seed);
    const TypeVector w = ts::random_types(s, spec, seed);
    const MatchingTemplate tpl(s, w, s.all_goods());
    std::vector<int> order{2, 0, 3, 1};
    IncrementalMatcher m(tpl);
    double total = 0.0;
    for (int a : order) total = m.push_agent(a);
    CHECK(total ==
          doctest::Approx(opt_value(s, w, s.all_agents(), s.all_goods()))
              .epsilon(1e-12));
  }
}

TEST_CASE("snapshot and restore roll the matcher back exactly") {
  const Scenario s = ts::fixture_scenario();
  const TypeVector t = ts::fixture_truth(s);
  const MatchingTemplate tpl(s, t, s.all_goods());
  IncrementalMatcher m(tpl);
  m.push_agent(0);
  const auto snap = m.save();
  const double before = m.total();
  m.push_agent(1);
  CHECK(m.total() == 51.0);
  m.restore(snap);
  CHECK(m.total() == before);
  // Continuing after a restore reaches the same optimum again.
  CHECK(m.push_agent(1) == 51.0);
}

TEST_CASE("scored push overrides one agent's row") {
  const Scenario s = ts::fixture_scenario();
  const TypeVector t = ts::fixture_truth(s);
  const MatchingTemplate tpl(s, t, s.all_goods());
  IncrementalMatcher m(tpl);
  m.push_agent(0);
  // Push r2 with a row that only values p8.
  std::vector<double> row(8, -1.0);
  row[7] = 3.0;
  const double total = m.push_agent_scored(1, row.data());
  // r1 alone reaches 26 on p1/p4/p5, one r2 clone takes p8, the rest idle.
  CHECK(total == doctest::Approx(26.0 + 3.0).epsilon(1e-12));
}
