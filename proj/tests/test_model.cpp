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
#include "fairdiv/model.hpp"
#include "support.hpp"

using namespace fairdiv;
namespace ts = testsupport;

TEST_CASE("scenario rejects malformed inputs") {
  CHECK_THROWS_AS(Scenario({"a", "a"}, {"g"}, {1, 1}), structural_error);
  CHECK_THROWS_AS(Scenario({"a"}, {"g", "g"}, {1}), structural_error);
  CHECK_THROWS_AS(Scenario({"a"}, {"g"}, {0}), structural_error);
  CHECK_THROWS_AS(Scenario({"a", "b"}, {"g"}, {1}), structural_error);

  std::vector<std::string> many_agents, one_good{"g"};
  std::vector<int> caps;
  for (int i = 0; i < 65; ++i) {
    many_agents.push_back("a" + std::to_string(i));
    caps.push_back(1);
  }
  CHECK_THROWS_AS(Scenario(many_agents, one_good, caps), structural_error);
}

TEST_CASE("scenario lookups") {
  const Scenario s = ts::fixture_scenario();
  CHECK(s.agent_index("r2") == 1);
  CHECK(s.good_index("p8") == 7);
  CHECK_THROWS_AS(s.agent_index("nope"), structural_error);
  CHECK_THROWS_AS(s.good_index("nope"), structural_error);
  CHECK(s.all_agents() == 0b11);
  CHECK(s.all_goods() == 0xff);
}

TEST_CASE("type vector sentinel and finiteness") {
  TypeVector t(2, 3);
  CHECK(t(1, 2) == TypeVector::kNotAuthored);
  t.set(1, 2, 4.5);
  CHECK(t(1, 2) == 4.5);
  CHECK_THROWS_AS(t.set(0, 0, std::nan("")), structural_error);
}

TEST_CASE("allocation validation") {
  const Scenario s = ts::fixture_scenario();
  CHECK_THROWS_AS(Allocation(s, {{0, 1}, {1}}), structural_error);   // shared good
  CHECK_THROWS_AS(Allocation(s, {{0, 1, 2, 3}, {}}), structural_error);  // capacity
  CHECK_THROWS_AS(Allocation(s, {{9}, {}}), structural_error);      // range
  CHECK_THROWS_AS(Allocation(s, {{0}}), structural_error);          // shape

  const Allocation pi(s, {{3, 0, 1}, {7, 4, 6}});
  CHECK(pi.bundle(0) == std::vector<int>{0, 1, 3});  // bundles are sorted
  CHECK(pi.goods_mask() == ((1u << 0) | (1u << 1) | (1u << 3) | (1u << 4) |
                            (1u << 6) | (1u << 7)));
}

TEST_CASE("fixture values") {
  const Scenario s = ts::fixture_scenario();
  const TypeVector t = ts::fixture_truth(s);
  CHECK(value(s, ts::fixture_sigma(s), t) == 51.0);
  CHECK(value(s, ts::fixture_sigma_hat(s), t) == 51.0);
}

TEST_CASE("restriction keeps orderings and scores") {
  const Scenario s = ts::fixture_scenario();
  const TypeVector t = ts::fixture_truth(s);
  const AgentMask coalition = 0b10;            // r2 alone
  const GoodMask goods = 0b11110000;           // p5..p8
  const Scenario r = restrict_scenario(s, coalition, goods);
  CHECK(r.agent_count() == 1);
  CHECK(r.agents()[0] == "r2");
  CHECK(r.capacity(0) == 3);
  CHECK(r.goods() == std::vector<std::string>{"p5", "p6", "p7", "p8"});
  const TypeVector rt = restrict_types(s, t, coalition, goods);
  CHECK(rt(0, 0) == 8.0);   // p5
  CHECK(rt(0, 3) == 10.0);  // p8
}

TEST_CASE("restricting the optimum to a good subset via an oracle") {
  // The optimum of a restriction never exceeds the unrestricted optimum,
  // and restricting to all goods changes nothing.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ts::RandomSpec spec;
    const Scenario s = ts::random_scenario(spec, seed);
    const TypeVector w = ts::random_types(s, spec, seed);
    const double full = ts::brute_opt(s, w, s.all_agents(), s.all_goods());
    CHECK(opt_value(s, w, s.all_agents(), s.all_goods()) ==
          doctest::Approx(full).epsilon(1e-12));
    const GoodMask half = s.all_goods() >> 1;
    CHECK(ts::brute_opt(s, w, s.all_agents(), half) <= full + 1e-9);
  }
}

TEST_CASE("one-good clone reduction preserves optima") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const ts::RandomSpec spec;
    const Scenario s = ts::random_scenario(spec, seed);
    const TypeVector w = ts::random_types(s, spec, seed);
    const auto [m, w1] = to_one_good(s, w);
    CHECK(m.scenario().agent_count() ==
          m.clone_count());
    for (int c = 0; c < m.clone_count(); ++c)
      CHECK(m.scenario().capacity(c) == 1);
    // Same optimal welfare in both formulations.
    const double base = ts::brute_opt(s, w, s.all_agents(), s.all_goods());
    const double clones = ts::brute_opt(m.scenario(), w1,
                                        m.scenario().all_agents(),
                                        m.scenario().all_goods());
    CHECK(base == doctest::Approx(clones).epsilon(1e-12));
    // Mapping a clone allocation back lands in the base scenario.
    const Allocation a1 = solve_optimal(m.scenario(), w1);
    const Allocation back = from_one_good(a1, m);
    CHECK(value(s, back, w) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("verifier discloses exactly the allocated goods") {
  const Scenario s = ts::fixture_scenario();
  const TypeVector t = ts::fixture_truth(s);
  const Allocation pi = ts::fixture_sigma(s);  // img = p1 p2 p4 p5 p7 p8
  const VerifiedView view = verify(t, pi);
  CHECK(view.score(0, 0) == 10.0);
  CHECK(view.score(1, 0) == TypeVector::kNotAuthored);  // true -1 disclosed
  CHECK(view.verified(3));
  CHECK_FALSE(view.verified(2));
  CHECK_THROWS_AS(view.score(0, 2), contract_error);  // p3 not allocated
  CHECK(view.bundle_value(0, pi.bundle(0)) == 25.0);
  CHECK(view.bundle_value(1, pi.bundle(1)) == 26.0);
}
