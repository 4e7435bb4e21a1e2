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

#include "fairdiv/io.hpp"
#include "fairdiv/matching.hpp"
#include "support.hpp"

using namespace fairdiv;
namespace ts = testsupport;

namespace {

const char* kFixtureJson = R"({
  "agents": [{"id": "r1", "capacity": 3}, {"id": "r2", "capacity": 3}],
  "goods": ["p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8"],
  "declared": {
    "r1": {"p1": 10, "p2": 7, "p3": 7, "p4": 8, "p5": 8},
    "r2": {"p4": 8, "p5": 8, "p6": 7, "p7": 8, "p8": 10}
  },
  "true_scores": {
    "r1": {"p1": 10, "p2": 7, "p3": 7, "p4": 8, "p5": 8},
    "r2": {"p4": 8, "p5": 8, "p6": 7, "p7": 8, "p8": 10}
  }
})";

}  // namespace

TEST_CASE("parsing the reference instance") {
  const Instance inst = parse_instance(kFixtureJson);
  CHECK(inst.scenario.agent_count() == 2);
  CHECK(inst.scenario.capacity(0) == 3);
  CHECK(inst.declared(0, 0) == 10.0);
  CHECK(inst.declared(1, 0) == TypeVector::kNotAuthored);
  REQUIRE(inst.truth.has_value());
  CHECK((*inst.truth)(1, 7) == 10.0);
  CHECK(opt_value(inst.scenario, inst.declared, inst.scenario.all_agents(),
                  inst.scenario.all_goods()) == 51.0);
}

TEST_CASE("serialize then parse is lossless") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ts::RandomSpec spec;
    const Scenario s = ts::random_scenario(spec, seed);
    const TypeVector declared = ts::random_types(s, spec, seed);
    const TypeVector truth = ts::random_types(s, spec, seed + 1000);
    const Instance inst{s, declared, truth};
    const std::string text = serialize_instance(inst);
    const Instance back = parse_instance(text);
    CHECK(back.scenario.agents() == s.agents());
    CHECK(back.scenario.goods() == s.goods());
    CHECK(back.scenario.capacities() == s.capacities());
    CHECK(back.declared == declared);
    REQUIRE(back.truth.has_value());
    CHECK(*back.truth == truth);
    // Byte-reproducible output.
    CHECK(serialize_instance(back) == text);
    // The sentinel is never written.
    CHECK(text.find("-1") == std::string::npos);
  }
}

TEST_CASE("parse diagnostics name the offending element") {
  const auto fails_with = [](const std::string& text, const char* needle) {
    try {
      parse_instance(text);
      FAIL_CHECK("expected parse_error for: " << needle);
    } catch (const parse_error& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                    e.what());
    }
  };
  fails_with("{", "invalid JSON");
  fails_with("[]", "top level");
  fails_with(R"({"agents": [], "goods": []})", "agents");
  fails_with(R"({"agents": [{"id": "a"}], "goods": ["g"]})", "declared");
  fails_with(
      R"({"agents": [{"id": "a", "capacity": 0}], "goods": [], "declared": {}})",
      "capacity");
  fails_with(
      R"({"agents": [{"id": "a"}], "goods": ["g"], "declared": {"b": {}}})",
      "unknown agent 'b'");
  fails_with(
      R"({"agents": [{"id": "a"}], "goods": ["g"], "declared": {"a": {"x": 1}}})",
      "unknown good 'x'");
  fails_with(
      R"({"agents": [{"id": "a"}], "goods": ["g"], "declared": {"a": {"g": "hi"}}})",
      "must be a number");
  fails_with(
      R"({"agents": [{"id": "a"}, {"id": "a"}], "goods": [], "declared": {}})",
      "duplicate agent");
}

TEST_CASE("allocation json round trip") {
  const Scenario s = ts::fixture_scenario();
  const Allocation pi = ts::fixture_sigma(s);
  const auto j = allocation_to_json(s, pi);
  CHECK(j["r1"] == nlohmann::ordered_json({"p1", "p2", "p4"}));
  CHECK(allocation_from_json(s, j) == pi);
}

TEST_CASE("payment report serialization") {
  const Scenario s = ts::fixture_scenario();
  const TypeVector t = ts::fixture_truth(s);
  const Allocation pi = ts::fixture_sigma(s);
  const PaymentReport rep = pay_exact(s, pi, t, verify(t, pi));
  const auto j = payment_report_to_json(s, "exact", rep);
  CHECK(j["rule"] == "exact");
  CHECK(j["payments"]["r1"].get<double>() == doctest::Approx(0.5));
  CHECK(j["utilities"]["r2"].get<double>() == doctest::Approx(25.5));
  CHECK(j["structure_value"].get<double>() == 51.0);
  // Identical input, identical bytes.
  CHECK(payment_report_to_json(s, "exact", rep).dump() == j.dump());
}

TEST_CASE("file loading errors carry the path") {
  try {
    load_instance("/nonexistent/file.json");
    FAIL_CHECK("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(std::string(e.what()).find("/nonexistent/file.json") !=
          std::string::npos);
  }
}
