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

#include "fairdiv/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

using json = nlohmann::ordered_json;

TypeVector parse_scores(const Scenario& s, const json& j, const char* field) {
  TypeVector t(s.agent_count(), s.good_count());
  if (!j.is_object())
    throw parse_error(std::string(field) + " must be an object keyed by agent id");
  for (const auto& [agent_id, row] : j.items()) {
    const int a = [&] {
      try {
        return s.agent_index(agent_id);
      } catch (const structural_error&) {
        throw parse_error(std::string(field) + " names unknown agent '" +
                          agent_id + "'");
      }
    }();
    if (!row.is_object())
      throw parse_error(std::string(field) + "." + agent_id +
                        " must be an object keyed by good id");
    for (const auto& [good_id, score] : row.items()) {
      const int g = [&] {
        try {
          return s.good_index(good_id);
        } catch (const structural_error&) {
          throw parse_error(std::string(field) + "." + agent_id +
                            " names unknown good '" + good_id + "'");
        }
      }();
      if (!score.is_number())
        throw parse_error(std::string(field) + "." + agent_id + "." + good_id +
                          " must be a number");
      const double v = score.get<double>();
      if (!std::isfinite(v))
        throw parse_error(std::string(field) + "." + agent_id + "." + good_id +
                          " must be finite");
      t.set(a, g, v);
    }
  }
  return t;
}

json scores_to_json(const Scenario& s, const TypeVector& t) {
  json out = json::object();
  for (int a = 0; a < s.agent_count(); ++a) {
    json row = json::object();
    for (int g = 0; g < s.good_count(); ++g)
      if (t(a, g) != TypeVector::kNotAuthored) row[s.good_id(g)] = t(a, g);
    if (!row.empty()) out[s.agent_id(a)] = std::move(row);
  }
  return out;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("top level must be an object");
  if (!j.contains("agents") || !j["agents"].is_array() || j["agents"].empty())
    throw parse_error("'agents' must be a non-empty array");
  if (!j.contains("goods") || !j["goods"].is_array())
    throw parse_error("'goods' must be an array");

  std::vector<std::string> agents;
  std::vector<int> caps;
  for (const auto& a : j["agents"]) {
    if (!a.is_object() || !a.contains("id") || !a["id"].is_string())
      throw parse_error("each agent needs a string 'id'");
    agents.push_back(a["id"].get<std::string>());
    int cap = 1;
    if (a.contains("capacity")) {
      if (!a["capacity"].is_number_integer() || a["capacity"].get<int>() < 1)
        throw parse_error("agent '" + agents.back() +
                          "' capacity must be a positive integer");
      cap = a["capacity"].get<int>();
    }
    caps.push_back(cap);
  }
  std::vector<std::string> goods;
  for (const auto& g : j["goods"]) {
    if (!g.is_string()) throw parse_error("'goods' entries must be strings");
    goods.push_back(g.get<std::string>());
  }

  Scenario scenario = [&] {
    try {
      return Scenario(std::move(agents), std::move(goods), std::move(caps));
    } catch (const std::exception& e) {
      throw parse_error(e.what());
    }
  }();

  if (!j.contains("declared"))
    throw parse_error("'declared' scores are required");
  TypeVector declared = parse_scores(scenario, j["declared"], "declared");
  std::optional<TypeVector> truth;
  if (j.contains("true_scores"))
    truth = parse_scores(scenario, j["true_scores"], "true_scores");
  return Instance{std::move(scenario), std::move(declared), std::move(truth)};
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

std::string serialize_instance(const Instance& inst) {
  const Scenario& s = inst.scenario;
  json j = json::object();
  j["agents"] = json::array();
  for (int a = 0; a < s.agent_count(); ++a)
    j["agents"].push_back({{"id", s.agent_id(a)}, {"capacity", s.capacity(a)}});
  j["goods"] = json::array();
  for (int g = 0; g < s.good_count(); ++g) j["goods"].push_back(s.good_id(g));
  j["declared"] = scores_to_json(s, inst.declared);
  if (inst.truth) j["true_scores"] = scores_to_json(s, *inst.truth);
  return j.dump(2) + "\n";
}

nlohmann::ordered_json allocation_to_json(const Scenario& s,
                                          const Allocation& pi) {
  json out = json::object();
  for (int a = 0; a < s.agent_count(); ++a) {
    json bundle = json::array();
    for (int g : pi.bundle(a)) bundle.push_back(s.good_id(g));
    out[s.agent_id(a)] = std::move(bundle);
  }
  return out;
}

Allocation allocation_from_json(const Scenario& s,
                                const nlohmann::ordered_json& j) {
  if (!j.is_object())
    throw parse_error("allocation must be an object keyed by agent id");
  std::vector<std::vector<int>> bundles(s.agent_count());
  for (const auto& [agent_id, bundle] : j.items()) {
    const int a = s.agent_index(agent_id);
    if (!bundle.is_array())
      throw parse_error("bundle of '" + agent_id + "' must be an array");
    for (const auto& g : bundle)
      bundles[a].push_back(s.good_index(g.get<std::string>()));
  }
  return Allocation(s, std::move(bundles));
}

nlohmann::ordered_json payment_report_to_json(const Scenario& s,
                                              const std::string& rule,
                                              const PaymentReport& rep) {
  json out = json::object();
  out["rule"] = rule;
  const auto per_agent = [&](const std::vector<double>& v) {
    json o = json::object();
    for (int a = 0; a < s.agent_count(); ++a) o[s.agent_id(a)] = v[a];
    return o;
  };
  out["verified_value"] = per_agent(rep.verified_value);
  out["shares"] = per_agent(rep.shares);
  out["payments"] = per_agent(rep.payments);
  out["utilities"] = per_agent(rep.utilities);
  out["structure_value"] = rep.structure_value;
  out["opt_restricted"] = rep.opt_restricted;
  out["normalizer"] = rep.normalizer;
  return out;
}

}  // namespace fairdiv
