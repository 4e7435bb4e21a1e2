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

#include "fairdiv/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fairdiv {

namespace {
constexpr int kMaxAgents = 64;
constexpr int kMaxGoods = 64;
}  // namespace

Scenario::Scenario(std::vector<std::string> agents, std::vector<std::string> goods,
                   std::vector<int> capacities)
    : agents_(std::move(agents)), goods_(std::move(goods)), capacities_(std::move(capacities)) {
  if (agents_.size() > kMaxAgents)
    throw structural_error("scenario exceeds the 64-agent limit");
  if (goods_.size() > kMaxGoods)
    throw structural_error("scenario exceeds the 64-good limit");
  if (capacities_.size() != agents_.size())
    throw structural_error("capacity list does not match the agent list");
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    if (capacities_[i] < 1)
      throw structural_error("capacity of agent '" + agents_[i] + "' must be >= 1");
    if (!agent_index_.emplace(agents_[i], static_cast<int>(i)).second)
      throw structural_error("duplicate agent id '" + agents_[i] + "'");
  }
  for (std::size_t g = 0; g < goods_.size(); ++g) {
    if (!good_index_.emplace(goods_[g], static_cast<int>(g)).second)
      throw structural_error("duplicate good id '" + goods_[g] + "'");
  }
}

int Scenario::agent_index(const std::string& id) const {
  auto it = agent_index_.find(id);
  if (it == agent_index_.end()) throw structural_error("unknown agent id '" + id + "'");
  return it->second;
}

int Scenario::good_index(const std::string& id) const {
  auto it = good_index_.find(id);
  if (it == good_index_.end()) throw structural_error("unknown good id '" + id + "'");
  return it->second;
}

AgentMask Scenario::all_agents() const {
  return agent_count() == 64 ? ~AgentMask{0} : (AgentMask{1} << agent_count()) - 1;
}

GoodMask Scenario::all_goods() const {
  return good_count() == 64 ? ~GoodMask{0} : (GoodMask{1} << good_count()) - 1;
}

TypeVector::TypeVector(int agent_count, int good_count)
    : agents_(agent_count),
      goods_(good_count),
      scores_(static_cast<std::size_t>(agent_count) * good_count, kNotAuthored) {}

void TypeVector::set(int agent, int good, double score) {
  if (agent < 0 || agent >= agents_ || good < 0 || good >= goods_)
    throw structural_error("score index out of range");
  if (!std::isfinite(score)) throw structural_error("scores must be finite");
  scores_[static_cast<std::size_t>(agent) * goods_ + good] = score;
}

Allocation::Allocation(const Scenario& s, std::vector<std::vector<int>> bundles)
    : bundles_(std::move(bundles)) {
  if (static_cast<int>(bundles_.size()) != s.agent_count())
    throw structural_error("allocation must have one bundle per agent");
  for (int a = 0; a < s.agent_count(); ++a) {
    auto& b = bundles_[a];
    std::sort(b.begin(), b.end());
    if (static_cast<int>(b.size()) > s.capacity(a))
      throw structural_error("bundle of agent '" + s.agent_id(a) + "' exceeds its capacity");
    for (int g : b) {
      if (g < 0 || g >= s.good_count())
        throw structural_error("allocated good index out of range");
      if ((goods_mask_ >> g) & 1u)
        throw structural_error("good '" + s.good_id(g) + "' allocated twice");
      goods_mask_ |= GoodMask{1} << g;
    }
  }
}

std::vector<int> Allocation::allocated_goods() const {
  std::vector<int> out;
  for (int g = 0; g < 64; ++g)
    if ((goods_mask_ >> g) & 1u) out.push_back(g);
  return out;
}

bool Allocation::empty() const { return goods_mask_ == 0; }

double VerifiedView::score(int agent, int good) const {
  if (agent < 0 || agent >= agents_)
    throw structural_error("unknown agent in verified view");
  if (good < 0 || good >= goods_ || !verified(good))
    throw contract_error("queried a good outside the verified set");
  return scores_[static_cast<std::size_t>(agent) * goods_ + good];
}

double VerifiedView::bundle_value(int agent, const std::vector<int>& bundle) const {
  double total = 0.0;
  for (int g : bundle) total += score(agent, g);
  return total;
}

OneGoodScenario::OneGoodScenario(const Scenario& base, Scenario clones, std::vector<int> owner)
    : base_(base), clones_(std::move(clones)), owner_(std::move(owner)) {}

double value(const Scenario& s, const Allocation& pi, const TypeVector& w) {
  if (pi.agent_count() != s.agent_count() || w.agent_count() != s.agent_count() ||
      w.good_count() != s.good_count())
    throw structural_error("allocation/type vector do not match the scenario");
  double total = 0.0;
  for (int a = 0; a < s.agent_count(); ++a)
    for (int g : pi.bundle(a)) total += w(a, g);
  return total;
}

Scenario restrict_scenario(const Scenario& s, AgentMask coalition, GoodMask goods) {
  if (coalition & ~s.all_agents()) throw structural_error("coalition outside the scenario");
  if (goods & ~s.all_goods()) throw structural_error("goods subset outside the scenario");
  std::vector<std::string> agents, kept_goods;
  std::vector<int> caps;
  for (int a = 0; a < s.agent_count(); ++a) {
    if ((coalition >> a) & 1u) {
      agents.push_back(s.agent_id(a));
      caps.push_back(s.capacity(a));
    }
  }
  for (int g = 0; g < s.good_count(); ++g)
    if ((goods >> g) & 1u) kept_goods.push_back(s.good_id(g));
  return Scenario(std::move(agents), std::move(kept_goods), std::move(caps));
}

TypeVector restrict_types(const Scenario& s, const TypeVector& w, AgentMask coalition,
                          GoodMask goods) {
  if (coalition & ~s.all_agents()) throw structural_error("coalition outside the scenario");
  if (goods & ~s.all_goods()) throw structural_error("goods subset outside the scenario");
  std::vector<int> agent_map, good_map;
  for (int a = 0; a < s.agent_count(); ++a)
    if ((coalition >> a) & 1u) agent_map.push_back(a);
  for (int g = 0; g < s.good_count(); ++g)
    if ((goods >> g) & 1u) good_map.push_back(g);
  TypeVector out(static_cast<int>(agent_map.size()), static_cast<int>(good_map.size()));
  for (std::size_t i = 0; i < agent_map.size(); ++i)
    for (std::size_t j = 0; j < good_map.size(); ++j)
      out.set(static_cast<int>(i), static_cast<int>(j), w(agent_map[i], good_map[j]));
  return out;
}

AgentMask agent_mask_of(const Scenario& s, const std::vector<std::string>& ids) {
  AgentMask m = 0;
  for (const auto& id : ids) m |= AgentMask{1} << s.agent_index(id);
  return m;
}

GoodMask good_mask_of(const Scenario& s, const std::vector<std::string>& ids) {
  GoodMask m = 0;
  for (const auto& id : ids) m |= GoodMask{1} << s.good_index(id);
  return m;
}

std::pair<OneGoodScenario, TypeVector> to_one_good(const Scenario& s, const TypeVector& w) {
  if (w.agent_count() != s.agent_count() || w.good_count() != s.good_count())
    throw structural_error("type vector does not match the scenario");
  std::vector<std::string> clone_ids;
  std::vector<int> owner;
  for (int a = 0; a < s.agent_count(); ++a) {
    for (int k = 1; k <= s.capacity(a); ++k) {
      clone_ids.push_back(s.agent_id(a) + "#" + std::to_string(k));
      owner.push_back(a);
    }
  }
  std::vector<int> unit(clone_ids.size(), 1);
  Scenario clones(std::move(clone_ids), s.goods(), std::move(unit));
  TypeVector w1(clones.agent_count(), s.good_count());
  for (int c = 0; c < clones.agent_count(); ++c)
    for (int g = 0; g < s.good_count(); ++g) w1.set(c, g, w(owner[c], g));
  return {OneGoodScenario(s, std::move(clones), std::move(owner)), std::move(w1)};
}

Allocation from_one_good(const Allocation& alloc1, const OneGoodScenario& m) {
  if (alloc1.agent_count() != m.clone_count())
    throw structural_error("one-good allocation does not match the clone scenario");
  std::vector<std::vector<int>> bundles(m.base().agent_count());
  for (int c = 0; c < m.clone_count(); ++c)
    for (int g : alloc1.bundle(c)) bundles[m.owner(c)].push_back(g);
  return Allocation(m.base(), std::move(bundles));
}

VerifiedView verify(const TypeVector& truth, const Allocation& pi) {
  VerifiedView view;
  view.agents_ = truth.agent_count();
  view.goods_ = truth.good_count();
  view.mask_ = pi.goods_mask();
  view.scores_.assign(static_cast<std::size_t>(view.agents_) * view.goods_,
                      std::numeric_limits<double>::quiet_NaN());
  for (int a = 0; a < view.agents_; ++a)
    for (int g = 0; g < view.goods_; ++g)
      if (view.verified(g))
        view.scores_[static_cast<std::size_t>(a) * view.goods_ + g] = truth(a, g);
  return view;
}

}  // namespace fairdiv
