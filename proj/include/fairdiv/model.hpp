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

#ifndef FAIRDIV_MODEL_HPP
#define FAIRDIV_MODEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fairdiv/errors.hpp"

namespace fairdiv {

using AgentMask = std::uint64_t;
using GoodMask = std::uint64_t;

/// An allocation scenario: ordered agents with per-agent capacities and
/// ordered indivisible goods. The orderings are stable and define the
/// deterministic tie-breaking used everywhere downstream. At most 64 agents
/// and 64 goods are supported (subsets are kept as bitmasks).
class Scenario {
 public:
  Scenario(std::vector<std::string> agents, std::vector<std::string> goods,
           std::vector<int> capacities);

  int agent_count() const { return static_cast<int>(agents_.size()); }
  int good_count() const { return static_cast<int>(goods_.size()); }
  const std::vector<std::string>& agents() const { return agents_; }
  const std::vector<std::string>& goods() const { return goods_; }
  const std::string& agent_id(int a) const { return agents_.at(a); }
  const std::string& good_id(int g) const { return goods_.at(g); }
  int capacity(int a) const { return capacities_.at(a); }
  const std::vector<int>& capacities() const { return capacities_; }

  /// Index lookups throw structural_error for unknown ids.
  int agent_index(const std::string& id) const;
  int good_index(const std::string& id) const;

  AgentMask all_agents() const;
  GoodMask all_goods() const;

 private:
  std::vector<std::string> agents_;
  std::vector<std::string> goods_;
  std::vector<int> capacities_;
  std::unordered_map<std::string, int> agent_index_;
  std::unordered_map<std::string, int> good_index_;
};

/// Per-agent real-valued scores over the scenario goods. A score that was
/// never set is the "not authored" sentinel -1.
class TypeVector {
 public:
  static constexpr double kNotAuthored = -1.0;

  TypeVector() : agents_(0), goods_(0) {}
  TypeVector(int agent_count, int good_count);

  int agent_count() const { return agents_; }
  int good_count() const { return goods_; }

  double operator()(int agent, int good) const {
    return scores_[static_cast<std::size_t>(agent) * goods_ + good];
  }
  void set(int agent, int good, double score);

  /// Pointer to the contiguous score row of one agent.
  const double* row(int agent) const {
    return scores_.data() + static_cast<std::size_t>(agent) * goods_;
  }

  bool operator==(const TypeVector&) const = default;

 private:
  int agents_;
  int goods_;
  std::vector<double> scores_;
};

/// Disjoint good bundles per agent, within capacities. Bundles are kept as
/// sorted good-index vectors.
class Allocation {
 public:
  Allocation() = default;
  Allocation(const Scenario& s, std::vector<std::vector<int>> bundles);

  int agent_count() const { return static_cast<int>(bundles_.size()); }
  const std::vector<int>& bundle(int agent) const { return bundles_.at(agent); }
  const std::vector<std::vector<int>>& bundles() const { return bundles_; }

  /// img(pi): mask of all allocated goods.
  GoodMask goods_mask() const { return goods_mask_; }
  std::vector<int> allocated_goods() const;
  bool empty() const;

  bool operator==(const Allocation&) const = default;
  bool operator<(const Allocation& other) const { return bundles_ < other.bundles_; }

 private:
  std::vector<std::vector<int>> bundles_;
  GoodMask goods_mask_ = 0;
};

/// The verifier's disclosure for one allocation: true scores of every agent
/// on the allocated goods, and nothing else. Queries outside the verified
/// goods are contract violations, never silent defaults.
class VerifiedView {
 public:
  VerifiedView() = default;

  int agent_count() const { return agents_; }
  GoodMask goods_mask() const { return mask_; }
  bool verified(int good) const { return (mask_ >> good) & 1u; }

  double score(int agent, int good) const;

  /// Sum of the verified scores of `agent` over a bundle of verified goods.
  double bundle_value(int agent, const std::vector<int>& bundle) const;

 private:
  friend VerifiedView verify(const TypeVector& truth, const Allocation& pi);
  int agents_ = 0;
  int goods_ = 0;
  GoodMask mask_ = 0;
  std::vector<double> scores_;  // dense, rows by agent; unverified slots poisoned
};

/// One-good clone reduction: agent i becomes capacity(i) unit-capacity
/// clones "<agent>#<k>". The clone scenario shares the goods of the base.
class OneGoodScenario {
 public:
  OneGoodScenario(const Scenario& base, Scenario clones, std::vector<int> owner);

  const Scenario& scenario() const { return clones_; }
  const Scenario& base() const { return base_; }
  /// Original agent index that clone `c` belongs to.
  int owner(int clone) const { return owner_.at(clone); }
  int clone_count() const { return static_cast<int>(owner_.size()); }

 private:
  Scenario base_;
  Scenario clones_;
  std::vector<int> owner_;
};

/// Sum over agents of the agent's scores over its bundle (additive
/// valuations). Empty allocation -> 0.
double value(const Scenario& s, const Allocation& pi, const TypeVector& w);

/// Restriction of a scenario to a coalition and a goods subset, preserving
/// the original orderings. The type vector is remapped alongside.
Scenario restrict_scenario(const Scenario& s, AgentMask coalition, GoodMask goods);
TypeVector restrict_types(const Scenario& s, const TypeVector& w, AgentMask coalition,
                          GoodMask goods);

/// Masks from id lists; unknown ids throw structural_error.
AgentMask agent_mask_of(const Scenario& s, const std::vector<std::string>& ids);
GoodMask good_mask_of(const Scenario& s, const std::vector<std::string>& ids);

std::pair<OneGoodScenario, TypeVector> to_one_good(const Scenario& s, const TypeVector& w);
Allocation from_one_good(const Allocation& alloc1, const OneGoodScenario& m);

VerifiedView verify(const TypeVector& truth, const Allocation& pi);

}  // namespace fairdiv

#endif  // FAIRDIV_MODEL_HPP
