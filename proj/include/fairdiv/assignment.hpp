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

#ifndef FAIRDIV_ASSIGNMENT_HPP
#define FAIRDIV_ASSIGNMENT_HPP

#include <cstdint>
#include <vector>

#include "fairdiv/model.hpp"

namespace fairdiv {

/// Immutable per-(scenario, types, goods subset) adjacency used to run many
/// matchings over the same goods. Only strictly positive scores become
/// edges; an optimum never needs a non-positive good because leaving a
/// capacity slot empty is always feasible.
class MatchingTemplate {
 public:
  MatchingTemplate(const Scenario& s, const TypeVector& w, GoodMask goods);

  const Scenario& scenario() const { return *scenario_; }
  int column_count() const { return static_cast<int>(col_good_.size()); }
  int column_good(int col) const { return col_good_[col]; }
  GoodMask goods_mask() const { return goods_; }

 private:
  friend class IncrementalMatcher;
  const Scenario* scenario_;
  GoodMask goods_;
  std::vector<int> col_good_;               // column -> original good index
  std::vector<int> col_of_good_;            // original good index -> column or -1
  std::vector<std::pair<int, double>> adj_; // (column, score), grouped by agent
  std::vector<int> agent_adj_begin_;        // agent -> range into adj_
};

/// Maximum-weight b-matching of agent clones to goods, built one agent at a
/// time by successive shortest augmenting paths over reduced costs. The
/// matching is optimal for the set of agents inserted so far, which makes a
/// permutation sweep cost one solve instead of |A| solves.
class IncrementalMatcher {
 public:
  explicit IncrementalMatcher(const MatchingTemplate& tpl);

  void reset();

  /// Inserts capacity(agent) unit clones scoring goods by the template's
  /// type vector. Returns the resulting total matching value.
  double push_agent(int agent);

  /// Same, but the clones score goods by `scores` (a row over the original
  /// goods). Used when one agent's declared row is replaced by its verified
  /// one.
  double push_agent_scored(int agent, const double* scores);

  double total() const { return total_; }

  /// Bundles (original good indices, sorted) of every scenario agent;
  /// agents never pushed have empty bundles.
  std::vector<std::vector<int>> bundles() const;

  struct Snapshot {
    double total;
    std::size_t clone_count;
    std::size_t adj_size;
    std::vector<int> owner;
    std::vector<double> price;
    std::vector<int> clone_col;
    std::vector<double> clone_potential;
  };
  Snapshot save() const;
  void restore(const Snapshot& snap);

 private:
  struct Clone {
    int agent;
    int col;           // matched column, or the private idle column
    int adj_begin;
    int adj_end;
  };

  int push_clone(int agent, const std::pair<int, double>* edges, int degree);
  double edge_score(int clone, int col) const;

  const MatchingTemplate* tpl_;
  int real_cols_;
  std::vector<Clone> clones_;
  std::vector<std::pair<int, double>> clone_adj_;  // per-clone (column, score)
  std::vector<int> owner_;        // real column -> clone index or -1
  std::vector<double> price_;     // real column potentials
  std::vector<double> upot_;      // clone potentials
  double total_ = 0.0;

  // Dijkstra scratch, epoch-stamped so reset is O(1) per search.
  std::vector<double> dist_;
  std::vector<int> prev_col_;
  std::vector<std::uint32_t> seen_epoch_, done_epoch_;
  std::vector<int> touched_;
  std::vector<std::pair<double, int>> heap_;
  std::uint32_t epoch_ = 0;
};

}  // namespace fairdiv

#endif  // FAIRDIV_ASSIGNMENT_HPP
