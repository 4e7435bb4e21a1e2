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

#include "fairdiv/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fairdiv/errors.hpp"

namespace fairdiv {

MatchingTemplate::MatchingTemplate(const Scenario& s, const TypeVector& w,
                                   GoodMask goods)
    : scenario_(&s), goods_(goods) {
  const int m = s.good_count();
  col_of_good_.assign(m, -1);
  for (int g = 0; g < m; ++g) {
    if (goods & (GoodMask{1} << g)) {
      col_of_good_[g] = static_cast<int>(col_good_.size());
      col_good_.push_back(g);
    }
  }
  const int n = s.agent_count();
  agent_adj_begin_.assign(n + 1, 0);
  for (int a = 0; a < n; ++a) {
    agent_adj_begin_[a] = static_cast<int>(adj_.size());
    const double* row = w.row(a);
    for (int col = 0; col < static_cast<int>(col_good_.size()); ++col) {
      const double sc = row[col_good_[col]];
      if (sc > 0.0) adj_.emplace_back(col, sc);
    }
  }
  agent_adj_begin_[n] = static_cast<int>(adj_.size());
}

IncrementalMatcher::IncrementalMatcher(const MatchingTemplate& tpl)
    : tpl_(&tpl), real_cols_(tpl.column_count()) {
  owner_.assign(real_cols_, -1);
  price_.assign(real_cols_, 0.0);
  dist_.assign(real_cols_, 0.0);
  prev_col_.assign(real_cols_, -2);
  seen_epoch_.assign(real_cols_, 0);
  done_epoch_.assign(real_cols_, 0);
}

void IncrementalMatcher::reset() {
  clones_.clear();
  clone_adj_.clear();
  std::fill(owner_.begin(), owner_.end(), -1);
  std::fill(price_.begin(), price_.end(), 0.0);
  upot_.clear();
  total_ = 0.0;
}

double IncrementalMatcher::edge_score(int clone, int col) const {
  const Clone& c = clones_[clone];
  for (int e = c.adj_begin; e < c.adj_end; ++e)
    if (clone_adj_[e].first == col) return clone_adj_[e].second;
  throw contract_error("matched edge missing from clone adjacency");
}

int IncrementalMatcher::push_clone(int agent,
                                   const std::pair<int, double>* edges,
                                   int degree) {
  const int r0 = static_cast<int>(clones_.size());
  const int adj_begin = static_cast<int>(clone_adj_.size());
  clone_adj_.insert(clone_adj_.end(), edges, edges + degree);
  clones_.push_back(Clone{agent, -1, adj_begin,
                          static_cast<int>(clone_adj_.size())});

  // Row potential so every incident reduced cost is nonnegative and at
  // least one is zero; staying idle costs zero.
  double u0 = 0.0;
  for (int e = adj_begin; e < clones_[r0].adj_end; ++e)
    u0 = std::min(u0, -clone_adj_[e].second - price_[clone_adj_[e].first]);
  upot_.push_back(u0);

  // Shortest augmenting path over reduced costs. Idle slots are private
  // terminal columns with price pinned at zero, handled outside the heap.
  ++epoch_;
  heap_.clear();
  touched_.clear();
  const double inf = std::numeric_limits<double>::infinity();
  double idle_dist = -u0;
  int idle_clone = r0;
  int idle_prev = -2;

  for (int e = adj_begin; e < clones_[r0].adj_end; ++e) {
    const auto [col, sc] = clone_adj_[e];
    const double d = -sc - u0 - price_[col];
    if (seen_epoch_[col] != epoch_ || d < dist_[col]) {
      seen_epoch_[col] = epoch_;
      dist_[col] = d;
      prev_col_[col] = -2;
      heap_.emplace_back(d, col);
      std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
    }
  }

  int end_col = -1;  // -1 means the path ends on an idle slot
  double end_dist = inf;
  while (true) {
    double top = inf;
    while (!heap_.empty()) {
      if (done_epoch_[heap_.front().second] == epoch_ ||
          heap_.front().first > dist_[heap_.front().second]) {
        std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
        heap_.pop_back();
        continue;
      }
      top = heap_.front().first;
      break;
    }
    if (idle_dist <= top) {
      end_col = -1;
      end_dist = idle_dist;
      break;
    }
    const int j = heap_.front().second;
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
    heap_.pop_back();
    done_epoch_[j] = epoch_;
    touched_.push_back(j);
    if (owner_[j] < 0) {
      end_col = j;
      end_dist = dist_[j];
      break;
    }
    const int r = owner_[j];
    const double base = dist_[j];
    if (base - upot_[r] < idle_dist) {
      idle_dist = base - upot_[r];
      idle_clone = r;
      idle_prev = j;
    }
    for (int e = clones_[r].adj_begin; e < clones_[r].adj_end; ++e) {
      const auto [col, sc] = clone_adj_[e];
      if (done_epoch_[col] == epoch_) continue;
      const double nd = base + (-sc - upot_[r] - price_[col]);
      if (seen_epoch_[col] != epoch_ || nd < dist_[col]) {
        seen_epoch_[col] = epoch_;
        dist_[col] = nd;
        prev_col_[col] = j;
        heap_.emplace_back(nd, col);
        std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
      }
    }
  }

  // Reassign along the path, then restore tightness of matched edges under
  // the shifted column prices.
  int cur;
  if (end_col < 0) {
    if (idle_clone != r0) {
      total_ -= edge_score(idle_clone, idle_prev);
      clones_[idle_clone].col = -1;
      upot_[idle_clone] = 0.0;
      cur = idle_prev;
    } else {
      clones_[r0].col = -1;
      upot_[r0] = 0.0;
      cur = -2;
    }
  } else {
    cur = end_col;
  }
  while (cur >= 0) {
    const int pc = prev_col_[cur];
    int mover;
    if (pc == -2) {
      mover = r0;
    } else {
      mover = owner_[pc];
      total_ -= edge_score(mover, pc);
    }
    owner_[cur] = mover;
    clones_[mover].col = cur;
    total_ += edge_score(mover, cur);
    cur = pc;
  }

  for (int j : touched_) price_[j] += dist_[j] - end_dist;
  for (int j : touched_) {
    const int r = owner_[j];
    if (r >= 0) upot_[r] = -edge_score(r, j) - price_[j];
  }
  if (clones_[r0].col < 0) upot_[r0] = 0.0;
  return r0;
}

double IncrementalMatcher::push_agent(int agent) {
  const Scenario& s = tpl_->scenario();
  const int b = tpl_->agent_adj_begin_[agent];
  const int e = tpl_->agent_adj_begin_[agent + 1];
  const int cap = s.capacity(agent);
  for (int k = 0; k < cap; ++k)
    push_clone(agent, tpl_->adj_.data() + b, e - b);
  return total_;
}

double IncrementalMatcher::push_agent_scored(int agent, const double* scores) {
  const Scenario& s = tpl_->scenario();
  std::vector<std::pair<int, double>> edges;
  for (int col = 0; col < real_cols_; ++col) {
    const double sc = scores[tpl_->column_good(col)];
    if (std::isnan(sc))
      throw contract_error("score row has an unverified entry on an active good");
    if (sc > 0.0) edges.emplace_back(col, sc);
  }
  const int cap = s.capacity(agent);
  for (int k = 0; k < cap; ++k)
    push_clone(agent, edges.data(), static_cast<int>(edges.size()));
  return total_;
}

std::vector<std::vector<int>> IncrementalMatcher::bundles() const {
  std::vector<std::vector<int>> out(tpl_->scenario().agent_count());
  for (const Clone& c : clones_)
    if (c.col >= 0) out[c.agent].push_back(tpl_->column_good(c.col));
  for (auto& b : out) std::sort(b.begin(), b.end());
  return out;
}

IncrementalMatcher::Snapshot IncrementalMatcher::save() const {
  Snapshot snap;
  snap.total = total_;
  snap.clone_count = clones_.size();
  snap.adj_size = clone_adj_.size();
  snap.owner = owner_;
  snap.price = price_;
  snap.clone_col.reserve(clones_.size());
  for (const Clone& c : clones_) snap.clone_col.push_back(c.col);
  snap.clone_potential = upot_;
  return snap;
}

void IncrementalMatcher::restore(const Snapshot& snap) {
  if (snap.clone_count > clones_.size())
    throw contract_error("snapshot does not belong to this matcher state");
  clones_.resize(snap.clone_count);
  clone_adj_.resize(snap.adj_size);
  for (std::size_t i = 0; i < snap.clone_count; ++i)
    clones_[i].col = snap.clone_col[i];
  upot_ = snap.clone_potential;
  owner_ = snap.owner;
  price_ = snap.price;
  total_ = snap.total;
}

}  // namespace fairdiv
