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

#ifndef FAIRDIV_MATCHING_HPP
#define FAIRDIV_MATCHING_HPP

#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "fairdiv/assignment.hpp"
#include "fairdiv/model.hpp"

namespace fairdiv {

/// Thread-safe memo of optimal social welfare values keyed by
/// (agent subset, good subset). Insertions are idempotent; concurrent
/// writers of the same key store the same value.
class OptCache {
 public:
  bool lookup(AgentMask agents, GoodMask goods, double* out) const;
  void store(AgentMask agents, GoodMask goods, double value);
  std::size_t size() const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<AgentMask, GoodMask>& k) const {
      std::uint64_t h = k.first * 0x9e3779b97f4a7c15ULL;
      h ^= k.second + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };
  mutable std::mutex mu_;
  std::unordered_map<std::pair<AgentMask, GoodMask>, double, KeyHash> map_;
};

/// Optimal social welfare restricted to a coalition and a good subset.
/// The empty coalition is worth zero.
double opt_value(const Scenario& s, const TypeVector& w, AgentMask coalition,
                 GoodMask goods, OptCache* cache = nullptr);

/// A maximum-welfare allocation for the whole scenario. Among all optima
/// the result is the lexicographically least one under the bundle order of
/// Allocation::operator<, provided the candidate-bundle scan stays below an
/// internal budget; above it the solver's own deterministic optimum is
/// returned unchanged.
Allocation solve_optimal(const Scenario& s, const TypeVector& w);

/// All optimal allocations, lexicographically sorted, at most `limit`.
/// Exhaustive over the full allocation space, so it refuses instances with
/// more than 8 agents, 8 goods, or 8 capacity slots in total.
std::vector<Allocation> enumerate_optima(const Scenario& s,
                                         const TypeVector& w,
                                         std::size_t limit = 10000);

}  // namespace fairdiv

#endif  // FAIRDIV_MATCHING_HPP
