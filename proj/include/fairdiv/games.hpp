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

#ifndef FAIRDIV_GAMES_HPP
#define FAIRDIV_GAMES_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "fairdiv/matching.hpp"
#include "fairdiv/model.hpp"

namespace fairdiv {

/// A transferable-utility game over a fixed player set. Coalition worths
/// are computed lazily through the supplied characteristic function and
/// memoized; the memo is thread-safe and idempotent. The empty coalition
/// is worth zero by definition and never reaches the characteristic
/// function.
class CoalitionalGame {
 public:
  CoalitionalGame(AgentMask players, std::function<double(AgentMask)> worth_fn);

  AgentMask players() const { return players_; }
  int player_count() const;
  std::vector<int> player_list() const;

  /// Worth of a coalition; throws contract_error if it contains a
  /// non-playerbit.
  double worth(AgentMask coalition) const;

 private:
  AgentMask players_;
  std::function<double(AgentMask)> worth_fn_;
  mutable std::mutex mu_;
  mutable std::unordered_map<AgentMask, double> memo_;
};

/// worth(C) = optimal welfare the coalition reaches on its own over all
/// goods. Monotone by construction.
CoalitionalGame best_game(const Scenario& s, const TypeVector& w,
                          std::shared_ptr<OptCache> cache = nullptr);

/// worth(C) = loss the grand coalition suffers when C walks away:
/// opt(A) - opt(A \ C).
CoalitionalGame marg_game(const Scenario& s, const TypeVector& w,
                          std::shared_ptr<OptCache> cache = nullptr);

/// Exact Shapley value over all coalitions, indexed by player bit position
/// (non-players get 0). Refuses games above 20 players. The accumulation
/// kernel runs in parallel with a fixed chunk layout, so the result is
/// bit-identical for any thread count.
std::vector<double> shapley_exact(const CoalitionalGame& game);

/// Plain sequential accumulation over the same worth table; reference for
/// the parallel kernel.
std::vector<double> shapley_exact_serial(const CoalitionalGame& game);

/// Monte-Carlo Shapley estimate from `samples` uniformly random player
/// permutations of the counter-based stream for `seed`.
std::vector<double> shapley_sampled(const CoalitionalGame& game, int samples,
                                    std::uint64_t seed);

/// Exhaustive (sub/super)modularity checks, refused above 5 players.
bool is_submodular(const CoalitionalGame& game, double tol = 1e-9);
bool is_supermodular(const CoalitionalGame& game, double tol = 1e-9);

}  // namespace fairdiv

#endif  // FAIRDIV_GAMES_HPP
