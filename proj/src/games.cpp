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

#include "fairdiv/games.hpp"

#include <bit>
#include <cmath>

#include "fairdiv/errors.hpp"
#include "fairdiv/rng.hpp"

namespace fairdiv {

CoalitionalGame::CoalitionalGame(AgentMask players,
                                 std::function<double(AgentMask)> worth_fn)
    : players_(players), worth_fn_(std::move(worth_fn)) {
  if (players_ == 0) throw structural_error("a game needs at least one player");
}

int CoalitionalGame::player_count() const {
  return std::popcount(players_);
}

std::vector<int> CoalitionalGame::player_list() const {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i)
    if (players_ & (AgentMask{1} << i)) out.push_back(i);
  return out;
}

double CoalitionalGame::worth(AgentMask coalition) const {
  if (coalition & ~players_)
    throw contract_error("coalition contains a non-player");
  if (coalition == 0) return 0.0;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(coalition);
    if (it != memo_.end()) return it->second;
  }
  const double v = worth_fn_(coalition);
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(coalition, v);
  return v;
}

CoalitionalGame best_game(const Scenario& s, const TypeVector& w,
                          std::shared_ptr<OptCache> cache) {
  const GoodMask goods = s.all_goods();
  // The characteristic function closes over copies so the game stays valid
  // independently of the caller's Scenario lifetime.
  auto sc = std::make_shared<Scenario>(s);
  auto types = std::make_shared<TypeVector>(w);
  return CoalitionalGame(s.all_agents(), [sc, types, goods, cache](AgentMask c) {
    return opt_value(*sc, *types, c, goods, cache.get());
  });
}

CoalitionalGame marg_game(const Scenario& s, const TypeVector& w,
                          std::shared_ptr<OptCache> cache) {
  const GoodMask goods = s.all_goods();
  const AgentMask all = s.all_agents();
  auto sc = std::make_shared<Scenario>(s);
  auto types = std::make_shared<TypeVector>(w);
  return CoalitionalGame(all, [sc, types, goods, all, cache](AgentMask c) {
    return opt_value(*sc, *types, all, goods, cache.get()) -
           opt_value(*sc, *types, all & ~c, goods, cache.get());
  });
}

namespace {

constexpr int kShapleyCap = 20;
constexpr int kModularityCap = 5;

// (n-c)! (c-1)! / n! = 1 / (n * C(n-1, c-1)), exact in double for n <= 20.
std::vector<double> shapley_coefficients(int n) {
  std::vector<double> coeff(n + 1, 0.0);
  double choose = 1.0;  // C(n-1, c-1) for c = 1
  for (int c = 1; c <= n; ++c) {
    coeff[c] = 1.0 / (n * choose);
    choose = choose * (n - c) / c;
  }
  return coeff;
}

struct WorthTable {
  std::vector<int> players;
  std::vector<double> worth;  // indexed by compressed subset id
};

WorthTable fill_worth_table(const CoalitionalGame& game, int cap,
                            const char* what) {
  WorthTable t;
  t.players = game.player_list();
  const int n = static_cast<int>(t.players.size());
  if (n > cap)
    throw size_error(std::string(what) + " is limited to " +
                     std::to_string(cap) + " players");
  t.worth.assign(std::size_t{1} << n, 0.0);
  for (std::size_t sid = 1; sid < t.worth.size(); ++sid) {
    AgentMask mask = 0;
    for (int k = 0; k < n; ++k)
      if (sid & (std::size_t{1} << k)) mask |= AgentMask{1} << t.players[k];
    t.worth[sid] = game.worth(mask);
  }
  return t;
}

}  // namespace

std::vector<double> shapley_exact(const CoalitionalGame& game) {
  const WorthTable t = fill_worth_table(game, kShapleyCap, "exact Shapley");
  const int n = static_cast<int>(t.players.size());
  const std::vector<double> coeff = shapley_coefficients(n);
  const std::size_t subsets = t.worth.size();

  // Fixed chunk layout: the per-chunk partials and their summation order do
  // not depend on how many threads execute the loop.
  const int chunks = 64;
  std::vector<double> partial(static_cast<std::size_t>(chunks) * n, 0.0);
  const std::size_t per = (subsets + chunks - 1) / chunks;
#pragma omp parallel for schedule(static)
  for (int c = 0; c < chunks; ++c) {
    double* acc = partial.data() + static_cast<std::size_t>(c) * n;
    const std::size_t lo = std::max<std::size_t>(1, per * c);
    const std::size_t hi = std::min(subsets, per * (c + 1));
    for (std::size_t sid = lo; sid < hi; ++sid) {
      const double k = coeff[std::popcount(sid)];
      for (int i = 0; i < n; ++i) {
        if (!(sid & (std::size_t{1} << i))) continue;
        acc[i] += k * (t.worth[sid] - t.worth[sid ^ (std::size_t{1} << i)]);
      }
    }
  }

  std::vector<double> out(64, 0.0);
  for (int c = 0; c < chunks; ++c)
    for (int i = 0; i < n; ++i)
      out[t.players[i]] += partial[static_cast<std::size_t>(c) * n + i];
  return out;
}

std::vector<double> shapley_exact_serial(const CoalitionalGame& game) {
  const WorthTable t = fill_worth_table(game, kShapleyCap, "exact Shapley");
  const int n = static_cast<int>(t.players.size());
  const std::vector<double> coeff = shapley_coefficients(n);
  std::vector<double> out(64, 0.0);
  for (std::size_t sid = 1; sid < t.worth.size(); ++sid) {
    const double k = coeff[std::popcount(sid)];
    for (int i = 0; i < n; ++i) {
      if (!(sid & (std::size_t{1} << i))) continue;
      out[t.players[i]] +=
          k * (t.worth[sid] - t.worth[sid ^ (std::size_t{1} << i)]);
    }
  }
  return out;
}

std::vector<double> shapley_sampled(const CoalitionalGame& game, int samples,
                                    std::uint64_t seed) {
  if (samples <= 0) throw contract_error("sample count must be positive");
  const std::vector<int> players = game.player_list();
  const int n = static_cast<int>(players.size());
  std::vector<double> sum(64, 0.0);
  std::vector<int> perm;
  for (int t = 0; t < samples; ++t) {
    SplitMix rng(seed, 0, static_cast<std::uint64_t>(t));
    random_permutation(rng, n, perm);
    AgentMask cur = 0;
    double prev = 0.0;
    for (int k = 0; k < n; ++k) {
      const int p = players[perm[k]];
      cur |= AgentMask{1} << p;
      const double w = game.worth(cur);
      sum[p] += w - prev;
      prev = w;
    }
  }
  for (double& x : sum) x /= samples;
  return sum;
}

bool is_submodular(const CoalitionalGame& game, double tol) {
  const WorthTable t = fill_worth_table(game, kModularityCap, "modularity check");
  const int n = static_cast<int>(t.players.size());
  for (std::size_t sid = 0; sid < t.worth.size(); ++sid)
    for (int i = 0; i < n; ++i) {
      if (sid & (std::size_t{1} << i)) continue;
      for (int j = i + 1; j < n; ++j) {
        if (sid & (std::size_t{1} << j)) continue;
        const double lhs = t.worth[sid | (std::size_t{1} << i)] +
                           t.worth[sid | (std::size_t{1} << j)];
        const double rhs =
            t.worth[sid | (std::size_t{1} << i) | (std::size_t{1} << j)] +
            t.worth[sid];
        if (lhs < rhs - tol) return false;
      }
    }
  return true;
}

bool is_supermodular(const CoalitionalGame& game, double tol) {
  const WorthTable t = fill_worth_table(game, kModularityCap, "modularity check");
  const int n = static_cast<int>(t.players.size());
  for (std::size_t sid = 0; sid < t.worth.size(); ++sid)
    for (int i = 0; i < n; ++i) {
      if (sid & (std::size_t{1} << i)) continue;
      for (int j = i + 1; j < n; ++j) {
        if (sid & (std::size_t{1} << j)) continue;
        const double lhs = t.worth[sid | (std::size_t{1} << i)] +
                           t.worth[sid | (std::size_t{1} << j)];
        const double rhs =
            t.worth[sid | (std::size_t{1} << i) | (std::size_t{1} << j)] +
            t.worth[sid];
        if (lhs > rhs + tol) return false;
      }
    }
  return true;
}

}  // namespace fairdiv
