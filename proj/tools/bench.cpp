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

// Timing comparison of the parallel kernels against their sequential
// reference implementations on one synthetic workload each.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fairdiv/games.hpp"
#include "fairdiv/matching.hpp"
#include "fairdiv/model.hpp"
#include "fairdiv/payments.hpp"
#include "fairdiv/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

fairdiv::Scenario random_scenario(int agents, int goods, int cap) {
  std::vector<std::string> aid, gid;
  std::vector<int> caps;
  for (int a = 0; a < agents; ++a) {
    aid.push_back("a" + std::to_string(a));
    caps.push_back(cap);
  }
  for (int g = 0; g < goods; ++g) gid.push_back("g" + std::to_string(g));
  return fairdiv::Scenario(aid, gid, caps);
}

fairdiv::TypeVector random_types(const fairdiv::Scenario& s,
                                 std::uint64_t seed, double density) {
  fairdiv::TypeVector t(s.agent_count(), s.good_count());
  fairdiv::SplitMix rng(seed, 7, 7);
  for (int a = 0; a < s.agent_count(); ++a)
    for (int g = 0; g < s.good_count(); ++g)
      if (rng.next_unit() < density)
        t.set(a, g, 1.0 + static_cast<double>(rng.next_below(10)));
  return t;
}

double max_abs_diff(const std::vector<double>& a,
                    const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace

int main() {
  {
    const fairdiv::Scenario s = random_scenario(16, 20, 1);
    const fairdiv::TypeVector w = random_types(s, 11, 0.5);
    auto cache = std::make_shared<fairdiv::OptCache>();
    fairdiv::CoalitionalGame game = fairdiv::best_game(s, w, cache);
    game.worth(s.all_agents());  // warm the coalition memo comparably

    auto t0 = Clock::now();
    const auto serial = fairdiv::shapley_exact_serial(game);
    const double ts = seconds_since(t0);
    t0 = Clock::now();
    const auto parallel = fairdiv::shapley_exact(game);
    const double tp = seconds_since(t0);
    std::printf("shapley 16 players: serial %.3fs parallel %.3fs maxdiff %.3g\n",
                ts, tp, max_abs_diff(serial, parallel));
  }
  {
    const fairdiv::Scenario s = random_scenario(12, 16, 1);
    const fairdiv::TypeVector truth = random_types(s, 23, 0.5);
    const fairdiv::Allocation pi = fairdiv::solve_optimal(s, truth);
    const fairdiv::VerifiedView view = fairdiv::verify(truth, pi);

    auto t0 = Clock::now();
    const auto serial = fairdiv::pay_exact_serial(s, pi, truth, view);
    const double ts = seconds_since(t0);
    t0 = Clock::now();
    const auto parallel = fairdiv::pay_exact(s, pi, truth, view);
    const double tp = seconds_since(t0);
    std::printf("exact payments 12 agents: serial %.3fs parallel %.3fs maxdiff %.3g\n",
                ts, tp, max_abs_diff(serial.payments, parallel.payments));
  }
  return 0;
}
