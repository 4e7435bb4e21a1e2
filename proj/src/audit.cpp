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

#include "fairdiv/audit.hpp"

#include <algorithm>
#include <cmath>

#include "fairdiv/errors.hpp"
#include "fairdiv/games.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/matching.hpp"
#include "fairdiv/rng.hpp"

namespace fairdiv {

namespace {

using json = nlohmann::ordered_json;

json instance_json(const Scenario& s, const TypeVector& declared,
                   const TypeVector& truth) {
  return json::parse(
      serialize_instance(Instance{s, declared, truth}));
}

TypeVector with_row(const Scenario& s, const TypeVector& base, int agent,
                    const std::vector<double>& row) {
  TypeVector t = base;
  for (int g = 0; g < s.good_count(); ++g) t.set(agent, g, row[g]);
  return t;
}

}  // namespace

std::vector<Deviation> deviation_grid(const Scenario& s,
                                      const TypeVector& truth,
                                      std::uint64_t seed, std::size_t cap) {
  std::vector<Deviation> out;
  for (int a = 0; a < s.agent_count(); ++a) {
    std::vector<int> authored;
    std::vector<std::vector<double>> options;
    for (int g = 0; g < s.good_count(); ++g) {
      const double t = truth(a, g);
      if (t == TypeVector::kNotAuthored) continue;
      authored.push_back(g);
      std::vector<double> opts{t};
      for (double v : {t - 3.0, t - 1.0, t + 1.0, t + 3.0, 0.0}) {
        const double c = std::max(v, TypeVector::kNotAuthored);
        if (std::find(opts.begin(), opts.end(), c) == opts.end())
          opts.push_back(c);
      }
      options.push_back(std::move(opts));
    }
    if (authored.empty()) continue;

    double combos = 1.0;
    for (const auto& o : options) combos *= static_cast<double>(o.size());
    const auto emit = [&](const std::vector<std::size_t>& digits) {
      std::vector<double> row(s.good_count(), TypeVector::kNotAuthored);
      bool changed = false;
      for (int g = 0; g < s.good_count(); ++g) row[g] = truth(a, g);
      for (std::size_t k = 0; k < authored.size(); ++k) {
        row[authored[k]] = options[k][digits[k]];
        changed |= options[k][digits[k]] != truth(a, authored[k]);
      }
      if (changed)
        out.push_back(Deviation{a, std::move(row), "grid"});
    };

    std::vector<std::size_t> digits(authored.size(), 0);
    if (combos <= static_cast<double>(cap)) {
      while (true) {
        emit(digits);
        std::size_t k = 0;
        while (k < digits.size() && ++digits[k] == options[k].size())
          digits[k++] = 0;
        if (k == digits.size()) break;
      }
    } else {
      SplitMix rng(seed, static_cast<std::uint64_t>(a), 0);
      for (std::size_t t = 0; t < cap; ++t) {
        for (std::size_t k = 0; k < digits.size(); ++k)
          digits[k] = rng.next_below(
              static_cast<std::uint32_t>(options[k].size()));
        emit(digits);
      }
    }
  }
  return out;
}

AuditResult check_truthfulness(const Scenario& s, const TypeVector& truth,
                               const PaymentRule& rule,
                               const std::vector<Deviation>& named,
                               std::uint64_t seed, double tol,
                               std::size_t grid_cap) {
  const Allocation pi_star = solve_optimal(s, truth);
  const VerifiedView view_star = verify(truth, pi_star);
  const PaymentReport rep_star = rule(s, pi_star, truth, view_star);

  std::vector<Deviation> all = named;
  for (Deviation& d : deviation_grid(s, truth, seed, grid_cap))
    all.push_back(std::move(d));

  AuditResult res;
  res.detail = "no profitable deviation among " + std::to_string(all.size());
  for (const Deviation& dev : all) {
    const TypeVector declared = with_row(s, truth, dev.agent, dev.row);
    const Allocation pi = solve_optimal(s, declared);
    const VerifiedView view = verify(truth, pi);
    const PaymentReport rep = rule(s, pi, declared, view);
    const double gain =
        rep.utilities[dev.agent] - rep_star.utilities[dev.agent];
    if (gain > tol) {
      res.ok = false;
      res.detail = "agent " + s.agent_id(dev.agent) + " gains " +
                   std::to_string(gain) + " by misreporting (" + dev.label + ")";
      res.counterexample = {
          {"instance", instance_json(s, declared, truth)},
          {"allocation", allocation_to_json(s, pi)},
          {"agent", s.agent_id(dev.agent)},
          {"label", dev.label},
          {"truthful_utility", rep_star.utilities[dev.agent]},
          {"deviating_utility", rep.utilities[dev.agent]}};
      return res;
    }
  }
  return res;
}

AuditResult check_budget_balance(const Scenario& s, const PaymentReport& rep,
                                 double bound) {
  double sum = 0.0;
  for (double p : rep.payments) sum += p;
  AuditResult res;
  res.detail = "payment sum " + std::to_string(sum);
  if (std::fabs(sum) > bound) {
    res.ok = false;
    json per = json::object();
    for (int a = 0; a < s.agent_count(); ++a)
      per[s.agent_id(a)] = rep.payments[a];
    res.counterexample = {{"payments", per}, {"sum", sum}, {"bound", bound}};
  }
  return res;
}

AuditResult check_fairness(const Scenario& s, const TypeVector& truth,
                           const Allocation& pi, const PaymentReport& rep,
                           double tol) {
  auto cache = std::make_shared<OptCache>();
  const GoodMask img = pi.goods_mask();
  auto sc = std::make_shared<Scenario>(s);
  auto tv = std::make_shared<TypeVector>(truth);
  CoalitionalGame game(s.all_agents(), [sc, tv, img, cache](AgentMask c) {
    return opt_value(*sc, *tv, c, img, cache.get());
  });
  const std::vector<double> phi = shapley_exact(game);
  AuditResult res;
  res.detail = "utilities match averaged marginal worths";
  for (int a = 0; a < s.agent_count(); ++a) {
    if (std::fabs(phi[a] - rep.utilities[a]) > tol) {
      res.ok = false;
      res.detail = "agent " + s.agent_id(a) + " utility " +
                   std::to_string(rep.utilities[a]) + " vs fair share " +
                   std::to_string(phi[a]);
      res.counterexample = {{"agent", s.agent_id(a)},
                            {"utility", rep.utilities[a]},
                            {"fair_share", phi[a]},
                            {"allocation", allocation_to_json(s, pi)}};
      return res;
    }
  }
  return res;
}

AuditResult check_envy_freeness(const Scenario& s, const VerifiedView& view,
                                const Allocation& pi, const PaymentReport& rep,
                                double tol) {
  AuditResult res;
  res.detail = "no agent envies another bundle-payment pair";
  for (int i = 0; i < s.agent_count(); ++i)
    for (int j = 0; j < s.agent_count(); ++j) {
      if (i == j) continue;
      const double other =
          view.bundle_value(i, pi.bundle(j)) + rep.payments[j];
      if (other > rep.utilities[i] + tol) {
        res.ok = false;
        res.detail = "agent " + s.agent_id(i) + " envies " + s.agent_id(j);
        res.counterexample = {{"envious", s.agent_id(i)},
                              {"envied", s.agent_id(j)},
                              {"own_utility", rep.utilities[i]},
                              {"other_utility", other},
                              {"allocation", allocation_to_json(s, pi)}};
        return res;
      }
    }
  return res;
}

AuditResult check_pareto(const Scenario& s, const TypeVector& truth,
                         const Allocation& pi, double tol) {
  const double got = value(s, pi, truth);
  const double best = opt_value(s, truth, s.all_agents(), s.all_goods());
  AuditResult res;
  res.detail = "allocation welfare " + std::to_string(got) + " of optimum " +
               std::to_string(best);
  if (got < best - tol) {
    res.ok = false;
    res.counterexample = {{"allocation", allocation_to_json(s, pi)},
                          {"welfare", got},
                          {"optimum", best}};
  }
  return res;
}

AuditResult check_implementability(const Scenario& s, const Allocation& pi,
                                   const TypeVector& declared,
                                   const TypeVector& truth,
                                   const PaymentRule& rule) {
  const VerifiedView view = verify(truth, pi);
  const PaymentReport base = rule(s, pi, declared, view);
  TypeVector shifted = declared;
  const GoodMask img = pi.goods_mask();
  for (int a = 0; a < s.agent_count(); ++a)
    for (int g = 0; g < s.good_count(); ++g)
      if (!(img & (GoodMask{1} << g))) shifted.set(a, g, declared(a, g) + 5.0);
  const PaymentReport moved = rule(s, pi, shifted, view);
  AuditResult res;
  res.detail = "payments ignore undisclosed scores";
  for (int a = 0; a < s.agent_count(); ++a) {
    if (base.payments[a] != moved.payments[a]) {
      res.ok = false;
      res.detail = "payment of " + s.agent_id(a) +
                   " depends on scores outside the allocated goods";
      res.counterexample = {{"agent", s.agent_id(a)},
                            {"payment", base.payments[a]},
                            {"perturbed_payment", moved.payments[a]},
                            {"instance", instance_json(s, declared, truth)},
                            {"allocation", allocation_to_json(s, pi)}};
      return res;
    }
  }
  return res;
}

AuditResult check_no_punishment(const Scenario& s, const Allocation& pi,
                                const TypeVector& declared,
                                const TypeVector& truth,
                                const PaymentRule& rule) {
  const VerifiedView view = verify(truth, pi);
  const PaymentReport base = rule(s, pi, declared, view);
  AuditResult res;
  res.detail = "own payments are declaration-independent";
  for (int a = 0; a < s.agent_count(); ++a) {
    std::vector<double> row(s.good_count());
    for (int g = 0; g < s.good_count(); ++g) row[g] = truth(a, g);
    const TypeVector honest = with_row(s, declared, a, row);
    const PaymentReport rep = rule(s, pi, honest, view);
    if (base.payments[a] != rep.payments[a]) {
      res.ok = false;
      res.detail = "payment of " + s.agent_id(a) +
                   " changes when its own report turns honest";
      res.counterexample = {{"agent", s.agent_id(a)},
                            {"declared_payment", base.payments[a]},
                            {"honest_payment", rep.payments[a]},
                            {"instance", instance_json(s, declared, truth)},
                            {"allocation", allocation_to_json(s, pi)}};
      return res;
    }
  }
  return res;
}

AuditResult check_sampler_accuracy(const Scenario& s, const TypeVector& truth,
                                   int trials, double eps, double delta) {
  if (trials <= 0) throw contract_error("trial count must be positive");
  const Allocation pi = solve_optimal(s, truth);
  const VerifiedView view = verify(truth, pi);
  const PaymentReport exact = pay_exact(s, pi, truth, view);
  int failures = 0;
  for (int t = 0; t < trials; ++t) {
    const SamplingConfig cfg = SamplingConfig::from_accuracy(
        s.agent_count(), eps, delta, static_cast<std::uint64_t>(t));
    const PaymentReport rep = pay_sampled(s, pi, truth, view, cfg);
    for (int a = 0; a < s.agent_count(); ++a) {
      if (std::fabs(rep.shares[a] - exact.shares[a]) > eps) {
        ++failures;
        break;
      }
    }
  }
  const double freq = static_cast<double>(failures) / trials;
  const double bound =
      delta + 3.0 * std::sqrt(delta * (1.0 - delta) / trials);
  AuditResult res;
  res.detail = "failure fraction " + std::to_string(freq) + " vs bound " +
               std::to_string(bound);
  if (freq > bound) {
    res.ok = false;
    res.counterexample = {{"failures", failures},
                          {"trials", trials},
                          {"fraction", freq},
                          {"bound", bound}};
  }
  return res;
}

}  // namespace fairdiv
