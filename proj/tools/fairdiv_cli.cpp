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

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "fairdiv/audit.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/games.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/matching.hpp"
#include "fairdiv/model.hpp"
#include "fairdiv/payments.hpp"

namespace {

using fairdiv::Instance;
using json = nlohmann::ordered_json;

constexpr int kExitViolation = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitTooLarge = 3;

fairdiv::TypeVector require_truth(const Instance& inst) {
  if (!inst.truth)
    throw fairdiv::structural_error(
        "this command needs 'true_scores' in the instance");
  return *inst.truth;
}

fairdiv::SamplingConfig build_config(const Instance& inst, double eps,
                                     double delta, std::uint64_t seed,
                                     int samples, int reps) {
  fairdiv::SamplingConfig cfg = fairdiv::SamplingConfig::from_accuracy(
      inst.scenario.agent_count(), eps, delta, seed);
  if (samples > 0) cfg.samples = samples;
  if (reps > 0) cfg.repetitions = reps;
  return cfg;
}

int run_solve(const std::string& path) {
  const Instance inst = fairdiv::load_instance(path);
  const fairdiv::Allocation pi =
      fairdiv::solve_optimal(inst.scenario, inst.declared);
  json out;
  out["allocation"] = fairdiv::allocation_to_json(inst.scenario, pi);
  out["declared_value"] = fairdiv::value(inst.scenario, pi, inst.declared);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_pay(const std::string& path, const std::string& rule_name, double eps,
            double delta, std::uint64_t seed, int samples, int reps,
            bool variant_all, bool paper_sign) {
  const Instance inst = fairdiv::load_instance(path);
  const fairdiv::TypeVector truth = require_truth(inst);
  const fairdiv::SamplingConfig cfg =
      build_config(inst, eps, delta, seed, samples, reps);
  const fairdiv::PaymentRule rule =
      fairdiv::make_payment_rule(rule_name, cfg, variant_all, paper_sign);
  const fairdiv::Allocation pi =
      fairdiv::solve_optimal(inst.scenario, inst.declared);
  const fairdiv::VerifiedView view = fairdiv::verify(truth, pi);
  const fairdiv::PaymentReport rep = rule(inst.scenario, pi, inst.declared, view);
  json out = fairdiv::payment_report_to_json(inst.scenario, rule_name, rep);
  out["allocation"] = fairdiv::allocation_to_json(inst.scenario, pi);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_shapley(const std::string& path, const std::string& game_name,
                bool use_truth, int sampled, std::uint64_t seed) {
  const Instance inst = fairdiv::load_instance(path);
  const fairdiv::TypeVector scores =
      use_truth ? require_truth(inst) : inst.declared;
  auto cache = std::make_shared<fairdiv::OptCache>();
  fairdiv::CoalitionalGame game =
      game_name == "marg" ? fairdiv::marg_game(inst.scenario, scores, cache)
                          : fairdiv::best_game(inst.scenario, scores, cache);
  const std::vector<double> phi =
      sampled > 0 ? fairdiv::shapley_sampled(game, sampled, seed)
                  : fairdiv::shapley_exact(game);
  json out;
  out["game"] = game_name;
  json values = json::object();
  for (int a = 0; a < inst.scenario.agent_count(); ++a)
    values[inst.scenario.agent_id(a)] = phi[a];
  out["shapley"] = values;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_audit(const std::string& path, const std::string& rule_name,
              double eps, double delta, std::uint64_t seed, int samples,
              int reps) {
  const Instance inst = fairdiv::load_instance(path);
  const fairdiv::Scenario& s = inst.scenario;
  const fairdiv::TypeVector truth = require_truth(inst);
  const fairdiv::SamplingConfig cfg =
      build_config(inst, eps, delta, seed, samples, reps);
  const fairdiv::PaymentRule rule =
      fairdiv::make_payment_rule(rule_name, cfg, false, false);

  const fairdiv::Allocation pi = fairdiv::solve_optimal(s, inst.declared);
  const fairdiv::VerifiedView view = fairdiv::verify(truth, pi);
  const fairdiv::PaymentReport rep = rule(s, pi, inst.declared, view);

  json out = json::object();
  bool all_ok = true;
  const auto record = [&](const char* name, const fairdiv::AuditResult& r) {
    json e;
    e["ok"] = r.ok;
    e["detail"] = r.detail;
    if (!r.ok) e["counterexample"] = r.counterexample;
    out[name] = std::move(e);
    all_ok = all_ok && r.ok;
  };
  record("truthfulness",
         fairdiv::check_truthfulness(s, truth, rule, {}, seed));
  record("no_punishment",
         fairdiv::check_no_punishment(s, pi, inst.declared, truth, rule));
  record("implementability",
         fairdiv::check_implementability(s, pi, inst.declared, truth, rule));
  record("envy_freeness", fairdiv::check_envy_freeness(s, view, pi, rep));
  record("pareto", fairdiv::check_pareto(s, truth, pi));
  std::cout << out.dump(2) << "\n";
  return all_ok ? 0 : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair allocation of indivisible goods with compensations"};
  app.require_subcommand(1);

  std::string path, rule = "exact", game = "best";
  double eps = 0.1, delta = 0.25;
  std::uint64_t seed = 0;
  int samples = 0, reps = 0, sampled_perms = 0;
  bool variant_all = false, paper_sign = false, use_truth = false;

  CLI::App* solve = app.add_subcommand("solve", "Optimal allocation");
  solve->add_option("instance", path, "instance file")->required();

  CLI::App* pay = app.add_subcommand("pay", "Payments for an allocation");
  pay->add_option("instance", path, "instance file")->required();
  pay->add_option("--rule", rule,
                  "exact|sampled|normalized|proj|owner|all");
  pay->add_option("--epsilon", eps, "sampling accuracy");
  pay->add_option("--delta", delta, "sampling failure probability");
  pay->add_option("--seed", seed, "random seed");
  pay->add_option("--samples", samples, "override sample count");
  pay->add_option("--reps", reps, "override repetition count");
  pay->add_flag("--variant-all", variant_all,
                "scale the whole structure value in the 'all' scheme");
  pay->add_flag("--paper-sign", paper_sign,
                "flip the sign convention of normalized payments");

  CLI::App* shap = app.add_subcommand("shapley", "Shapley values of a game");
  shap->add_option("instance", path, "instance file")->required();
  shap->add_option("--game", game, "best|marg");
  shap->add_flag("--true-scores", use_truth, "use true scores, not declared");
  shap->add_option("--sampled", sampled_perms,
                   "estimate from this many permutations");
  shap->add_option("--seed", seed, "random seed");

  CLI::App* audit = app.add_subcommand("audit", "Run the property checks");
  audit->add_option("instance", path, "instance file")->required();
  audit->add_option("--rule", rule, "rule under audit");
  audit->add_option("--epsilon", eps, "sampling accuracy");
  audit->add_option("--delta", delta, "sampling failure probability");
  audit->add_option("--seed", seed, "random seed");
  audit->add_option("--samples", samples, "override sample count");
  audit->add_option("--reps", reps, "override repetition count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(path);
    if (pay->parsed())
      return run_pay(path, rule, eps, delta, seed, samples, reps, variant_all,
                     paper_sign);
    if (shap->parsed())
      return run_shapley(path, game, use_truth, sampled_perms, seed);
    if (audit->parsed())
      return run_audit(path, rule, eps, delta, seed, samples, reps);
  } catch (const fairdiv::size_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTooLarge;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
