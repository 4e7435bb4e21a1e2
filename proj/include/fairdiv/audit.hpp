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

#ifndef FAIRDIV_AUDIT_HPP
#define FAIRDIV_AUDIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "fairdiv/model.hpp"
#include "fairdiv/payments.hpp"

namespace fairdiv {

/// Outcome of one audit check. On failure `counterexample` holds enough to
/// replay the violation: the serialized instance, the allocation, and the
/// numbers that disagree.
struct AuditResult {
  bool ok = true;
  std::string detail;
  nlohmann::ordered_json counterexample = nlohmann::ordered_json::object();
};

/// One alternative declared row for one agent.
struct Deviation {
  int agent = 0;
  std::vector<double> row;
  std::string label;
};

/// Grid of candidate misreports around the true scores: every authored
/// good independently moves to one of {t-3, t-1, t+1, t+3, 0} (clipped at
/// the not-authored sentinel). When the full product exceeds `cap` rows
/// per agent, a seeded uniform subsample of that size is taken instead.
std::vector<Deviation> deviation_grid(const Scenario& s, const TypeVector& truth,
                                      std::uint64_t seed, std::size_t cap = 2000);

/// No profitable misreport: for every deviation (named ones first), the
/// deviating agent's utility under the rule never beats its truthful
/// utility by more than `tol`. Other agents stay truthful.
AuditResult check_truthfulness(const Scenario& s, const TypeVector& truth,
                               const PaymentRule& rule,
                               const std::vector<Deviation>& named,
                               std::uint64_t seed, double tol = 1e-7,
                               std::size_t grid_cap = 2000);

/// Payments sum to at most `bound` in absolute value.
AuditResult check_budget_balance(const Scenario& s, const PaymentReport& rep,
                                 double bound = 1e-9);

/// At a truthful profile the utilities of the exact rule coincide with the
/// per-agent averaged marginal worths over the allocated goods.
AuditResult check_fairness(const Scenario& s, const TypeVector& truth,
                           const Allocation& pi, const PaymentReport& rep,
                           double tol = 1e-9);

/// No agent prefers another agent's verified bundle plus payment to its
/// own.
AuditResult check_envy_freeness(const Scenario& s, const VerifiedView& view,
                                const Allocation& pi, const PaymentReport& rep,
                                double tol = 1e-9);

/// The allocation maximizes true social welfare over the whole scenario.
AuditResult check_pareto(const Scenario& s, const TypeVector& truth,
                         const Allocation& pi, double tol = 1e-9);

/// Payments may depend only on disclosed information: perturbing declared
/// scores outside the allocated goods leaves every payment bit-identical.
AuditResult check_implementability(const Scenario& s, const Allocation& pi,
                                   const TypeVector& declared,
                                   const TypeVector& truth,
                                   const PaymentRule& rule);

/// Replacing one agent's declared row by its true row never changes that
/// agent's own payment, bit for bit, whatever the others declare.
AuditResult check_no_punishment(const Scenario& s, const Allocation& pi,
                                const TypeVector& declared,
                                const TypeVector& truth,
                                const PaymentRule& rule);

/// Runs the sampled rule over `trials` seeds and compares each share
/// against the exact one. The fraction of trials with any share off by
/// more than epsilon must stay within delta plus three standard errors.
AuditResult check_sampler_accuracy(const Scenario& s, const TypeVector& truth,
                                   int trials, double eps, double delta);

}  // namespace fairdiv

#endif  // FAIRDIV_AUDIT_HPP
