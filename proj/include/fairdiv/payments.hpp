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

#ifndef FAIRDIV_PAYMENTS_HPP
#define FAIRDIV_PAYMENTS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fairdiv/model.hpp"

namespace fairdiv {

/// Sampling parameters for the Monte-Carlo payment rules. `samples` is the
/// number of random agent permutations averaged inside one repetition;
/// `repetitions` (odd) estimates are combined by a coordinate-wise median.
struct SamplingConfig {
  int samples = 0;
  int repetitions = 0;
  double epsilon = 0.1;
  double delta = 0.25;
  std::uint64_t seed = 0;

  /// samples = ceil(4 n (n-1) / eps^2), repetitions = smallest odd integer
  /// >= 8 ln(1/delta). With these choices every estimated share is within
  /// eps of the exact one with probability at least 1 - delta.
  static SamplingConfig from_accuracy(int agent_count, double eps, double delta,
                                      std::uint64_t seed);
};

/// Output of a payment or division rule for one allocation.
struct PaymentReport {
  std::vector<double> payments;       // money transferred to each agent
  std::vector<double> shares;         // raw per-agent share before netting
  std::vector<double> verified_value; // each agent's verified bundle value
  std::vector<double> utilities;      // verified value plus payment
  double structure_value = 0.0;       // sum of verified bundle values
  double opt_restricted = 0.0;        // optimal welfare over the allocated goods
  double normalizer = 1.0;            // rescaling factor of the normalized rule
};

using PaymentRule =
    std::function<PaymentReport(const Scenario&, const Allocation&,
                                const TypeVector&, const VerifiedView&)>;

/// Exact marginal-contribution payments. Each agent's share is a Shapley
/// average, over all coalitions containing it, of the welfare the coalition
/// reaches on the allocated goods when that agent's declared row is
/// replaced by its verified one, minus the welfare without the agent. The
/// substitution makes an agent's own payment independent of its declared
/// row. Refuses more than 18 agents; the coalition table fills in parallel
/// with a thread-count-independent layout.
PaymentReport pay_exact(const Scenario& s, const Allocation& pi,
                        const TypeVector& declared, const VerifiedView& view);

/// Sequential single-matcher reference for pay_exact.
PaymentReport pay_exact_serial(const Scenario& s, const Allocation& pi,
                               const TypeVector& declared,
                               const VerifiedView& view);

/// Unbiased permutation-sampling estimate of pay_exact's shares: in each
/// sampled permutation an agent contributes its substituted marginal worth
/// over the agents before it. Repetition medians bound the failure
/// probability. Deterministic for a fixed config regardless of threads.
PaymentReport pay_sampled(const Scenario& s, const Allocation& pi,
                          const TypeVector& declared, const VerifiedView& view,
                          const SamplingConfig& cfg);

/// Budget-balancing variant: estimated shares are rescaled so they sum to
/// the optimal welfare reachable on the allocated goods under the verified
/// scores. `paper_sign` flips the published payment to share-minus-value
/// negated, matching the alternative sign convention.
PaymentReport pay_normalized(const Scenario& s, const Allocation& pi,
                             const TypeVector& declared,
                             const VerifiedView& view,
                             const SamplingConfig& cfg,
                             bool paper_sign = false);

/// Division schemes: each agent receives a share of verified welfare and
/// pays the difference to its own verified bundle value.
///
/// proj: the agent's own verified bundle value (no transfers).
PaymentReport divide_proj(const Scenario& s, const Allocation& pi,
                          const TypeVector& declared, const VerifiedView& view);

/// owner: every allocated good's verified value is split equally among the
/// agents whose verified score on it is positive. An allocated good nobody
/// values positively is a structural error.
PaymentReport divide_owner(const Scenario& s, const Allocation& pi,
                           const TypeVector& declared,
                           const VerifiedView& view);

/// all: the agent's verified bundle value scaled by its fraction of the
/// positive declared mass over all goods. With `variant_all` the scaled
/// quantity is the whole verified structure value instead.
PaymentReport divide_all(const Scenario& s, const Allocation& pi,
                         const TypeVector& declared, const VerifiedView& view,
                         bool variant_all = false);

/// Rule lookup by name: exact | sampled | normalized | proj | owner | all.
/// Unknown names throw structural_error.
PaymentRule make_payment_rule(const std::string& name,
                              const SamplingConfig& cfg,
                              bool variant_all = false,
                              bool paper_sign = false);

}  // namespace fairdiv

#endif  // FAIRDIV_PAYMENTS_HPP
