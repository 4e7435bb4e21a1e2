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

#include "fairdiv/payments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "fairdiv/errors.hpp"
#include "fairdiv/matching.hpp"
#include "fairdiv/rng.hpp"

namespace fairdiv {

namespace {

constexpr int kExactCap = 18;

void validate_inputs(const Scenario& s, const Allocation& pi,
                     const TypeVector& declared, const VerifiedView& view) {
  if (declared.agent_count() != s.agent_count() ||
      declared.good_count() != s.good_count())
    throw contract_error("declared type vector does not match the scenario");
  if (pi.agent_count() != s.agent_count())
    throw contract_error("allocation does not match the scenario");
  if (view.agent_count() != s.agent_count())
    throw contract_error("verified view does not match the scenario");
  if ((pi.goods_mask() & ~view.goods_mask()) != 0)
    throw contract_error("verified view does not cover the allocation");
}

std::vector<int> mask_goods(GoodMask m, int count) {
  std::vector<int> out;
  for (int g = 0; g < count; ++g)
    if (m & (GoodMask{1} << g)) out.push_back(g);
  return out;
}

struct Context {
  std::vector<int> img;                    // allocated goods, ascending
  std::vector<bool> truthful;              // declared == verified on img
  std::vector<std::vector<double>> vrows;  // dense verified rows, NaN off img
  std::vector<double> vv;                  // verified bundle values
  double structure_value = 0.0;
  bool all_truthful = true;
};

Context make_context(const Scenario& s, const Allocation& pi,
                     const TypeVector& declared, const VerifiedView& view) {
  Context ctx;
  const int n = s.agent_count();
  ctx.img = mask_goods(pi.goods_mask(), s.good_count());
  ctx.truthful.assign(n, true);
  ctx.vrows.assign(n, std::vector<double>(
                          s.good_count(),
                          std::numeric_limits<double>::quiet_NaN()));
  ctx.vv.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int g : ctx.img) {
      const double t = view.score(i, g);
      ctx.vrows[i][g] = t;
      if (declared(i, g) != t) ctx.truthful[i] = false;
    }
    if (!ctx.truthful[i]) ctx.all_truthful = false;
    ctx.vv[i] = view.bundle_value(i, pi.bundle(i));
    ctx.structure_value += ctx.vv[i];
  }
  return ctx;
}

// (n-c)! (c-1)! / n!, indexed by coalition size c.
std::vector<double> share_coefficients(int n) {
  std::vector<double> coeff(n + 1, 0.0);
  double choose = 1.0;
  for (int c = 1; c <= n; ++c) {
    coeff[c] = 1.0 / (n * choose);
    choose = choose * (n - c) / c;
  }
  return coeff;
}

PaymentReport finish_report(const Context& ctx, std::vector<double> shares,
                            double opt_restricted, double normalizer) {
  PaymentReport rep;
  const int n = static_cast<int>(ctx.vv.size());
  rep.shares = std::move(shares);
  rep.verified_value = ctx.vv;
  rep.structure_value = ctx.structure_value;
  rep.opt_restricted = opt_restricted;
  rep.normalizer = normalizer;
  rep.payments.resize(n);
  rep.utilities.resize(n);
  for (int i = 0; i < n; ++i) {
    rep.payments[i] = normalizer * rep.shares[i] - ctx.vv[i];
    rep.utilities[i] = ctx.vv[i] + rep.payments[i];
  }
  return rep;
}

double coalition_value(IncrementalMatcher& matcher, AgentMask mask,
                       int substituted, const double* sub_row, int n) {
  matcher.reset();
  double total = 0.0;
  for (int a = 0; a < n; ++a) {
    if (!(mask & (AgentMask{1} << a))) continue;
    total = (a == substituted) ? matcher.push_agent_scored(a, sub_row)
                               : matcher.push_agent(a);
  }
  return total;
}

std::vector<double> exact_shares_from_tables(
    const Context& ctx, const std::vector<double>& W,
    const std::vector<std::vector<double>>& A1, int n) {
  const std::vector<double> coeff = share_coefficients(n);
  std::vector<double> shares(n, 0.0);
  const std::size_t subsets = W.size();
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    const double k = coeff[std::popcount(mask)];
    for (int i = 0; i < n; ++i) {
      if (!(mask & (std::size_t{1} << i))) continue;
      const double with_i = ctx.truthful[i] ? W[mask] : A1[i][mask];
      shares[i] += k * (with_i - W[mask ^ (std::size_t{1} << i)]);
    }
  }
  return shares;
}

PaymentReport pay_exact_impl(const Scenario& s, const Allocation& pi,
                             const TypeVector& declared,
                             const VerifiedView& view, bool parallel) {
  validate_inputs(s, pi, declared, view);
  const int n = s.agent_count();
  if (n > kExactCap)
    throw size_error("exact payments are limited to " +
                     std::to_string(kExactCap) +
                     " agents; use the sampled rule instead");
  const Context ctx = make_context(s, pi, declared, view);
  const MatchingTemplate tpl(s, declared, pi.goods_mask());
  const std::size_t subsets = std::size_t{1} << n;

  std::vector<double> W(subsets, 0.0);
  std::vector<std::vector<double>> A1(n);
  for (int i = 0; i < n; ++i)
    if (!ctx.truthful[i]) A1[i].assign(subsets, 0.0);

  // Every coalition value is independent, and the static chunking makes
  // the filled tables identical for any thread count.
#pragma omp parallel if (parallel)
  {
    IncrementalMatcher matcher(tpl);
#pragma omp for schedule(static)
    for (std::int64_t m = 1; m < static_cast<std::int64_t>(subsets); ++m) {
      const auto mask = static_cast<std::size_t>(m);
      W[mask] = coalition_value(matcher, mask, -1, nullptr, n);
      for (int i = 0; i < n; ++i)
        if (!ctx.truthful[i] && (mask & (std::size_t{1} << i)))
          A1[i][mask] =
              coalition_value(matcher, mask, i, ctx.vrows[i].data(), n);
    }
  }

  std::vector<double> shares = exact_shares_from_tables(ctx, W, A1, n);
  return finish_report(ctx, std::move(shares), W[subsets - 1], 1.0);
}

struct SampledEstimate {
  std::vector<double> declared_shares;  // medians over repetitions
  std::vector<double> verified_shares;  // same under all-verified rows
};

void validate_config(const SamplingConfig& cfg) {
  if (cfg.samples <= 0 || cfg.repetitions <= 0)
    throw contract_error("sampling config needs positive samples and repetitions");
  if (cfg.repetitions % 2 == 0)
    throw contract_error("repetition count must be odd for the median");
}

// One repetition sweeps `samples` random permutations; an agent's share
// accumulates its substituted marginal worth over the agents drawn before
// it. `need_verified` additionally runs the all-verified chain on the same
// permutations.
SampledEstimate sampled_shares(const Scenario& s, const Allocation& pi,
                               const TypeVector& declared, const Context& ctx,
                               const SamplingConfig& cfg, bool need_verified) {
  const int n = s.agent_count();
  const MatchingTemplate tpl(s, declared, pi.goods_mask());
  const int reps = cfg.repetitions;
  std::vector<double> est(static_cast<std::size_t>(reps) * n, 0.0);
  std::vector<double> est_true(
      need_verified && !ctx.all_truthful
          ? static_cast<std::size_t>(reps) * n : 0, 0.0);
  const bool second_chain = need_verified && !ctx.all_truthful;

#pragma omp parallel
  {
    IncrementalMatcher matcher(tpl);
    IncrementalMatcher matcher_true(tpl);
    std::vector<int> perm;
#pragma omp for schedule(static)
    for (int r = 0; r < reps; ++r) {
      double* acc = est.data() + static_cast<std::size_t>(r) * n;
      double* acc_true =
          second_chain ? est_true.data() + static_cast<std::size_t>(r) * n
                       : nullptr;
      for (int t = 0; t < cfg.samples; ++t) {
        SplitMix rng(cfg.seed, static_cast<std::uint64_t>(r),
                     static_cast<std::uint64_t>(t));
        random_permutation(rng, n, perm);
        matcher.reset();
        double prev = 0.0;
        for (int k = 0; k < n; ++k) {
          const int i = perm[k];
          double contrib, cur;
          if (ctx.truthful[i]) {
            cur = matcher.push_agent(i);
            contrib = cur - prev;
          } else {
            const auto snap = matcher.save();
            contrib = matcher.push_agent_scored(i, ctx.vrows[i].data()) - prev;
            matcher.restore(snap);
            cur = matcher.push_agent(i);
          }
          acc[i] += contrib;
          prev = cur;
        }
        if (second_chain) {
          matcher_true.reset();
          prev = 0.0;
          for (int k = 0; k < n; ++k) {
            const int i = perm[k];
            const double cur =
                matcher_true.push_agent_scored(i, ctx.vrows[i].data());
            acc_true[i] += cur - prev;
            prev = cur;
          }
        }
      }
      for (int i = 0; i < n; ++i) acc[i] /= cfg.samples;
      if (second_chain)
        for (int i = 0; i < n; ++i) acc_true[i] /= cfg.samples;
    }
  }

  const auto median_of = [&](const std::vector<double>& grid, int i) {
    std::vector<double> col(reps);
    for (int r = 0; r < reps; ++r)
      col[r] = grid[static_cast<std::size_t>(r) * n + i];
    std::nth_element(col.begin(), col.begin() + reps / 2, col.end());
    return col[reps / 2];
  };
  SampledEstimate out;
  out.declared_shares.resize(n);
  for (int i = 0; i < n; ++i) out.declared_shares[i] = median_of(est, i);
  if (need_verified) {
    out.verified_shares.resize(n);
    for (int i = 0; i < n; ++i)
      out.verified_shares[i] =
          second_chain ? median_of(est_true, i) : out.declared_shares[i];
  }
  return out;
}

TypeVector verified_types_on_img(const Scenario& s, const Context& ctx) {
  TypeVector t(s.agent_count(), s.good_count());
  for (int i = 0; i < s.agent_count(); ++i)
    for (int g : ctx.img) t.set(i, g, ctx.vrows[i][g]);
  return t;
}

}  // namespace

SamplingConfig SamplingConfig::from_accuracy(int agent_count, double eps,
                                             double delta,
                                             std::uint64_t seed) {
  if (agent_count < 1 || eps <= 0.0 || delta <= 0.0 || delta >= 1.0)
    throw contract_error("invalid sampling accuracy parameters");
  SamplingConfig cfg;
  cfg.epsilon = eps;
  cfg.delta = delta;
  cfg.seed = seed;
  const double m = 4.0 * agent_count * (agent_count - 1) / (eps * eps);
  cfg.samples = std::max(1, static_cast<int>(std::ceil(m)));
  int reps = static_cast<int>(std::ceil(8.0 * std::log(1.0 / delta)));
  if (reps < 1) reps = 1;
  if (reps % 2 == 0) ++reps;
  cfg.repetitions = reps;
  return cfg;
}

PaymentReport pay_exact(const Scenario& s, const Allocation& pi,
                        const TypeVector& declared, const VerifiedView& view) {
  return pay_exact_impl(s, pi, declared, view, true);
}

PaymentReport pay_exact_serial(const Scenario& s, const Allocation& pi,
                               const TypeVector& declared,
                               const VerifiedView& view) {
  return pay_exact_impl(s, pi, declared, view, false);
}

PaymentReport pay_sampled(const Scenario& s, const Allocation& pi,
                          const TypeVector& declared, const VerifiedView& view,
                          const SamplingConfig& cfg) {
  validate_inputs(s, pi, declared, view);
  validate_config(cfg);
  const Context ctx = make_context(s, pi, declared, view);
  SampledEstimate est = sampled_shares(s, pi, declared, ctx, cfg, false);
  const double opt_img =
      opt_value(s, declared, s.all_agents(), pi.goods_mask());
  return finish_report(ctx, std::move(est.declared_shares), opt_img, 1.0);
}

PaymentReport pay_normalized(const Scenario& s, const Allocation& pi,
                             const TypeVector& declared,
                             const VerifiedView& view,
                             const SamplingConfig& cfg, bool paper_sign) {
  validate_inputs(s, pi, declared, view);
  validate_config(cfg);
  const Context ctx = make_context(s, pi, declared, view);
  SampledEstimate est = sampled_shares(s, pi, declared, ctx, cfg, true);

  const TypeVector truth_img = verified_types_on_img(s, ctx);
  const double opt_img_true =
      opt_value(s, truth_img, s.all_agents(), pi.goods_mask());
  double denom = 0.0;
  for (double x : est.verified_shares) denom += x;
  const double ratio = (std::fabs(denom) < 1e-15) ? 1.0 : opt_img_true / denom;

  PaymentReport rep =
      finish_report(ctx, std::move(est.declared_shares), opt_img_true, ratio);
  if (paper_sign) {
    for (int i = 0; i < s.agent_count(); ++i) {
      rep.payments[i] = -rep.payments[i];
      rep.utilities[i] = rep.verified_value[i] + rep.payments[i];
    }
  }
  return rep;
}

PaymentReport divide_proj(const Scenario& s, const Allocation& pi,
                          const TypeVector& declared,
                          const VerifiedView& view) {
  validate_inputs(s, pi, declared, view);
  const Context ctx = make_context(s, pi, declared, view);
  return finish_report(ctx, ctx.vv, ctx.structure_value, 1.0);
}

PaymentReport divide_owner(const Scenario& s, const Allocation& pi,
                           const TypeVector& declared,
                           const VerifiedView& view) {
  validate_inputs(s, pi, declared, view);
  const Context ctx = make_context(s, pi, declared, view);
  const int n = s.agent_count();
  std::vector<double> shares(n, 0.0);
  for (int a = 0; a < n; ++a) {
    for (int g : pi.bundle(a)) {
      std::vector<int> authors;
      for (int i = 0; i < n; ++i)
        if (view.score(i, g) > 0.0) authors.push_back(i);
      if (authors.empty())
        throw structural_error("allocated good " + s.good_id(g) +
                               " has no agent with a positive verified score");
      const double piece = view.score(a, g) / authors.size();
      for (int i : authors) shares[i] += piece;
    }
  }
  return finish_report(ctx, std::move(shares), ctx.structure_value, 1.0);
}

PaymentReport divide_all(const Scenario& s, const Allocation& pi,
                         const TypeVector& declared, const VerifiedView& view,
                         bool variant_all) {
  validate_inputs(s, pi, declared, view);
  const Context ctx = make_context(s, pi, declared, view);
  const int n = s.agent_count();
  std::vector<double> mass(n, 0.0);
  double total_mass = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int g = 0; g < s.good_count(); ++g)
      if (declared(i, g) > 0.0) mass[i] += declared(i, g);
    total_mass += mass[i];
  }
  std::vector<double> shares(n, 0.0);
  if (total_mass > 0.0) {
    for (int i = 0; i < n; ++i) {
      const double base = variant_all ? ctx.structure_value : ctx.vv[i];
      shares[i] = mass[i] / total_mass * base;
    }
  }
  return finish_report(ctx, std::move(shares), ctx.structure_value, 1.0);
}

PaymentRule make_payment_rule(const std::string& name,
                              const SamplingConfig& cfg, bool variant_all,
                              bool paper_sign) {
  if (name == "exact") {
    return [](const Scenario& s, const Allocation& pi, const TypeVector& d,
              const VerifiedView& v) { return pay_exact(s, pi, d, v); };
  }
  if (name == "sampled") {
    return [cfg](const Scenario& s, const Allocation& pi, const TypeVector& d,
                 const VerifiedView& v) { return pay_sampled(s, pi, d, v, cfg); };
  }
  if (name == "normalized") {
    return [cfg, paper_sign](const Scenario& s, const Allocation& pi,
                             const TypeVector& d, const VerifiedView& v) {
      return pay_normalized(s, pi, d, v, cfg, paper_sign);
    };
  }
  if (name == "proj") {
    return [](const Scenario& s, const Allocation& pi, const TypeVector& d,
              const VerifiedView& v) { return divide_proj(s, pi, d, v); };
  }
  if (name == "owner") {
    return [](const Scenario& s, const Allocation& pi, const TypeVector& d,
              const VerifiedView& v) { return divide_owner(s, pi, d, v); };
  }
  if (name == "all") {
    return [variant_all](const Scenario& s, const Allocation& pi,
                         const TypeVector& d, const VerifiedView& v) {
      return divide_all(s, pi, d, v, variant_all);
    };
  }
  throw structural_error("unknown payment rule: " + name);
}

}  // namespace fairdiv
