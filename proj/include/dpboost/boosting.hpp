// Copyright 2026 The dpboost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpboost/accounting.hpp"
#include "dpboost/dataset.hpp"
#include "dpboost/hypothesis.hpp"
#include "dpboost/measures.hpp"
#include "dpboost/one_rule.hpp"
#include "dpboost/rng.hpp"
#include "dpboost/topdown.hpp"

namespace dpboost {

enum class LearnerKind { kOneRule, kDpOneRule, kDpTopDown };
enum class Accounting { kBasic, kAdvanced };

inline const char* to_string(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kOneRule: return "1r";
    case LearnerKind::kDpOneRule: return "dp-1r";
    case LearnerKind::kDpTopDown: return "dp-topdown";
  }
  return "?";
}

inline LearnerKind parse_learner(const std::string& s) {
  if (s == "1r") return LearnerKind::kOneRule;
  if (s == "dp-1r") return LearnerKind::kDpOneRule;
  if (s == "dp-topdown") return LearnerKind::kDpTopDown;
  throw std::invalid_argument("unknown learner '" + s + "'");
}

inline const char* to_string(Accounting a) {
  return a == Accounting::kBasic ? "basic" : "advanced";
}

inline Accounting parse_accounting(const std::string& s) {
  if (s == "basic") return Accounting::kBasic;
  if (s == "advanced") return Accounting::kAdvanced;
  throw std::invalid_argument("unknown accounting '" + s + "'");
}

inline bool is_private(LearnerKind kind) { return kind != LearnerKind::kOneRule; }

struct BoostConfig {
  /// Smoothness / target training-error fraction, in (0, 1).
  double kappa = 0.35;
  /// Learning rate, in (0, 1).
  double lambda = 0.5;
  std::size_t rounds = 9;
  LearnerKind learner = LearnerKind::kDpOneRule;
  /// Internal nodes per tree, TopDown only.
  std::size_t tree_nodes = 1;
  /// Total budget over all rounds. Ignored by the non-private learner.
  double epsilon = 1.0;
  double delta = 0.0;
  Accounting accounting = Accounting::kBasic;
  /// Weak-learner failure probability; only used in reported bounds.
  double beta = 0.1;
  std::uint64_t seed = 0;
  /// Stop after this many consecutive rounds of negative recorded advantage.
  /// 0 disables early stopping. Unused rounds leave their budget unspent.
  std::size_t stop_after_negative = 0;

  void validate() const {
    detail::require(kappa > 0.0 && kappa < 1.0, "kappa must lie strictly between 0 and 1");
    detail::require(lambda > 0.0 && lambda < 1.0, "lambda must lie strictly between 0 and 1");
    detail::require(rounds >= 1, "round count must be at least 1");
    detail::require(beta > 0.0 && beta < 1.0, "beta must lie in (0,1)");
    if (learner == LearnerKind::kDpTopDown) detail::require(tree_nodes >= 1, "tree needs at least one internal node");
    if (!is_private(learner)) return;
    detail::require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be positive");
    detail::require(delta >= 0.0 && delta < 1.0, "delta must lie in [0,1)");
    if (accounting == Accounting::kBasic) {
      detail::require(delta == 0.0, "basic accounting is pure DP; delta > 0 needs advanced accounting");
    } else {
      detail::require(delta > 0.0, "advanced accounting needs delta > 0");
    }
  }

  /// zeta = 1/(kappa n), the total-variation promise between neighboring runs.
  double zeta(std::size_t n) const { return 1.0 / (kappa * static_cast<double>(n)); }

  PrivacyBudget privacy_budget(std::size_t n) const {
    return PrivacyBudget(is_private(learner) ? epsilon : 0.0, is_private(learner) ? delta : 0.0,
                         std::min(1.0, zeta(n)));
  }
};

/// Per-round noise rate for a private learner on n examples.
///  basic:    1R eta = eps kappa n / (4 tau), TopDown eta = eps kappa n / (16 tau t)
///  advanced: per-round eps_b from solve_round_budget_approx, then
///            eta = eps_b / (4 zeta) or eps_b / (16 t zeta).
inline NoiseRate round_noise_rate(const BoostConfig& cfg, std::size_t n) {
  cfg.validate();
  detail::require(is_private(cfg.learner), "the non-private learner has no noise rate");
  detail::require(n >= 1, "example count must be positive");
  const std::size_t t = cfg.learner == LearnerKind::kDpTopDown ? cfg.tree_nodes : 1;
  if (cfg.accounting == Accounting::kBasic) {
    return cfg.learner == LearnerKind::kDpOneRule
               ? noise_rate_1r(cfg.epsilon, cfg.kappa, n, cfg.rounds)
               : noise_rate_topdown(cfg.epsilon, cfg.kappa, n, cfg.rounds, t);
  }
  const double eps_b = solve_round_budget_approx(cfg.epsilon, cfg.delta, cfg.rounds);
  const double zeta = cfg.zeta(n);
  const double per_unit = cfg.learner == LearnerKind::kDpOneRule ? 4.0 : 16.0 * static_cast<double>(t);
  return NoiseRate(eps_b / (per_unit * zeta));
}

/// Privacy spent by `rounds_run` rounds at rate eta, recomputed from the
/// weak-learner guarantees and the configured composition rule.
inline EpsilonDelta declared_spend(const BoostConfig& cfg, std::size_t n, double eta,
                                   std::size_t rounds_run) {
  if (!is_private(cfg.learner) || rounds_run == 0) return {0.0, 0.0};
  const double zeta = cfg.zeta(n);
  const double eps_b = cfg.learner == LearnerKind::kDpOneRule
                           ? dp_1r_round_epsilon(eta, zeta)
                           : dp_topdown_round_epsilon(eta, zeta, cfg.tree_nodes);
  if (cfg.accounting == Accounting::kBasic) return basic_composition(rounds_run, eps_b, 0.0);
  return advanced_composition(rounds_run, eps_b, 0.0, cfg.delta);
}

struct RoundRecord {
  std::size_t round = 0;
  /// 1/2 minus the weighted error of h_t under the round's distribution.
  double advantage = 0.0;
  /// Noise rate used this round; 0 for the non-private learner.
  double eta = 0.0;
  /// Mass of the measure before normalization.
  double mass = 0.0;
  double max_probability = 0.0;
};

struct Ensemble {
  std::vector<Hypothesis> hypotheses;
  BoostConfig config;
  std::vector<RoundRecord> trace;
  std::size_t num_features = 0;
  std::vector<std::string> feature_names;
  std::size_t train_size = 0;

  std::size_t size() const { return hypotheses.size(); }
};

/// Signature of a weak learner plugged into lazybb: (data, distribution,
/// round index starting at 1) -> hypothesis.
using WeakLearner =
    std::function<Hypothesis(const BooleanDataset&, const SmoothDistribution&, std::size_t)>;

/// Observer called after each round with the round's normalized distribution.
using RoundObserver = std::function<void(std::size_t, const SmoothDistribution&)>;

/// The lazy-Bregman boosting loop with an arbitrary weak learner.
///
/// mu_1(i) = kappa. Each round normalizes mu_t, calls the learner, updates the
/// raw cumulative margins sigma_t(i) = y_i sum_{j<=t} h_j(x_i), sets
/// mu~_{t+1}(i) = exp(-lambda sigma_t(i)) kappa and projects that onto the
/// kappa-dense measures.
inline Ensemble lazybb_with(const BooleanDataset& ds, const BoostConfig& cfg,
                            const WeakLearner& learner, double eta_for_trace = 0.0,
                            const RoundObserver& observer = {}) {
  detail::require(ds.n() >= 1, "boosting on an empty dataset");
  cfg.validate();
  const std::size_t n = ds.n();
  Ensemble ens;
  ens.config = cfg;
  ens.num_features = ds.r();
  ens.feature_names = ds.feature_names();
  ens.train_size = n;

  std::vector<int> sigma(n, 0);
  std::vector<double> tilde(n);
  Measure mu = Measure::constant(n, cfg.kappa);
  std::size_t negative_run = 0;
  for (std::size_t t = 1; t <= cfg.rounds; ++t) {
    const SmoothDistribution dist = normalize(mu);
    if (observer) observer(t, dist);
    Hypothesis h = learner(ds, dist, t);

    RoundRecord rec;
    rec.round = t;
    rec.eta = eta_for_trace;
    rec.mass = mu.mass();
    rec.max_probability = dist.max_probability();
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const int vote = predict(h, ds.row(i));
      if (vote != ds.label(i)) err += dist[i];
      sigma[i] += vote * ds.label(i);
    }
    rec.advantage = 0.5 - err;
    ens.trace.push_back(rec);
    ens.hypotheses.push_back(std::move(h));

    if (cfg.stop_after_negative > 0) {
      negative_run = rec.advantage < 0.0 ? negative_run + 1 : 0;
      if (negative_run >= cfg.stop_after_negative) break;
    }
    if (t == cfg.rounds) break;
    for (std::size_t i = 0; i < n; ++i) {
      tilde[i] = std::exp(-cfg.lambda * static_cast<double>(sigma[i])) * cfg.kappa;
    }
    mu = bregman_project(tilde, cfg.kappa);
  }
  return ens;
}

/// Boosting with the learner named in the configuration. Round t draws its
/// randomness from rng.derive(t).
inline Ensemble lazybb(const BooleanDataset& ds, const BoostConfig& cfg, const RngStream& rng,
                       const RoundObserver& observer = {}) {
  cfg.validate();
  detail::require(ds.n() >= 1, "boosting on an empty dataset");
  const double zeta = cfg.zeta(ds.n());
  switch (cfg.learner) {
    case LearnerKind::kOneRule:
      return lazybb_with(
          ds, cfg,
          [](const BooleanDataset& d, const SmoothDistribution& mu, std::size_t) -> Hypothesis {
            return train_1r(d, mu);
          },
          0.0, observer);
    case LearnerKind::kDpOneRule: {
      const NoiseRate eta = round_noise_rate(cfg, ds.n());
      return lazybb_with(
          ds, cfg,
          [&](const BooleanDataset& d, const SmoothDistribution& mu, std::size_t t) -> Hypothesis {
            RngStream round_rng = rng.derive(t);
            return train_dp_1r(d, mu, eta, round_rng);
          },
          eta.value(), observer);
    }
    case LearnerKind::kDpTopDown: {
      const NoiseRate eta = round_noise_rate(cfg, ds.n());
      return lazybb_with(
          ds, cfg,
          [&](const BooleanDataset& d, const SmoothDistribution& mu, std::size_t t) -> Hypothesis {
            RngStream round_rng = rng.derive(t);
            return train_dp_topdown(d, mu, cfg.tree_nodes, eta, round_rng, zeta);
          },
          eta.value(), observer);
    }
  }
  throw std::logic_error("unhandled learner kind");
}

inline Ensemble lazybb(const BooleanDataset& ds, const BoostConfig& cfg) {
  return lazybb(ds, cfg, RngStream(cfg.seed, 0));
}

/// Unweighted majority vote; a tied vote predicts +1.
inline int majority_predict(const Ensemble& ens, std::span<const std::uint8_t> x) {
  detail::require(!ens.hypotheses.empty(), "prediction with an empty ensemble");
  int sum = 0;
  for (const auto& h : ens.hypotheses) sum += predict(h, x);
  return sum >= 0 ? 1 : -1;
}

struct Margins {
  /// sigma(i) = y_i sum_j h_j(x_i), in [-tau, tau].
  std::vector<int> raw;
  /// sigma(i) / tau, in [-1, 1].
  std::vector<double> normalized;
};

inline Margins margins(const Ensemble& ens, const BooleanDataset& ds) {
  detail::require(!ens.hypotheses.empty(), "margins of an empty ensemble");
  Margins out;
  out.raw.resize(ds.n());
  out.normalized.resize(ds.n());
  const double tau = static_cast<double>(ens.hypotheses.size());
  for (std::size_t i = 0; i < ds.n(); ++i) {
    int sum = 0;
    for (const auto& h : ens.hypotheses) sum += predict(h, ds.row(i));
    out.raw[i] = ds.label(i) * sum;
    out.normalized[i] = static_cast<double>(out.raw[i]) / tau;
  }
  return out;
}

/// Recorded per-round advantages gamma_t.
inline std::vector<double> advantage_curve(const Ensemble& ens) {
  if (ens.trace.empty()) throw std::invalid_argument("ensemble has no training trace");
  std::vector<double> out;
  out.reserve(ens.trace.size());
  for (const auto& rec : ens.trace) out.push_back(rec.advantage);
  return out;
}

/// Learning rate gamma/4 and round count ceil(16 ln(1/kappa) / gamma^2)
/// under which a gamma-advantage weak learner reaches normalized margin
/// gamma on all but a kappa fraction of the sample.
struct TheoryParameters {
  double lambda = 0.0;
  std::size_t rounds = 0;
};

inline TheoryParameters theory_parameters(double gamma, double kappa) {
  detail::require(gamma > 0.0 && gamma <= 0.5, "advantage must lie in (0, 1/2]");
  detail::require(kappa > 0.0 && kappa < 1.0, "kappa must lie in (0,1)");
  return {gamma / 4.0,
          static_cast<std::size_t>(std::ceil(16.0 * std::log(1.0 / kappa) / (gamma * gamma)))};
}

}  // namespace dpboost
