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
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dpboost/dataset.hpp"
#include "dpboost/measures.hpp"
#include "dpboost/rng.hpp"

namespace dpboost {

/// A randomized weak learner reduced to a canonical outcome string.
using AuditedMechanism =
    std::function<std::string(const BooleanDataset&, const SmoothDistribution&, RngStream&)>;

struct AuditRow {
  std::string outcome;
  std::size_t count = 0;
  std::size_t count_prime = 0;
  double freq = 0.0;
  double freq_prime = 0.0;
  /// ln(freq / freq'); +-inf when one side never saw the outcome.
  double log_ratio = 0.0;
  /// Whether the row enters the epsilon estimate.
  bool counted = false;
};

struct AuditReport {
  std::vector<AuditRow> rows;
  double epsilon_hat = 0.0;
  std::size_t trials = 0;
};

/// Outcomes seen fewer than this many times on both sides are left out of
/// the estimate.
inline constexpr std::size_t kAuditMinCount = 100;

/// One draw of a randomized procedure, reduced to an outcome string.
using OutcomeSampler = std::function<std::string(RngStream&)>;

/// Monte Carlo comparison of two outcome distributions. Trial k draws from
/// `a` with rng.derive(2k) and from `b` with rng.derive(2k + 1).
/// epsilon_hat is the largest |ln(freq / freq')| over outcomes observed at
/// least kAuditMinCount times on either side. An outcome that appears often
/// on one side and never on the other gives an infinite estimate.
inline AuditReport audit_outcomes(const OutcomeSampler& a, const OutcomeSampler& b,
                                  std::size_t trials, const RngStream& rng) {
  detail::require(trials >= 1, "an audit needs at least one trial");
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
  for (std::size_t k = 0; k < trials; ++k) {
    RngStream ra = rng.derive(2 * k);
    RngStream rb = rng.derive(2 * k + 1);
    counts[a(ra)].first++;
    counts[b(rb)].second++;
  }

  AuditReport report;
  report.trials = trials;
  const double total = static_cast<double>(trials);
  const double inf = std::numeric_limits<double>::infinity();
  for (const auto& [outcome, c] : counts) {
    AuditRow row;
    row.outcome = outcome;
    row.count = c.first;
    row.count_prime = c.second;
    row.freq = static_cast<double>(c.first) / total;
    row.freq_prime = static_cast<double>(c.second) / total;
    if (c.first == 0) {
      row.log_ratio = -inf;
    } else if (c.second == 0) {
      row.log_ratio = inf;
    } else {
      row.log_ratio = std::log(row.freq / row.freq_prime);
    }
    row.counted = std::max(c.first, c.second) >= kAuditMinCount;
    if (row.counted) report.epsilon_hat = std::max(report.epsilon_hat, std::abs(row.log_ratio));
    report.rows.push_back(row);
  }
  return report;
}

/// Privacy audit of a weak learner on neighboring inputs (S, mu) and
/// (S', mu'), which must differ in at most one record and lie within
/// total variation zeta.
inline AuditReport audit_weak_learner(const AuditedMechanism& mechanism, const BooleanDataset& s,
                                      const BooleanDataset& s_prime, const SmoothDistribution& mu,
                                      const SmoothDistribution& mu_prime, std::size_t trials,
                                      const RngStream& rng, double zeta = 1.0) {
  detail::require(s.n() == s_prime.n() && s.r() == s_prime.r(),
                  "audited datasets have different shapes");
  detail::require(s.differing_records(s_prime).size() <= 1,
                  "audited datasets are not neighbors: they differ in more than one record");
  detail::require(mu.size() == s.n() && mu_prime.size() == s.n(),
                  "distributions and datasets have different sizes");
  detail::require(statistical_distance(mu, mu_prime) <= zeta,
                  "audited distributions are farther apart than zeta");
  detail::require(trials >= 10000, "an audit needs at least 10^4 trials");
  return audit_outcomes([&](RngStream& r) { return mechanism(s, mu, r); },
                        [&](RngStream& r) { return mechanism(s_prime, mu_prime, r); }, trials,
                        rng);
}

/// Built-in 8-record neighboring pair over 3 features. On the first set
/// the best stump is x0 (error 1/8, x1 has 2/8); replacing record 4 swaps
/// those errors, so an exact argmin flips deterministically.
inline std::pair<BooleanDataset, BooleanDataset> audit_toy_pair() {
  const std::vector<std::vector<int>> rows{{1, 1, 0}, {1, 1, 1}, {0, 0, 0}, {0, 0, 1},
                                           {1, 0, 1}, {0, 0, 0}, {1, 1, 0}, {0, 0, 1}};
  const std::vector<int> labels{1, 1, -1, -1, 1, -1, -1, -1};
  auto s = BooleanDataset::from_rows(rows, labels);
  const std::vector<std::uint8_t> replacement{0, 1, 1};
  auto s_prime = s.with_record(4, replacement, 1);
  return {std::move(s), std::move(s_prime)};
}

}  // namespace dpboost
