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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "dpboost/errors.hpp"
#include "dpboost/rng.hpp"

namespace dpboost {

/// Exponent scale of the selection mechanisms; Laplace noise in report
/// noisy max uses scale 1/eta.
class NoiseRate {
 public:
  explicit NoiseRate(double eta) : eta_(eta) {
    detail::require(std::isfinite(eta) && eta > 0.0, "noise rate must be positive and finite");
  }
  double value() const { return eta_; }

 private:
  double eta_;
};

/// Inverse CDF of the Laplace(0, scale) distribution at u in (0, 1).
inline double laplace_quantile(double u, double scale) {
  detail::require(scale > 0.0, "Laplace scale must be positive");
  detail::require(u > 0.0 && u < 1.0, "Laplace quantile needs u in (0,1)");
  const double centered = u - 0.5;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(centered));
  return centered < 0.0 ? -magnitude : magnitude;
}

inline double sample_laplace(double scale, RngStream& rng) {
  detail::require(scale > 0.0, "Laplace scale must be positive");
  return laplace_quantile(rng.uniform_open(), scale);
}

/// Selection probabilities exp(eta q_i) / sum_j exp(eta q_j), max-shifted.
inline std::vector<double> exponential_mechanism_probabilities(std::span<const double> scores,
                                                               double eta) {
  detail::require(!scores.empty(), "exponential mechanism over an empty candidate set");
  detail::require(std::isfinite(eta) && eta >= 0.0, "eta must be finite and nonnegative");
  double top = -INFINITY;
  for (double q : scores) {
    detail::require(std::isfinite(q), "exponential mechanism scores must be finite");
    top = std::max(top, q);
  }
  std::vector<double> p(scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    p[i] = std::exp(eta * (scores[i] - top));
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

/// Weighted exponential mechanism: index i with probability proportional to
/// exp(eta * scores[i]). One uniform draw, inverted through the cumulative
/// max-shifted weights. eta = 0 is uniform selection.
inline std::size_t weighted_exponential_mechanism(std::span<const double> scores, double eta,
                                                  RngStream& rng) {
  detail::require(!scores.empty(), "exponential mechanism over an empty candidate set");
  detail::require(std::isfinite(eta) && eta >= 0.0, "eta must be finite and nonnegative");
  double top = -INFINITY;
  for (double q : scores) {
    detail::require(std::isfinite(q), "exponential mechanism scores must be finite");
    top = std::max(top, q);
  }
  std::vector<double> cumulative(scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    total += std::exp(eta * (scores[i] - top));
    cumulative[i] = total;
  }
  const double target = rng.uniform_open() * total;
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  if (it == cumulative.end()) {
    // Rounding put the target on the last boundary; take the last candidate
    // with positive weight.
    for (std::size_t i = scores.size(); i-- > 0;) {
      if (i == 0 || cumulative[i] > cumulative[i - 1]) return i;
    }
  }
  return static_cast<std::size_t>(it - cumulative.begin());
}

inline std::size_t weighted_exponential_mechanism(std::span<const double> scores, NoiseRate eta,
                                                  RngStream& rng) {
  return weighted_exponential_mechanism(scores, eta.value(), rng);
}

/// Weighted report noisy max: argmax of scores[i] + Laplace(1/eta).
/// Exact ties after noise go to the lowest index.
inline std::size_t weighted_report_noisy_max(std::span<const double> scores, NoiseRate eta,
                                             RngStream& rng) {
  detail::require(!scores.empty(), "report noisy max over an empty candidate set");
  const double scale = 1.0 / eta.value();
  std::size_t best = 0;
  double best_value = -INFINITY;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    detail::require(std::isfinite(scores[i]), "report noisy max scores must be finite");
    const double noisy = scores[i] + sample_laplace(scale, rng);
    if (noisy > best_value) {
      best_value = noisy;
      best = i;
    }
  }
  return best;
}

}  // namespace dpboost
