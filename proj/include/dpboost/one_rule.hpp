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
#include <cstddef>
#include <vector>

#include "dpboost/dataset.hpp"
#include "dpboost/hypothesis.hpp"
#include "dpboost/measures.hpp"
#include "dpboost/mechanisms.hpp"
#include "dpboost/rng.hpp"

namespace dpboost {

/// Weighted error sum_i mu(i) [h(x_i) != y_i].
inline double weighted_error(const BooleanDataset& ds, std::span<const double> mu,
                             const Hypothesis& h) {
  detail::require(mu.size() == ds.n(), "weights and dataset have different sizes");
  double err = 0.0;
  for (std::size_t i = 0; i < ds.n(); ++i) {
    if (predict(h, ds.row(i)) != ds.label(i)) err += mu[i];
  }
  return err;
}

inline double weighted_error(const BooleanDataset& ds, const SmoothDistribution& mu,
                             const Hypothesis& h) {
  return weighted_error(ds, mu.probabilities(), h);
}

/// Weighted errors of all 2r+2 stumps in canonical order, in one pass:
/// with P the positive mass and s_j = sum_{x_ij = 1} mu_i y_i,
/// err(x_j) = P - s_j and err(-x_j) = total - err(x_j).
inline std::vector<double> stump_errors(const BooleanDataset& ds, std::span<const double> mu) {
  detail::require(mu.size() == ds.n(), "weights and dataset have different sizes");
  const std::size_t r = ds.r();
  std::vector<double> signed_mass(r, 0.0);
  double positive = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < ds.n(); ++i) {
    const double m = mu[i];
    const double my = ds.label(i) > 0 ? m : -m;
    total += m;
    if (ds.label(i) > 0) positive += m;
    const auto row = ds.row(i);
    for (std::size_t j = 0; j < r; ++j) {
      if (row[j]) signed_mass[j] += my;
    }
  }
  std::vector<double> errors(2 * r + 2);
  for (std::size_t j = 0; j < r; ++j) {
    const double e = std::clamp(positive - signed_mass[j], 0.0, total);
    errors[2 * j] = e;
    errors[2 * j + 1] = std::clamp(total - e, 0.0, total);
  }
  errors[2 * r] = total - positive;
  errors[2 * r + 1] = positive;
  return errors;
}

/// Non-private 1-Rule: the stump with minimum weighted error. Errors within
/// 1e-12 of the minimum count as ties, broken by lowest canonical index.
inline OneRule train_1r(const BooleanDataset& ds, const SmoothDistribution& mu) {
  detail::require(ds.n() >= 1, "training on an empty dataset");
  const auto errors = stump_errors(ds, mu.probabilities());
  const double best = *std::min_element(errors.begin(), errors.end());
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (errors[k] <= best + 1e-12) return OneRule::from_index(k, ds.r());
  }
  return OneRule::constant(true);
}

/// DP 1-Rule: exponential mechanism over the 2r+2 stumps with quality
/// -weighted_error. (4 eta zeta, 0, zeta)-DP as a weak learner.
inline OneRule train_dp_1r(const BooleanDataset& ds, const SmoothDistribution& mu, NoiseRate eta,
                           RngStream& rng) {
  detail::require(ds.n() >= 1, "training on an empty dataset");
  auto scores = stump_errors(ds, mu.probabilities());
  for (double& s : scores) s = -s;
  return OneRule::from_index(weighted_exponential_mechanism(scores, eta, rng), ds.r());
}

}  // namespace dpboost
