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

// Shared fixtures and independent oracles for the unit and acceptance tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "dpboost/dpboost.hpp"

namespace dpboost::testing {

#ifdef DPBOOST_ADULT_DIR
inline std::pair<BooleanDataset, BooleanDataset> load_adult() {
  const EncodingSchema schema = load_schema(DPBOOST_ADULT_SCHEMA);
  const auto train = load_dataset(std::string(DPBOOST_ADULT_DIR) + "/adult_train.csv", DataFormat::kCsv);
  const auto test = load_dataset(std::string(DPBOOST_ADULT_DIR) + "/adult_test.csv", DataFormat::kCsv);
  return {one_hot_encode(train, schema), one_hot_encode(test, schema)};
}
#endif

inline BooleanDataset random_dataset(std::size_t n, std::size_t r, RngStream& rng) {
  std::vector<std::uint8_t> x(n * r);
  std::vector<int> y(n);
  for (auto& v : x) v = static_cast<std::uint8_t>(rng.next_u64() >> 63);
  for (auto& v : y) v = (rng.next_u64() >> 63) ? 1 : -1;
  return BooleanDataset(n, r, std::move(x), std::move(y), {});
}

/// Replaces one record with a random record that differs from it.
inline std::pair<BooleanDataset, std::size_t> random_neighbor(const BooleanDataset& ds,
                                                              RngStream& rng) {
  const std::size_t i = rng.uniform_below(ds.n());
  std::vector<std::uint8_t> features(ds.row(i).begin(), ds.row(i).end());
  int label = ds.label(i);
  do {
    for (auto& v : features) v = static_cast<std::uint8_t>(rng.next_u64() >> 63);
    label = (rng.next_u64() >> 63) ? 1 : -1;
  } while (label == ds.label(i) &&
           std::equal(features.begin(), features.end(), ds.row(i).begin()));
  return {ds.with_record(i, features, label), i};
}

/// Random kappa-smooth distribution: random positive weights projected to
/// the kappa-dense measures, then normalized.
inline SmoothDistribution random_smooth(std::size_t n, double kappa, RngStream& rng) {
  std::vector<double> w(n);
  for (auto& v : w) v = std::pow(rng.uniform_open(), 2.0);
  return normalize(bregman_project(w, kappa));
}

/// Total variation between distributions on neighboring datasets, counting
/// the substituted record's mass as disjoint support.
inline double record_distance(const SmoothDistribution& a, const SmoothDistribution& b,
                              std::size_t substituted) {
  double total = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    total += j == substituted ? a[j] + b[j] : std::abs(a[j] - b[j]);
  }
  return 0.5 * total;
}

/// p-value of Pearson's goodness-of-fit statistic against expected
/// probabilities; cells with zero expectation must be empty.
inline double chi_square_gof_pvalue(const std::vector<std::size_t>& counts,
                                    const std::vector<double>& probs) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  double stat = 0.0;
  std::size_t cells = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double e = probs[k] * total;
    if (e <= 0.0) {
      if (counts[k] > 0) return 0.0;
      continue;
    }
    stat += (static_cast<double>(counts[k]) - e) * (static_cast<double>(counts[k]) - e) / e;
    ++cells;
  }
  if (cells < 2) return 1.0;
  boost::math::chi_squared dist(static_cast<double>(cells - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

/// p-value of the chi-square homogeneity test between two count vectors.
inline double chi_square_homogeneity_pvalue(const std::vector<std::size_t>& a,
                                            const std::vector<std::size_t>& b) {
  double ta = 0.0;
  double tb = 0.0;
  for (auto c : a) ta += static_cast<double>(c);
  for (auto c : b) tb += static_cast<double>(c);
  double stat = 0.0;
  std::size_t cells = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double col = static_cast<double>(a[k] + b[k]);
    if (col == 0.0) continue;
    const double ea = col * ta / (ta + tb);
    const double eb = col * tb / (ta + tb);
    stat += (static_cast<double>(a[k]) - ea) * (static_cast<double>(a[k]) - ea) / ea;
    stat += (static_cast<double>(b[k]) - eb) * (static_cast<double>(b[k]) - eb) / eb;
    ++cells;
  }
  if (cells < 2) return 1.0;
  boost::math::chi_squared dist(static_cast<double>(cells - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

/// Projection oracle that does not use the closed form. For a multiplier
/// nu >= 0 the Lagrangian separates; each coordinate minimizes
/// m ln(m/w) - m + w - nu m over [0, 1] by grid search (coarse grid, then a
/// fine grid around the best point). nu is bisected until the mass reaches
/// kappa n. Returns the minimizer.
inline std::vector<double> projection_oracle(const std::vector<double>& w, double kappa) {
  const auto coordinate = [](double wi, double nu) {
    const auto f = [&](double m) {
      return (m > 0.0 ? m * std::log(m / wi) : 0.0) - m + wi - nu * m;
    };
    double best = 0.0;
    double best_val = f(0.0);
    for (int k = 1; k <= 1000; ++k) {
      const double m = k * 1e-3;
      if (const double v = f(m); v < best_val) best_val = v, best = m;
    }
    const double center = best;
    for (int k = -1000; k <= 1000; ++k) {
      const double m = std::clamp(center + k * 1e-6, 0.0, 1.0);
      if (const double v = f(m); v < best_val) best_val = v, best = m;
    }
    return best;
  };
  const auto solve = [&](double nu) {
    std::vector<double> m(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) m[i] = coordinate(w[i], nu);
    return m;
  };
  const auto mass = [](const std::vector<double>& m) {
    double t = 0.0;
    for (double v : m) t += v;
    return t;
  };
  const double target = kappa * static_cast<double>(w.size());
  auto m0 = solve(0.0);
  if (mass(m0) >= target) return m0;
  double lo = 0.0;
  double hi = 1.0;
  while (mass(solve(hi)) < target) hi *= 2.0;
  for (int it = 0; it < 50; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass(solve(mid)) < target ? lo : hi) = mid;
  }
  return solve(hi);
}

/// Majority of the first three features, plus `extra` random features.
/// Under any distribution one of x0, x1, x2 is right on at least 2/3 of the
/// mass, so exact 1R has advantage at least 1/6.
inline BooleanDataset majority3_dataset(std::size_t n, std::size_t extra, RngStream& rng) {
  const std::size_t r = 3 + extra;
  std::vector<std::uint8_t> x(n * r);
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    int ones = 0;
    for (std::size_t j = 0; j < r; ++j) {
      x[i * r + j] = static_cast<std::uint8_t>(rng.next_u64() >> 63);
      if (j < 3) ones += x[i * r + j];
    }
    y[i] = ones >= 2 ? 1 : -1;
  }
  return BooleanDataset(n, r, std::move(x), std::move(y), {});
}

}  // namespace dpboost::testing
