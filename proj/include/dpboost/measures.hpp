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
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "dpboost/errors.hpp"

namespace dpboost {

/// Weights in [0, 1] over n examples. Need not sum to one.
class Measure {
 public:
  Measure() = default;
  explicit Measure(std::vector<double> weights) : w_(std::move(weights)) {
    for (double v : w_) {
      detail::require(std::isfinite(v) && v >= 0.0 && v <= 1.0, "measure weights must lie in [0,1]");
    }
  }
  static Measure constant(std::size_t n, double value) {
    return Measure(std::vector<double>(n, value));
  }

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  std::span<const double> weights() const { return w_; }
  double mass() const { return std::accumulate(w_.begin(), w_.end(), 0.0); }

  bool operator==(const Measure&) const = default;

 private:
  std::vector<double> w_;
};

inline double density(const Measure& m) {
  detail::require(m.size() >= 1, "density of an empty measure");
  return m.mass() / static_cast<double>(m.size());
}

/// Probability vector with a recorded smoothness bound kappa: every
/// probability is at most 1/(kappa * n).
class SmoothDistribution {
 public:
  static constexpr double kSumTolerance = 1e-9;

  SmoothDistribution() = default;
  SmoothDistribution(std::vector<double> p, double kappa) : p_(std::move(p)), kappa_(kappa) {
    detail::require(!p_.empty(), "distribution over an empty domain");
    detail::require(kappa_ > 0.0 && kappa_ <= 1.0, "smoothness bound must lie in (0,1]");
    double sum = 0.0;
    for (double v : p_) {
      detail::require(std::isfinite(v) && v >= 0.0, "probabilities must be nonnegative");
      sum += v;
    }
    detail::require(std::abs(sum - 1.0) <= kSumTolerance, "probabilities must sum to 1");
    const double cap = max_probability();
    detail::require(*std::max_element(p_.begin(), p_.end()) <= cap * (1.0 + 1e-12),
                    "distribution violates its smoothness bound");
  }

  static SmoothDistribution uniform(std::size_t n) {
    detail::require(n >= 1, "uniform distribution over an empty domain");
    return SmoothDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)), 1.0);
  }

  /// Records the tightest bound the vector satisfies, 1 / (n * max p).
  static SmoothDistribution from_probabilities(std::vector<double> p) {
    detail::require(!p.empty(), "distribution over an empty domain");
    const double top = *std::max_element(p.begin(), p.end());
    detail::require(top > 0.0, "distribution has no mass");
    const double kappa = std::min(1.0, 1.0 / (static_cast<double>(p.size()) * top));
    return SmoothDistribution(std::move(p), kappa);
  }

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> probabilities() const { return p_; }
  double smoothness_bound() const { return kappa_; }
  double max_probability() const { return 1.0 / (kappa_ * static_cast<double>(p_.size())); }

 private:
  std::vector<double> p_;
  double kappa_ = 1.0;
};

/// p_i = w_i / mass. The result's smoothness bound is the density of m.
inline SmoothDistribution normalize(const Measure& m) {
  const double mass = m.mass();
  detail::require(mass > 0.0, "cannot normalize a measure with zero mass");
  std::vector<double> p(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) p[i] = m[i] / mass;
  const double kappa = std::min(1.0, mass / static_cast<double>(m.size()));
  return SmoothDistribution(std::move(p), kappa);
}

/// Total variation distance, half the L1 distance.
inline double statistical_distance(std::span<const double> a, std::span<const double> b) {
  detail::require(a.size() == b.size(), "statistical distance of vectors of different length");
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
  return 0.5 * total;
}

inline double statistical_distance(const SmoothDistribution& a, const SmoothDistribution& b) {
  return statistical_distance(a.probabilities(), b.probabilities());
}

/// Generalized KL divergence between nonnegative measures:
/// sum m_i ln(m_i / ref_i) - m_i + ref_i, with 0 ln 0 = 0.
inline double kl_divergence(std::span<const double> m, std::span<const double> ref) {
  detail::require(m.size() == ref.size(), "KL divergence of vectors of different length");
  double total = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    detail::require(m[i] >= 0.0 && ref[i] >= 0.0, "KL divergence needs nonnegative weights");
    if (m[i] > 0.0) {
      detail::require(ref[i] > 0.0, "KL divergence is infinite: reference has no mass where m does");
      total += m[i] * std::log(m[i] / ref[i]) - m[i] + ref[i];
    } else {
      total += ref[i];
    }
  }
  return total;
}

inline double kl_divergence(const Measure& m, const Measure& ref) {
  return kl_divergence(m.weights(), ref.weights());
}

/// Scale c >= 1 such that sum_i min(1, c * w_i) = kappa * n, or 1 when the
/// capped weights already carry that much mass.
///
/// Sort-based: with the weights in descending order, the top k entries are
/// capped at one and c = (kappa n - k) / (sum of the rest). The first k whose
/// c keeps entry k uncapped and entry k-1 capped is the answer. Bisection on
/// the mass is the fallback if rounding leaves no consistent bracket.
inline double projection_scale(std::span<const double> w, double kappa) {
  detail::require(kappa > 0.0 && kappa < 1.0, "kappa must lie in (0,1)");
  const std::size_t n = w.size();
  detail::require(n >= 1, "projection of an empty measure");
  double capped_mass = 0.0;
  std::size_t positive = 0;
  for (double v : w) {
    detail::require(std::isfinite(v) && v >= 0.0, "projection needs finite nonnegative weights");
    capped_mass += std::min(1.0, v);
    if (v > 0.0) ++positive;
  }
  detail::require(positive > 0, "projection of an all-zero measure");
  const double target = kappa * static_cast<double>(n);
  if (capped_mass >= target) return 1.0;
  detail::require(static_cast<double>(positive) >= target,
                  "no kappa-dense measure is absolutely continuous w.r.t. the input");

  std::vector<double> sorted(w.begin(), w.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::vector<double> suffix(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + sorted[i];
  for (std::size_t k = 0; k < n; ++k) {
    if (suffix[k] <= 0.0) break;
    const double c = (target - static_cast<double>(k)) / suffix[k];
    if (c * sorted[k] <= 1.0 && (k == 0 || c * sorted[k - 1] >= 1.0)) return std::max(c, 1.0);
  }

  const auto mass_at = [&](double c) {
    double total = 0.0;
    for (double v : w) total += std::min(1.0, c * v);
    return total;
  };
  double lo = 1.0;
  double hi = 1.0 / *std::min_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(positive));
  while (hi - lo > 1e-15 * hi) {
    const double mid = 0.5 * (lo + hi);
    const double mass = mass_at(mid);
    if (std::abs(mass - target) <= 1e-12) return mid;
    (mass < target ? lo : hi) = mid;
  }
  return hi;
}

/// KL projection of nonnegative weights onto the kappa-dense measures
/// {v : 0 <= v_i <= 1, sum v >= kappa n}: v_i = min(1, c w_i). A valid
/// measure that is already kappa-dense comes back unchanged. Inputs above
/// one are allowed; they get capped.
inline Measure bregman_project(std::span<const double> w, double kappa) {
  const double c = projection_scale(w, kappa);
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = std::min(1.0, c * w[i]);
  return Measure(std::move(out));
}

inline Measure bregman_project(const Measure& m, double kappa) {
  return bregman_project(m.weights(), kappa);
}

}  // namespace dpboost
