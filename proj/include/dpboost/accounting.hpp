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

#include "dpboost/errors.hpp"
#include "dpboost/mechanisms.hpp"

namespace dpboost {

struct EpsilonDelta {
  double epsilon = 0.0;
  double delta = 0.0;
};

/// (epsilon, delta, zeta) guarantee of a weak learner: private whenever the
/// datasets are neighbors and the input distributions are within total
/// variation zeta.
struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;
  double zeta = 1.0;

  PrivacyBudget() = default;
  PrivacyBudget(double eps, double del, double z) : epsilon(eps), delta(del), zeta(z) {
    detail::require(std::isfinite(eps) && eps >= 0.0, "epsilon must be nonnegative");
    detail::require(del >= 0.0 && del < 1.0, "delta must lie in [0,1)");
    detail::require(z > 0.0 && z <= 1.0, "zeta must lie in (0,1]");
  }
};

inline EpsilonDelta basic_composition(std::size_t k, double eps0, double delta0) {
  detail::require(k >= 1, "composition of zero mechanisms");
  detail::require(eps0 >= 0.0 && delta0 >= 0.0, "per-mechanism budget must be nonnegative");
  return {static_cast<double>(k) * eps0, static_cast<double>(k) * delta0};
}

/// epsilon = sqrt(2k ln(1/delta')) eps0 + k eps0 (e^eps0 - 1), delta = delta' + k delta0.
inline EpsilonDelta advanced_composition(std::size_t k, double eps0, double delta0,
                                         double delta_prime) {
  detail::require(k >= 1, "composition of zero mechanisms");
  detail::require(eps0 >= 0.0 && delta0 >= 0.0, "per-mechanism budget must be nonnegative");
  detail::require(delta_prime > 0.0 && delta_prime < 1.0, "delta' must lie in (0,1)");
  const double kd = static_cast<double>(k);
  return {std::sqrt(2.0 * kd * std::log(1.0 / delta_prime)) * eps0 + kd * eps0 * std::expm1(eps0),
          delta_prime + kd * delta0};
}

/// Per-round rate for boosted DP 1-Rules under pure DP: eta = eps kappa n / (4 tau).
inline NoiseRate noise_rate_1r(double eps_total, double kappa, std::size_t n, std::size_t tau) {
  detail::require(tau >= 1, "round count must be positive");
  detail::require(n >= 1, "example count must be positive");
  detail::require(kappa > 0.0, "kappa must be positive");
  detail::require(eps_total > 0.0, "epsilon must be positive");
  return NoiseRate(eps_total * kappa * static_cast<double>(n) / (4.0 * static_cast<double>(tau)));
}

/// Per-round rate for boosted DP TopDown trees with t internal nodes:
/// eta = eps kappa n / (16 tau t).
inline NoiseRate noise_rate_topdown(double eps_total, double kappa, std::size_t n,
                                    std::size_t tau, std::size_t t) {
  detail::require(tau >= 1, "round count must be positive");
  detail::require(t >= 1, "internal node count must be positive");
  detail::require(n >= 1, "example count must be positive");
  detail::require(kappa > 0.0, "kappa must be positive");
  detail::require(eps_total > 0.0, "epsilon must be positive");
  return NoiseRate(eps_total * kappa * static_cast<double>(n) /
                   (16.0 * static_cast<double>(tau) * static_cast<double>(t)));
}

/// Largest per-round epsilon whose tau-fold advanced composition with
/// delta' = delta stays within eps_total. The weak learners are pure, so
/// the whole delta goes to delta'.
inline double solve_round_budget_approx(double eps_total, double delta_total, std::size_t tau) {
  detail::require(tau >= 1, "round count must be positive");
  detail::require(delta_total > 0.0 && delta_total < 1.0,
                  "approximate accounting needs delta in (0,1); use pure accounting for delta = 0");
  detail::require(eps_total > 0.0, "no positive per-round budget for epsilon <= 0");
  const double t = static_cast<double>(tau);
  const double root = std::sqrt(2.0 * t * std::log(1.0 / delta_total));
  const auto composed = [&](double e) { return root * e + t * e * std::expm1(e); };
  // composed(e) >= root*e and composed(e) >= t*e^2 bound the solution.
  double hi = std::sqrt(eps_total / t);
  if (root > 0.0) hi = std::min(hi, eps_total / root);
  double lo = 0.0;
  if (composed(hi) <= eps_total) return hi;
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    (composed(mid) <= eps_total ? lo : hi) = mid;
  }
  return lo;
}

/// DP 1-Rule selection is (4 eta zeta, 0, zeta)-private.
inline double dp_1r_round_epsilon(double eta, double zeta) { return 4.0 * eta * zeta; }

/// DP TopDown with t internal nodes is (16 t eta zeta, 0, zeta)-private:
/// 8 t eta zeta for the splits and as much again for the leaf labels.
inline double dp_topdown_round_epsilon(double eta, double zeta, std::size_t t) {
  return 16.0 * static_cast<double>(t) * eta * zeta;
}

/// Alternative accounting for TopDown's t split selections under advanced
/// composition: t (8 eta zeta)^2 + 8 eta zeta sqrt(t ln(1/delta)). Spending
/// the same amount on leaf labels makes the learner
/// (2 * this, delta, zeta)-private.
inline double topdown_split_epsilon_advanced(double eta, double zeta, std::size_t t,
                                             double delta) {
  detail::require(delta > 0.0 && delta < 1.0, "delta must lie in (0,1)");
  const double per_split = 8.0 * eta * zeta;
  const double td = static_cast<double>(t);
  return td * per_split * per_split + per_split * std::sqrt(td * std::log(1.0 / delta));
}

}  // namespace dpboost
