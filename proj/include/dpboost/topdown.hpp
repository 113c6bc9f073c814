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
#include <map>
#include <vector>

#include "dpboost/dataset.hpp"
#include "dpboost/hypothesis.hpp"
#include "dpboost/measures.hpp"
#include "dpboost/mechanisms.hpp"
#include "dpboost/rng.hpp"

namespace dpboost {

/// Gini splitting criterion G(q) = 4q(1-q): concave, symmetric about 1/2, G(1/2) = 1.
inline double gini(double q) {
  detail::require(q >= 0.0 && q <= 1.0, "gini argument must lie in [0,1]");
  return 4.0 * q * (1.0 - q);
}

struct LeafStats {
  std::size_t leaf = 0;
  /// Probability mass reaching the leaf.
  double weight = 0.0;
  /// Weighted fraction of that mass labeled +1; 1/2 for an empty leaf.
  double positive_fraction = 0.5;
};

namespace detail {

struct Mass {
  double total = 0.0;
  double positive = 0.0;
};

// w * G(q) written in terms of masses: 4 P (W - P) / W.
inline double weighted_gini(const Mass& m) {
  if (m.total <= 0.0) return 0.0;
  const double negative = std::max(0.0, m.total - m.positive);
  return 4.0 * m.positive * negative / m.total;
}

inline std::map<std::size_t, Mass> leaf_masses(const DecisionTree& tree, const BooleanDataset& ds,
                                               std::span<const double> mu) {
  require(mu.size() == ds.n(), "weights and dataset have different sizes");
  std::map<std::size_t, Mass> masses;
  for (std::size_t leaf : tree.leaves()) masses[leaf];
  for (std::size_t i = 0; i < ds.n(); ++i) {
    Mass& m = masses[tree.leaf_of(ds.row(i))];
    m.total += mu[i];
    if (ds.label(i) > 0) m.positive += mu[i];
  }
  return masses;
}

}  // namespace detail

/// Per-leaf weight and positive fraction, in left-to-right leaf order.
inline std::vector<LeafStats> leaf_stats(const DecisionTree& tree, const BooleanDataset& ds,
                                         const SmoothDistribution& mu) {
  const auto masses = detail::leaf_masses(tree, ds, mu.probabilities());
  std::vector<LeafStats> out;
  for (std::size_t leaf : tree.leaves()) {
    const auto& m = masses.at(leaf);
    LeafStats s;
    s.leaf = leaf;
    s.weight = m.total;
    s.positive_fraction = m.total > 0.0 ? std::clamp(m.positive / m.total, 0.0, 1.0) : 0.5;
    out.push_back(s);
  }
  return out;
}

/// G(T, mu) = sum over leaves of w(l) G(q(l)).
inline double tree_potential(const DecisionTree& tree, const BooleanDataset& ds,
                             const SmoothDistribution& mu) {
  double total = 0.0;
  for (const auto& s : leaf_stats(tree, ds, mu)) total += s.weight * gini(s.positive_fraction);
  return total;
}

/// err(T, mu) = sum over leaves of w(l) min(q(l), 1 - q(l)): the error of
/// majority labels, a lower bound for tree_potential.
inline double tree_error(const DecisionTree& tree, const BooleanDataset& ds,
                         const SmoothDistribution& mu) {
  double total = 0.0;
  for (const auto& s : leaf_stats(tree, ds, mu)) {
    total += s.weight * std::min(s.positive_fraction, 1.0 - s.positive_fraction);
  }
  return total;
}

namespace detail {

// Improvement of splitting a leaf on each feature, given the examples that
// reach it. Only the leaf's own terms change, since G is additive over leaves.
inline std::vector<double> leaf_improvements(const BooleanDataset& ds, std::span<const double> mu,
                                             std::span<const std::size_t> examples) {
  const std::size_t r = ds.r();
  Mass parent;
  std::vector<Mass> ones(r);
  for (std::size_t i : examples) {
    const double m = mu[i];
    const bool pos = ds.label(i) > 0;
    parent.total += m;
    if (pos) parent.positive += m;
    const auto row = ds.row(i);
    for (std::size_t j = 0; j < r; ++j) {
      if (!row[j]) continue;
      ones[j].total += m;
      if (pos) ones[j].positive += m;
    }
  }
  const double before = weighted_gini(parent);
  std::vector<double> im(r);
  for (std::size_t j = 0; j < r; ++j) {
    const Mass zeros{parent.total - ones[j].total, parent.positive - ones[j].positive};
    im[j] = before - weighted_gini(zeros) - weighted_gini(ones[j]);
  }
  return im;
}

inline std::vector<std::size_t> examples_at(const DecisionTree& tree, const BooleanDataset& ds,
                                            std::size_t leaf) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ds.n(); ++i) {
    if (tree.leaf_of(ds.row(i)) == leaf) out.push_back(i);
  }
  return out;
}

}  // namespace detail

/// im = G(T, mu) - G(T(leaf, feature), mu). Nonnegative up to rounding.
inline double improvement(const DecisionTree& tree, std::size_t leaf, std::size_t feature,
                          const BooleanDataset& ds, const SmoothDistribution& mu) {
  detail::require(tree.is_leaf(leaf), "improvement: node is not a leaf of the tree");
  detail::require(feature < ds.r(), "improvement: split feature out of range");
  detail::require(mu.size() == ds.n(), "weights and dataset have different sizes");
  const auto examples = detail::examples_at(tree, ds, leaf);
  return detail::leaf_improvements(ds, mu.probabilities(), examples)[feature];
}

/// Labels each leaf by the sign of its noisy signed mass
/// sum_{i reaches leaf} mu(i) y_i + Laplace(2 zeta / epsilon); zero goes to +1.
/// The leaves partition the data, so the whole labeling costs epsilon.
inline DecisionTree label_leaves_noisy(DecisionTree tree, const BooleanDataset& ds,
                                       const SmoothDistribution& mu, double epsilon, double zeta,
                                       RngStream& rng) {
  detail::require(epsilon > 0.0, "leaf labeling budget must be positive");
  detail::require(zeta > 0.0, "zeta must be positive");
  detail::require(mu.size() == ds.n(), "weights and dataset have different sizes");
  std::map<std::size_t, double> signed_mass;
  for (std::size_t leaf : tree.leaves()) signed_mass[leaf] = 0.0;
  for (std::size_t i = 0; i < ds.n(); ++i) {
    signed_mass[tree.leaf_of(ds.row(i))] += mu[i] * ds.label(i);
  }
  const double scale = 2.0 * zeta / epsilon;
  for (std::size_t leaf : tree.leaves()) {
    const double noisy = signed_mass[leaf] + sample_laplace(scale, rng);
    tree.set_label(leaf, noisy >= 0.0 ? 1 : -1);
  }
  return tree;
}

/// Labels leaves by exact weighted majority (ties to +1).
inline DecisionTree label_leaves_majority(DecisionTree tree, const BooleanDataset& ds,
                                          const SmoothDistribution& mu) {
  std::map<std::size_t, double> signed_mass;
  for (std::size_t leaf : tree.leaves()) signed_mass[leaf] = 0.0;
  for (std::size_t i = 0; i < ds.n(); ++i) {
    signed_mass[tree.leaf_of(ds.row(i))] += mu[i] * ds.label(i);
  }
  for (std::size_t leaf : tree.leaves()) tree.set_label(leaf, signed_mass[leaf] >= 0.0 ? 1 : -1);
  return tree;
}

/// Internal nodes a literal-split tree can usefully hold: never more than
/// n - 1 or 2^r - 1. Depends only on the public shape (n, r).
inline std::size_t max_useful_splits(std::size_t n, std::size_t r) {
  const std::size_t by_n = n == 0 ? 0 : n - 1;
  const std::size_t by_r = r >= 63 ? by_n : (std::size_t{1} << r) - 1;
  return std::min(by_n, by_r);
}

/// DP TopDown tree induction. Grows up to t internal nodes, each chosen by
/// the exponential mechanism at rate eta over (leaf, feature) pairs scored by
/// their Gini improvement, then labels the leaves with Laplace noise at
/// budget 8 t eta zeta. (16 t eta zeta, 0, zeta)-DP as a weak learner.
///
/// Growth stops early once t exceeds max_useful_splits(n, r); the tree's
/// internal_count() records how many splits were made.
inline DecisionTree train_dp_topdown(const BooleanDataset& ds, const SmoothDistribution& mu,
                                     std::size_t t, NoiseRate eta, RngStream& rng,
                                     double zeta = 1.0) {
  detail::require(t >= 1, "TopDown needs at least one internal node");
  detail::require(mu.size() == ds.n(), "weights and dataset have different sizes");
  const auto p = mu.probabilities();
  const std::size_t splits = std::min(t, max_useful_splits(ds.n(), ds.r()));

  DecisionTree tree;
  // Leaf id -> (examples reaching it, improvement per feature).
  std::map<std::size_t, std::pair<std::vector<std::size_t>, std::vector<double>>> candidates;
  {
    std::vector<std::size_t> all(ds.n());
    for (std::size_t i = 0; i < ds.n(); ++i) all[i] = i;
    auto im = detail::leaf_improvements(ds, p, all);
    candidates.emplace(0, std::make_pair(std::move(all), std::move(im)));
  }
  std::vector<double> scores;
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t step = 0; step < splits; ++step) {
    scores.clear();
    index.clear();
    for (const auto& [leaf, entry] : candidates) {
      for (std::size_t j = 0; j < entry.second.size(); ++j) {
        scores.push_back(entry.second[j]);
        index.emplace_back(leaf, j);
      }
    }
    const auto [leaf, feature] = index[weighted_exponential_mechanism(scores, eta, rng)];
    auto examples = std::move(candidates.at(leaf).first);
    candidates.erase(leaf);
    const auto [left, right] = tree.split(leaf, feature);
    std::vector<std::size_t> zeros;
    std::vector<std::size_t> ones;
    for (std::size_t i : examples) (ds.value(i, feature) ? ones : zeros).push_back(i);
    auto im_left = detail::leaf_improvements(ds, p, zeros);
    auto im_right = detail::leaf_improvements(ds, p, ones);
    candidates.emplace(left, std::make_pair(std::move(zeros), std::move(im_left)));
    candidates.emplace(right, std::make_pair(std::move(ones), std::move(im_right)));
  }
  const double label_budget = 8.0 * static_cast<double>(t) * eta.value() * zeta;
  return label_leaves_noisy(std::move(tree), ds, mu, label_budget, zeta, rng);
}

}  // namespace dpboost
