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


#include <gtest/gtest.h>

#include "support.hpp"

namespace dpboost {
namespace {

BooleanDataset four_records() {
  return BooleanDataset::from_rows({{1, 0}, {0, 1}, {1, 1}, {1, 0}}, {1, 1, -1, 1});
}

TEST(OneRule, CanonicalIndexRoundTrip) {
  const std::size_t r = 3;
  for (std::size_t k = 0; k < 2 * r + 2; ++k) EXPECT_EQ(OneRule::from_index(k, r).index(r), k);
  EXPECT_EQ(OneRule::from_index(1, r), OneRule::negated(0));
  EXPECT_EQ(OneRule::from_index(6, r), OneRule::constant(true));
  EXPECT_THROW(OneRule::from_index(8, r), std::invalid_argument);
}

TEST(OneRule, Predictions) {
  const std::vector<std::uint8_t> x{0, 1};
  EXPECT_EQ(OneRule::literal(1).predict(x), 1);
  EXPECT_EQ(OneRule::literal(0).predict(x), -1);
  EXPECT_EQ(OneRule::negated(0).predict(x), 1);
  EXPECT_EQ(OneRule::constant(false).predict(x), -1);
}

TEST(WeightedError, Example) {
  const auto ds = four_records();
  const std::vector<double> mu{0.4, 0.3, 0.2, 0.1};
  EXPECT_NEAR(weighted_error(ds, mu, OneRule::literal(0)), 0.5, 1e-15);
  EXPECT_NEAR(weighted_error(ds, mu, OneRule::constant(true)), 0.2, 1e-15);
  EXPECT_NEAR(weighted_error(ds, mu, OneRule::constant(false)), 0.8, 1e-15);
}

TEST(StumpErrors, MatchDirectEvaluation) {
  RngStream rng(11, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ds = testing::random_dataset(1 + rng.uniform_below(40), 1 + rng.uniform_below(6), rng);
    const auto mu = testing::random_smooth(ds.n(), 0.4, rng);
    const auto errors = stump_errors(ds, mu.probabilities());
    for (std::size_t k = 0; k < errors.size(); ++k) {
      ASSERT_NEAR(errors[k], weighted_error(ds, mu, OneRule::from_index(k, ds.r())), 1e-12);
    }
  }
}

TEST(Train1R, PicksMinimumError) {
  const auto ds = four_records();
  const auto mu = SmoothDistribution::from_probabilities({0.4, 0.3, 0.2, 0.1});
  EXPECT_EQ(train_1r(ds, mu), OneRule::constant(true));
  const auto sep = BooleanDataset::from_rows({{0, 1}, {1, 1}, {0, 0}, {1, 0}}, {-1, 1, -1, 1});
  EXPECT_EQ(train_1r(sep, SmoothDistribution::uniform(4)), OneRule::literal(0));
  const auto anti = BooleanDataset::from_rows({{0, 1}, {1, 1}, {0, 0}, {1, 0}}, {1, -1, 1, -1});
  EXPECT_EQ(train_1r(anti, SmoothDistribution::uniform(4)), OneRule::negated(0));
}

TEST(Train1R, TiesGoToLowestIndex) {
  // x0 and x1 are identical columns.
  const auto ds = BooleanDataset::from_rows({{1, 1}, {0, 0}}, {1, -1});
  EXPECT_EQ(train_1r(ds, SmoothDistribution::uniform(2)), OneRule::literal(0));
}

TEST(TrainDp1R, LargeEtaIsExact) {
  RngStream rng(12, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto ds = testing::random_dataset(30, 4, rng);
    const auto mu = testing::random_smooth(ds.n(), 0.5, rng);
    const auto errors = stump_errors(ds, mu.probabilities());
    auto sorted = errors;
    std::sort(sorted.begin(), sorted.end());
    if (sorted[1] - sorted[0] < 1e-3) continue;
    EXPECT_EQ(train_dp_1r(ds, mu, NoiseRate(1e6), rng), train_1r(ds, mu));
  }
}

TEST(TrainDp1R, DistributionMatchesExponentialMechanism) {
  RngStream rng(13, 0);
  const auto ds = testing::random_dataset(20, 2, rng);
  const auto mu = SmoothDistribution::uniform(ds.n());
  auto scores = stump_errors(ds, mu.probabilities());
  for (auto& s : scores) s = -s;
  const auto probs = exponential_mechanism_probabilities(scores, 5.0);
  std::vector<std::size_t> counts(scores.size());
  for (int k = 0; k < 30000; ++k) ++counts[train_dp_1r(ds, mu, NoiseRate(5.0), rng).index(ds.r())];
  EXPECT_GT(testing::chi_square_gof_pvalue(counts, probs), 0.001);
}

TEST(TrainDp1R, ErrorSensitivityUnderRecordDistance) {
  // |err(h, S, mu) - err(h, S', mu')| <= 2 d where d counts the swapped
  // record's mass as disjoint.
  RngStream rng(14, 0);
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto ds = testing::random_dataset(2 + rng.uniform_below(20), 1 + rng.uniform_below(4), rng);
    const auto [nb, swapped] = testing::random_neighbor(ds, rng);
    const auto mu = testing::random_smooth(ds.n(), 0.5, rng);
    const auto mu2 = testing::random_smooth(ds.n(), 0.5, rng);
    const double d = testing::record_distance(mu, mu2, swapped);
    const auto a = stump_errors(ds, mu.probabilities());
    const auto b = stump_errors(nb, mu2.probabilities());
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]) / d);
  }
  EXPECT_LE(worst, 2.0 + 1e-9);
}

TEST(Gini, Values) {
  EXPECT_DOUBLE_EQ(gini(0.5), 1.0);
  EXPECT_DOUBLE_EQ(gini(0.0), 0.0);
  EXPECT_DOUBLE_EQ(gini(1.0), 0.0);
  EXPECT_DOUBLE_EQ(gini(0.25), gini(0.75));
  EXPECT_THROW(gini(1.5), std::invalid_argument);
}

DecisionTree stump_tree(std::size_t feature) {
  DecisionTree tree;
  tree.split(0, feature);
  return tree;
}

TEST(DecisionTree, LeavesAndRouting) {
  DecisionTree tree;
  const auto [l, r] = tree.split(0, 1);
  tree.split(r, 0);
  EXPECT_EQ(tree.internal_count(), 2u);
  EXPECT_EQ(tree.leaf_count(), 3u);
  EXPECT_EQ(tree.leaves().size(), 3u);
  EXPECT_EQ(tree.leaf_of(std::vector<std::uint8_t>{1, 0}), l);
  EXPECT_THROW(tree.split(0, 0), std::invalid_argument);
  EXPECT_EQ(tree.features(), (std::set<std::size_t>{0, 1}));
}

TEST(LeafStats, WeightsAndFractions) {
  const auto ds = four_records();
  const auto mu = SmoothDistribution::from_probabilities({0.4, 0.3, 0.2, 0.1});
  const auto stats = leaf_stats(stump_tree(0), ds, mu);
  ASSERT_EQ(stats.size(), 2u);
  EXPECT_NEAR(stats[0].weight, 0.3, 1e-15);
  EXPECT_DOUBLE_EQ(stats[0].positive_fraction, 1.0);
  EXPECT_NEAR(stats[1].weight, 0.7, 1e-15);
  EXPECT_NEAR(stats[1].positive_fraction, 5.0 / 7.0, 1e-15);
}

TEST(LeafStats, EmptyLeafHasHalfFraction) {
  const auto ds = BooleanDataset::from_rows({{0}, {0}}, {1, -1});
  const auto stats = leaf_stats(stump_tree(0), ds, SmoothDistribution::uniform(2));
  EXPECT_DOUBLE_EQ(stats[1].weight, 0.0);
  EXPECT_DOUBLE_EQ(stats[1].positive_fraction, 0.5);
}

TEST(TreePotential, BoundsError) {
  RngStream rng(15, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ds = testing::random_dataset(2 + rng.uniform_below(30), 3, rng);
    const auto mu = testing::random_smooth(ds.n(), 0.3, rng);
    DecisionTree tree;
    const auto [l, r] = tree.split(0, rng.uniform_below(3));
    tree.split(rng.uniform_below(2) ? l : r, rng.uniform_below(3));
    EXPECT_GE(tree_potential(tree, ds, mu), tree_error(tree, ds, mu) - 1e-15);
    const double root = tree_potential(DecisionTree(), ds, mu);
    EXPECT_LE(tree_potential(tree, ds, mu), root + 1e-12);
  }
}

TEST(Improvement, Examples) {
  // x0 separates the labels: splitting the root removes all potential.
  const auto sep = BooleanDataset::from_rows({{0, 1}, {1, 1}, {0, 0}, {1, 0}}, {-1, 1, -1, 1});
  const auto u = SmoothDistribution::uniform(4);
  EXPECT_NEAR(improvement(DecisionTree(), 0, 0, sep, u), 1.0, 1e-15);
  EXPECT_NEAR(improvement(DecisionTree(), 0, 1, sep, u), 0.0, 1e-15);
  EXPECT_THROW(improvement(stump_tree(0), 0, 0, sep, u), std::invalid_argument);
  EXPECT_THROW(improvement(DecisionTree(), 0, 5, sep, u), std::invalid_argument);
}

TEST(Improvement, EqualsPotentialDifference) {
  RngStream rng(16, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ds = testing::random_dataset(2 + rng.uniform_below(30), 3, rng);
    const auto mu = testing::random_smooth(ds.n(), 0.3, rng);
    DecisionTree tree = stump_tree(rng.uniform_below(3));
    const auto leaves = tree.leaves();
    const std::size_t leaf = leaves[rng.uniform_below(leaves.size())];
    const std::size_t feature = rng.uniform_below(3);
    DecisionTree grown = tree;
    grown.split(leaf, feature);
    const double im = improvement(tree, leaf, feature, ds, mu);
    EXPECT_NEAR(im, tree_potential(tree, ds, mu) - tree_potential(grown, ds, mu), 1e-12);
    EXPECT_GE(im, -1e-12);
  }
}

TEST(Improvement, SensitivityCanExceedFourZeta) {
  // One record moves 0.01 of mass from a negative to a positive label inside
  // the x0 = 1 child. The improvement of splitting the root on x0 changes by
  // 6.8 times the record distance.
  const auto s = BooleanDataset::from_rows({{1}, {1}, {0}}, {1, -1, -1});
  const auto s_prime = s.with_record(1, std::vector<std::uint8_t>{1}, 1);
  const auto mu = SmoothDistribution::from_probabilities({0.1, 0.01, 0.89});
  const double zeta = testing::record_distance(mu, mu, 1);
  EXPECT_NEAR(zeta, 0.01, 1e-15);
  const double before = improvement(DecisionTree(), 0, 0, s, mu);
  const double after = improvement(DecisionTree(), 0, 0, s_prime, mu);
  EXPECT_NEAR(before, 0.36 - 0.04 / 1.1, 1e-12);
  EXPECT_NEAR(after, 4.0 * 0.11 * 0.89, 1e-12);
  EXPECT_GT(std::abs(after - before), 4.0 * zeta);
  EXPECT_LE(std::abs(after - before), 8.0 * zeta);
}

TEST(Improvement, RandomSensitivityBelowEightZeta) {
  RngStream rng(17, 0);
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto ds = testing::random_dataset(2 + rng.uniform_below(20), 1 + rng.uniform_below(4), rng);
    const auto [nb, swapped] = testing::random_neighbor(ds, rng);
    const auto mu = testing::random_smooth(ds.n(), 0.5, rng);
    const auto mu2 = testing::random_smooth(ds.n(), 0.5, rng);
    const double d = testing::record_distance(mu, mu2, swapped);
    for (std::size_t j = 0; j < ds.r(); ++j) {
      const double a = improvement(DecisionTree(), 0, j, ds, mu);
      const double b = improvement(DecisionTree(), 0, j, nb, mu2);
      worst = std::max(worst, std::abs(a - b) / d);
    }
  }
  EXPECT_LE(worst, 8.0);
}

TEST(SingleNodeGini, SensitivityWithinFiveQuarters) {
  // |w G(q) - w' G(q')| / 4 = |PN/W - P'N'/W'| <= (5/4) d.
  RngStream rng(18, 0);
  double worst = 0.0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto ds = testing::random_dataset(1 + rng.uniform_below(15), 1, rng);
    const auto [nb, swapped] = testing::random_neighbor(ds, rng);
    const auto mu = testing::random_smooth(ds.n(), 0.3, rng);
    const auto mu2 = testing::random_smooth(ds.n(), 0.3, rng);
    const double d = testing::record_distance(mu, mu2, swapped);
    const double a = tree_potential(DecisionTree(), ds, mu) / 4.0;
    const double b = tree_potential(DecisionTree(), nb, mu2) / 4.0;
    worst = std::max(worst, std::abs(a - b) / d);
  }
  EXPECT_LE(worst, 1.25 + 1e-9);
}

TEST(LabelLeaves, MajorityAndNoisy) {
  const auto ds = four_records();
  const auto mu = SmoothDistribution::from_probabilities({0.4, 0.3, 0.2, 0.1});
  const auto tree = label_leaves_majority(stump_tree(1), ds, mu);
  // x1 = 0: records 0 and 3, both positive; x1 = 1: +0.3 vs -0.2.
  EXPECT_EQ(tree.predict(std::vector<std::uint8_t>{0, 0}), 1);
  EXPECT_EQ(tree.predict(std::vector<std::uint8_t>{0, 1}), 1);
  RngStream rng(19, 0);
  const auto exact = label_leaves_noisy(stump_tree(1), ds, mu, 1e9, 0.25, rng);
  EXPECT_EQ(exact, tree);
}

TEST(LabelLeaves, EmptyLeafIsAFairCoin) {
  const auto ds = BooleanDataset::from_rows({{0}, {0}, {0}}, {1, 1, -1});
  const auto mu = SmoothDistribution::uniform(3);
  RngStream rng(20, 0);
  int positive = 0;
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) {
    const auto tree = label_leaves_noisy(stump_tree(0), ds, mu, 1.0, 1.0 / 3.0, rng);
    positive += tree.predict(std::vector<std::uint8_t>{1}) == 1;
  }
  EXPECT_NEAR(static_cast<double>(positive) / draws, 0.5, 0.02);
}

TEST(MaxUsefulSplits, Caps) {
  EXPECT_EQ(max_useful_splits(4, 2), 3u);
  EXPECT_EQ(max_useful_splits(100, 2), 3u);
  EXPECT_EQ(max_useful_splits(3, 10), 2u);
  EXPECT_EQ(max_useful_splits(1, 10), 0u);
}

TEST(TrainDpTopDown, SeparableDataWithLittleNoise) {
  // y = x0 AND x1 needs two splits.
  RngStream rng(21, 0);
  std::vector<std::vector<int>> rows;
  std::vector<int> labels;
  for (int k = 0; k < 40; ++k) {
    const int a = k % 2;
    const int b = (k / 2) % 2;
    const int c = (k / 4) % 2;
    rows.push_back({a, b, c});
    labels.push_back(a && b ? 1 : -1);
  }
  const auto ds = BooleanDataset::from_rows(rows, labels);
  const auto mu = SmoothDistribution::uniform(ds.n());
  const auto tree = train_dp_topdown(ds, mu, 2, NoiseRate(1e5), rng, 1.0 / 40);
  EXPECT_EQ(tree.internal_count(), 2u);
  EXPECT_DOUBLE_EQ(weighted_error(ds, mu, tree), 0.0);
  EXPECT_EQ(tree.features(), (std::set<std::size_t>{0, 1}));
}

TEST(TrainDpTopDown, StopsAtUsefulSplitCount) {
  RngStream rng(22, 0);
  const auto ds = testing::random_dataset(10, 2, rng);
  const auto tree = train_dp_topdown(ds, SmoothDistribution::uniform(10), 20, NoiseRate(1.0), rng);
  EXPECT_LE(tree.internal_count(), 3u);
}

TEST(TrainDpTopDown, Validation) {
  RngStream rng(23, 0);
  const auto ds = testing::random_dataset(10, 2, rng);
  EXPECT_THROW(train_dp_topdown(ds, SmoothDistribution::uniform(10), 0, NoiseRate(1.0), rng),
               std::invalid_argument);
  EXPECT_THROW(train_dp_topdown(ds, SmoothDistribution::uniform(9), 1, NoiseRate(1.0), rng),
               std::invalid_argument);
}

TEST(TrainDpTopDown, SplitsOnSeparatingFeature) {
  // Balanced labels equal to x2.
  const auto ds = BooleanDataset::from_rows({{0, 1, 0}, {1, 0, 1}, {1, 1, 0}, {0, 0, 1}, {1, 0, 0}, {0, 1, 1}},
                                            {-1, 1, -1, 1, -1, 1});
  const auto mu = SmoothDistribution::uniform(ds.n());
  RngStream rng(24, 0);
  const auto tree = train_dp_topdown(ds, mu, 1, NoiseRate(1e6), rng, 1.0 / 6);
  EXPECT_EQ(tree.node(0).feature, 2);
  EXPECT_EQ(tree.predict(std::vector<std::uint8_t>{0, 0, 0}), -1);
  EXPECT_EQ(tree.predict(std::vector<std::uint8_t>{0, 0, 1}), 1);
  EXPECT_DOUBLE_EQ(weighted_error(ds, mu, tree), 0.0);
}

TEST(TrainDpTopDown, Deterministic) {
  RngStream data_rng(25, 0);
  const auto ds = testing::random_dataset(40, 5, data_rng);
  const auto mu = testing::random_smooth(ds.n(), 0.4, data_rng);
  RngStream a(26, 3);
  RngStream b(26, 3);
  EXPECT_EQ(train_dp_topdown(ds, mu, 4, NoiseRate(20.0), a), train_dp_topdown(ds, mu, 4, NoiseRate(20.0), b));
}

TEST(TrainDpTopDown, AuditWithinDeclaredEpsilon) {
  const auto [s, sp] = audit_toy_pair();
  const auto u = SmoothDistribution::uniform(s.n());
  const double zeta = 0.125;
  const std::size_t t = 1;
  const double eta = 1.0 / (16.0 * t * zeta);
  const AuditedMechanism td = [&](const BooleanDataset& d, const SmoothDistribution& m, RngStream& r) {
    return canonical_string(Hypothesis(train_dp_topdown(d, m, t, NoiseRate(eta), r, zeta)));
  };
  EXPECT_LE(audit_weak_learner(td, s, sp, u, u, 20000, RngStream(27, 0), zeta).epsilon_hat, 1.2);
}

TEST(Hypothesis, JsonRoundTrip) {
  DecisionTree tree;
  const auto [l, r] = tree.split(0, 2);
  tree.set_label(l, -1);
  tree.split(r, 0);
  for (const Hypothesis& h : {Hypothesis(OneRule::negated(3)), Hypothesis(OneRule::constant(false)),
                              Hypothesis(tree)}) {
    const auto back = hypothesis_from_json(nlohmann::json::parse(to_json(h).dump()));
    EXPECT_EQ(back, h);
    EXPECT_EQ(canonical_string(back), canonical_string(h));
  }
}

}  // namespace
}  // namespace dpboost
