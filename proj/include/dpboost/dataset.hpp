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
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dpboost/errors.hpp"
#include "dpboost/rng.hpp"

namespace dpboost {

/// n examples over r Boolean features with labels in {+1, -1}.
///
/// Immutable after construction; the feature matrix is stored row-major as
/// bytes holding 0 or 1.
class BooleanDataset {
 public:
  BooleanDataset() = default;

  BooleanDataset(std::size_t n, std::size_t r, std::vector<std::uint8_t> x, std::vector<int> y,
                 std::vector<std::string> feature_names)
      : n_(n), r_(r), x_(std::move(x)), y_(std::move(y)), names_(std::move(feature_names)) {
    detail::require(x_.size() == n_ * r_, "feature matrix size does not match n*r");
    detail::require(y_.size() == n_, "label vector size does not match n");
    for (auto v : x_) detail::require(v <= 1, "feature values must be 0 or 1");
    for (int v : y_) detail::require(v == 1 || v == -1, "labels must be +1 or -1");
    if (names_.empty()) {
      names_.reserve(r_);
      for (std::size_t j = 0; j < r_; ++j) names_.push_back("x" + std::to_string(j));
    }
    detail::require(names_.size() == r_, "feature name count does not match r");
    std::unordered_set<std::string> seen;
    for (const auto& name : names_) {
      detail::require(seen.insert(name).second, "duplicate feature name: " + name);
    }
  }

  /// Convenience constructor from nested rows, mostly for tests.
  static BooleanDataset from_rows(const std::vector<std::vector<int>>& rows,
                                  const std::vector<int>& labels,
                                  std::vector<std::string> feature_names = {}) {
    const std::size_t n = rows.size();
    const std::size_t r = n == 0 ? feature_names.size() : rows.front().size();
    std::vector<std::uint8_t> x;
    x.reserve(n * r);
    for (const auto& row : rows) {
      detail::require(row.size() == r, "ragged rows");
      for (int v : row) {
        detail::require(v == 0 || v == 1, "feature values must be 0 or 1");
        x.push_back(static_cast<std::uint8_t>(v));
      }
    }
    return BooleanDataset(n, r, std::move(x), labels, std::move(feature_names));
  }

  std::size_t n() const { return n_; }
  std::size_t r() const { return r_; }
  bool empty() const { return n_ == 0; }

  std::span<const std::uint8_t> row(std::size_t i) const {
    return {x_.data() + i * r_, r_};
  }
  std::uint8_t value(std::size_t i, std::size_t j) const { return x_[i * r_ + j]; }
  int label(std::size_t i) const { return y_[i]; }
  std::span<const int> labels() const { return y_; }
  const std::vector<std::string>& feature_names() const { return names_; }

  /// Rows selected by `indices`, in that order.
  BooleanDataset subset(std::span<const std::size_t> indices) const {
    std::vector<std::uint8_t> x;
    std::vector<int> y;
    x.reserve(indices.size() * r_);
    y.reserve(indices.size());
    for (std::size_t i : indices) {
      detail::require(i < n_, "subset index out of range");
      auto src = row(i);
      x.insert(x.end(), src.begin(), src.end());
      y.push_back(y_[i]);
    }
    return BooleanDataset(indices.size(), r_, std::move(x), std::move(y), names_);
  }

  /// Neighboring dataset: record i replaced by (features, label).
  BooleanDataset with_record(std::size_t i, std::span<const std::uint8_t> features,
                             int label) const {
    detail::require(i < n_, "record index out of range");
    detail::require(features.size() == r_, "replacement record has wrong width");
    std::vector<std::uint8_t> x = x_;
    std::vector<int> y = y_;
    std::copy(features.begin(), features.end(), x.begin() + static_cast<std::ptrdiff_t>(i * r_));
    y[i] = label;
    return BooleanDataset(n_, r_, std::move(x), std::move(y), names_);
  }

  /// Indices of records that differ between two datasets of equal shape.
  std::vector<std::size_t> differing_records(const BooleanDataset& other) const {
    detail::require(n_ == other.n_ && r_ == other.r_, "datasets have different shapes");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i) {
      auto a = row(i);
      auto b = other.row(i);
      if (y_[i] != other.y_[i] || !std::equal(a.begin(), a.end(), b.begin())) out.push_back(i);
    }
    return out;
  }

  bool operator==(const BooleanDataset& other) const {
    return n_ == other.n_ && r_ == other.r_ && x_ == other.x_ && y_ == other.y_ &&
           names_ == other.names_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t r_ = 0;
  std::vector<std::uint8_t> x_;
  std::vector<int> y_;
  std::vector<std::string> names_;
};

struct Fold {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validate;
};

/// k-fold split of [0, n). The permutation is a Fisher-Yates shuffle driven
/// by RngStream(seed, 0); fold sizes differ by at most one. Index lists are
/// sorted ascending.
inline std::vector<Fold> make_folds(std::size_t n, std::size_t k, std::uint64_t seed) {
  detail::require(k >= 2, "fold count must be at least 2");
  detail::require(k <= n, "fold count exceeds example count");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  RngStream rng(seed, 0);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = rng.uniform_below(i);
    std::swap(perm[i - 1], perm[j]);
  }
  std::vector<std::size_t> fold_of(n);
  const std::size_t base = n / k;
  const std::size_t extra = n % k;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    for (std::size_t s = 0; s < size; ++s) fold_of[perm[pos++]] = f;
  }
  std::vector<Fold> folds(k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t f = 0; f < k; ++f) {
      (fold_of[i] == f ? folds[f].validate : folds[f].train).push_back(i);
    }
  }
  return folds;
}

inline std::vector<Fold> make_folds(const BooleanDataset& ds, std::size_t k, std::uint64_t seed) {
  return make_folds(ds.n(), k, seed);
}

}  // namespace dpboost
