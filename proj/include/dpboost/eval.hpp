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
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "dpboost/boosting.hpp"
#include "dpboost/dataset.hpp"
#include "dpboost/rng.hpp"

namespace dpboost {

inline double accuracy(const Ensemble& ens, const BooleanDataset& ds) {
  detail::require(ds.n() >= 1, "accuracy of an empty dataset");
  detail::require(ds.r() == ens.num_features, "model and data have different feature counts");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < ds.n(); ++i) {
    if (majority_predict(ens, ds.row(i)) == ds.label(i)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(ds.n());
}

/// Distinct feature indices used anywhere in the ensemble.
inline std::set<std::size_t> features_used(const Ensemble& ens) {
  std::set<std::size_t> out;
  for (const auto& h : ens.hypotheses) {
    const auto f = features_used(h);
    out.insert(f.begin(), f.end());
  }
  return out;
}

struct Summary {
  double mean = 0.0;
  /// Sample standard deviation; 0 for fewer than two values.
  double std = 0.0;
};

inline Summary summarize(const std::vector<double>& xs) {
  Summary s;
  if (xs.empty()) return s;
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() < 2) return s;
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return s;
}

/// Worker count: DPBOOST_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("DPBOOST_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs job(0..count-1) on up to `workers` threads. Jobs write to their own
/// slots, so the result never depends on scheduling. The first exception is
/// rethrown after all workers finish.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job,
                         std::size_t workers = worker_count()) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct CvRun {
  std::size_t repeat = 0;
  std::size_t fold = 0;
  double accuracy = 0.0;
  std::size_t features = 0;
};

struct CvResult {
  std::vector<CvRun> runs;
  Summary accuracy;
  Summary features;
};

/// Repeated k-fold cross-validation. Repeat `rep` shuffles with
/// make_folds(n, k, mix64(seed + rep)); the run for (rep, fold) trains with
/// RngStream(seed, cell).derive(rep * k + fold).
inline CvResult cross_validate(const BooleanDataset& ds, const BoostConfig& cfg, std::size_t k,
                               std::size_t repeats, std::uint64_t seed, std::uint64_t cell = 0,
                               std::size_t workers = worker_count()) {
  cfg.validate();
  detail::require(repeats >= 1, "at least one repeat is required");
  std::vector<std::vector<Fold>> folds;
  for (std::size_t rep = 0; rep < repeats; ++rep) {
    folds.push_back(make_folds(ds.n(), k, RngStream::mix64(seed + rep)));
  }
  const RngStream base(seed, cell);
  CvResult result;
  result.runs.resize(repeats * k);
  parallel_for(
      repeats * k,
      [&](std::size_t job) {
        const std::size_t rep = job / k;
        const std::size_t f = job % k;
        const Fold& fold = folds[rep][f];
        const auto train = ds.subset(fold.train);
        const auto validate = ds.subset(fold.validate);
        const Ensemble ens = lazybb(train, cfg, base.derive(job));
        result.runs[job] = {rep, f, accuracy(ens, validate), features_used(ens).size()};
      },
      workers);
  std::vector<double> acc;
  std::vector<double> feats;
  for (const auto& r : result.runs) {
    acc.push_back(r.accuracy);
    feats.push_back(static_cast<double>(r.features));
  }
  result.accuracy = summarize(acc);
  result.features = summarize(feats);
  return result;
}

struct GridSpec {
  std::vector<std::size_t> tau_values{5, 9, 15, 19, 25, 29, 39, 49, 65, 75, 99};
  std::vector<double> lambda_values{0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  std::vector<double> kappa_values{0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  std::vector<double> epsilon_values{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 1, 3, 5};
  std::size_t folds = 5;
  std::size_t repeats = 1;

  void validate() const {
    detail::require(!tau_values.empty() && !lambda_values.empty() && !kappa_values.empty() &&
                        !epsilon_values.empty(),
                    "grid has an empty parameter list");
    for (auto t : tau_values) detail::require(t >= 1, "grid round counts must be at least 1");
    for (auto l : lambda_values) detail::require(l > 0.0 && l < 1.0, "grid lambda outside (0,1)");
    for (auto k : kappa_values) detail::require(k > 0.0 && k < 1.0, "grid kappa outside (0,1)");
    for (auto e : epsilon_values) detail::require(e > 0.0, "grid epsilon must be positive");
    detail::require(folds >= 2, "grid needs at least 2 folds");
    detail::require(repeats >= 1, "grid needs at least one repeat");
  }
};

struct GridRow {
  double epsilon = 0.0;
  std::size_t tau = 0;
  double lambda = 0.0;
  double kappa = 0.0;
  Summary accuracy;
  Summary features;
};

struct GridReport {
  std::vector<GridRow> rows;
  /// One winner per epsilon, in the order of GridSpec::epsilon_values.
  std::vector<GridRow> winners;
};

/// Full grid: for every epsilon, cross-validates each (tau, lambda, kappa)
/// cell with `base` supplying the learner and accounting. Cell c of the
/// flattened grid uses RNG stream c. Winner per epsilon: highest mean
/// accuracy, ties to smaller tau, then smaller lambda, then smaller kappa.
inline GridReport grid_search(const BooleanDataset& ds, const GridSpec& spec, BoostConfig base,
                              std::uint64_t seed, std::size_t workers = worker_count()) {
  spec.validate();
  std::vector<GridRow> cells;
  for (double eps : spec.epsilon_values) {
    for (std::size_t tau : spec.tau_values) {
      for (double lambda : spec.lambda_values) {
        for (double kappa : spec.kappa_values) {
          GridRow row;
          row.epsilon = eps;
          row.tau = tau;
          row.lambda = lambda;
          row.kappa = kappa;
          cells.push_back(row);
        }
      }
    }
  }
  for (const auto& c : cells) {
    BoostConfig cfg = base;
    cfg.epsilon = c.epsilon;
    cfg.rounds = c.tau;
    cfg.lambda = c.lambda;
    cfg.kappa = c.kappa;
    cfg.validate();
  }
  // Cells run in parallel; folds inside a cell run sequentially.
  parallel_for(
      cells.size(),
      [&](std::size_t c) {
        BoostConfig cfg = base;
        cfg.epsilon = cells[c].epsilon;
        cfg.rounds = cells[c].tau;
        cfg.lambda = cells[c].lambda;
        cfg.kappa = cells[c].kappa;
        const CvResult cv = cross_validate(ds, cfg, spec.folds, spec.repeats, seed, c, 1);
        cells[c].accuracy = cv.accuracy;
        cells[c].features = cv.features;
      },
      workers);

  GridReport report;
  report.rows = cells;
  std::sort(report.rows.begin(), report.rows.end(), [](const GridRow& a, const GridRow& b) {
    return std::tie(a.epsilon, a.tau, a.lambda, a.kappa) <
           std::tie(b.epsilon, b.tau, b.lambda, b.kappa);
  });
  for (double eps : spec.epsilon_values) {
    const GridRow* best = nullptr;
    for (const auto& row : report.rows) {
      if (row.epsilon != eps) continue;
      if (!best || row.accuracy.mean > best->accuracy.mean) best = &row;
    }
    report.winners.push_back(*best);
  }
  return report;
}

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
};

/// Histogram of normalized margins with `bins` equal bins over [-1, 1];
/// the last bin is closed on the right.
inline std::vector<HistogramBin> margin_histogram(const std::vector<double>& normalized,
                                                  std::size_t bins = 21) {
  detail::require(bins >= 1, "histogram needs at least one bin");
  std::vector<HistogramBin> out(bins);
  const double width = 2.0 / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].lo = -1.0 + width * static_cast<double>(b);
    out[b].hi = b + 1 == bins ? 1.0 : -1.0 + width * static_cast<double>(b + 1);
  }
  for (double m : normalized) {
    detail::require(m >= -1.0 && m <= 1.0, "normalized margin outside [-1,1]");
    auto b = static_cast<std::size_t>(std::floor((m + 1.0) / width));
    out[std::min(b, bins - 1)].count++;
  }
  return out;
}

/// Empirical Rademacher complexity of the 2r+2 stumps on the sample:
/// (1/m) sum over draws of max_h (1/n) sum_i s_i h(x_i) with s uniform +-1.
/// A literal and its negation give opposite correlations, so the max is
/// max(|sum_{x_j=1} s_i - sum_{x_j=0} s_i|, |sum_i s_i|) / n.
inline double estimate_rademacher(const BooleanDataset& ds, std::size_t draws, RngStream rng) {
  detail::require(draws >= 100, "Rademacher estimation needs at least 100 draws");
  detail::require(ds.n() >= 1, "Rademacher estimation on an empty dataset");
  const std::size_t n = ds.n();
  const std::size_t r = ds.r();
  std::vector<long long> ones(r);
  std::vector<int> signs(n);
  double total = 0.0;
  for (std::size_t d = 0; d < draws; ++d) {
    long long sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      signs[i] = (rng.next_u64() >> 63) ? 1 : -1;
      sum += signs[i];
    }
    std::fill(ones.begin(), ones.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = ds.row(i);
      for (std::size_t j = 0; j < r; ++j) {
        if (row[j]) ones[j] += signs[i];
      }
    }
    long long best = sum < 0 ? -sum : sum;
    for (std::size_t j = 0; j < r; ++j) {
      const long long corr = 2 * ones[j] - sum;
      best = std::max(best, corr < 0 ? -corr : corr);
    }
    total += static_cast<double>(best) / static_cast<double>(n);
  }
  return total / static_cast<double>(draws);
}

struct MarginBound {
  double theta = 0.0;
  /// Pessimistic accuracy estimate, clamped to [0, 1].
  double accuracy = 0.0;
};

/// Voting-classifier margin bound:
/// error <= P[margin < theta] + 2 R / theta + sqrt(ln(1/0.05) / (2n)),
/// minimized over theta in {0.05, 0.10, ..., 1.00}.
inline MarginBound margin_bound_accuracy(const std::vector<double>& normalized, double rademacher) {
  detail::require(!normalized.empty(), "margin bound needs at least one margin");
  const double n = static_cast<double>(normalized.size());
  const double confidence = std::sqrt(std::log(1.0 / 0.05) / (2.0 * n));
  MarginBound best{0.0, -1.0};
  for (int k = 1; k <= 20; ++k) {
    const double theta = 0.05 * k;
    const auto below = std::count_if(normalized.begin(), normalized.end(),
                                     [&](double m) { return m < theta; });
    const double bound = static_cast<double>(below) / n + 2.0 * rademacher / theta + confidence;
    const double acc = std::clamp(1.0 - bound, 0.0, 1.0);
    if (acc > best.accuracy) best = {theta, acc};
  }
  return best;
}

}  // namespace dpboost
