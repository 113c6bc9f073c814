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

// Command-line front end. run_cli() is the whole program; main() only
// forwards to it, so tests can drive commands in-process.

#pragma once

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dpboost/dpboost.hpp"

namespace dpboost::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DataArgs {
  std::string path;
  std::string format = "csv";
  std::string schema;
  std::string label_column;
  std::string positive_label;
};

struct TrainArgs {
  std::string learner = "dp-1r";
  double epsilon = 1.0;
  double delta = 0.0;
  double kappa = 0.35;
  double lambda = 0.5;
  std::size_t rounds = 9;
  std::size_t tree_nodes = 1;
  std::string accounting;
  std::uint64_t seed = 0;
  std::size_t stop_after_negative = 0;
};

inline void add_data_options(CLI::App* cmd, DataArgs& d, const std::string& flag = "--data") {
  cmd->add_option(flag, d.path, "input dataset");
  cmd->add_option("--format", d.format, "csv or libsvm")->check(CLI::IsMember({"csv", "libsvm"}));
  cmd->add_option("--schema", d.schema, "JSON encoding schema");
  cmd->add_option("--label-column", d.label_column, "label column name (CSV; default last)");
  cmd->add_option("--positive-label", d.positive_label, "label value mapped to +1");
}

inline void add_train_options(CLI::App* cmd, TrainArgs& t) {
  cmd->add_option("--learner", t.learner, "1r, dp-1r or dp-topdown")
      ->check(CLI::IsMember({"1r", "dp-1r", "dp-topdown"}));
  cmd->add_option("--epsilon", t.epsilon, "total privacy budget");
  cmd->add_option("--delta", t.delta, "total delta (0 for pure DP)");
  cmd->add_option("--kappa", t.kappa, "density parameter in (0,1)");
  cmd->add_option("--lambda", t.lambda, "learning rate in (0,1)");
  cmd->add_option("--rounds", t.rounds, "boosting rounds");
  cmd->add_option("--tree-nodes", t.tree_nodes, "internal nodes per tree (dp-topdown)");
  cmd->add_option("--accounting", t.accounting, "basic or advanced (default: by delta)")
      ->check(CLI::IsMember({"basic", "advanced"}));
  cmd->add_option("--seed", t.seed, "master seed");
  cmd->add_option("--stop-after-negative", t.stop_after_negative,
                  "stop after this many consecutive negative-advantage rounds (0 = never)");
}

inline BoostConfig make_config(const TrainArgs& t) {
  BoostConfig cfg;
  cfg.learner = parse_learner(t.learner);
  cfg.epsilon = t.epsilon;
  cfg.delta = t.delta;
  cfg.kappa = t.kappa;
  cfg.lambda = t.lambda;
  cfg.rounds = t.rounds;
  cfg.tree_nodes = t.tree_nodes;
  cfg.seed = t.seed;
  cfg.stop_after_negative = t.stop_after_negative;
  if (t.accounting.empty()) {
    cfg.accounting = t.delta > 0.0 ? Accounting::kAdvanced : Accounting::kBasic;
  } else {
    cfg.accounting = parse_accounting(t.accounting);
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

/// Boolean schema for data without a schema file: every feature column must
/// hold only true/false or 0/1.
inline EncodingSchema inferred_schema(const RawDataset& raw, const DataArgs& d) {
  for (std::size_t c = 0; c < raw.columns.size(); ++c) {
    const auto& col = raw.columns[c];
    if (col.name == raw.label_column || col.kind == ColumnKind::kBoolean) continue;
    bool binary = col.kind == ColumnKind::kNumeric;
    for (const auto& row : raw.rows) {
      if (!binary) break;
      if (!row[c]) continue;
      const auto v = detail::parse_number(*row[c]);
      binary = v && (*v == 0.0 || *v == 1.0);
    }
    if (!binary) {
      throw UsageError("column '" + col.name + "' is not Boolean; pass --schema to encode it");
    }
  }
  return boolean_schema(raw, d.positive_label.empty() ? std::nullopt
                                                      : std::optional<std::string>(d.positive_label));
}

inline BooleanDataset load_boolean(const DataArgs& d, std::size_t num_features = 0) {
  if (d.path.empty()) throw UsageError("--data is required");
  LoadOptions opts;
  opts.label_column = d.label_column;
  const auto format = d.format == "libsvm" ? DataFormat::kLibsvm : DataFormat::kCsv;
  const RawDataset raw = load_dataset(d.path, format, opts, num_features);
  if (d.schema.empty()) return one_hot_encode(raw, inferred_schema(raw, d));
  EncodingSchema schema = load_schema(d.schema);
  if (!d.positive_label.empty()) schema.positive_label = d.positive_label;
  if (!d.label_column.empty()) schema.label_column = d.label_column;
  return one_hot_encode(raw, schema);
}

/// Tables go to --out when given, else stdout. Key=value summaries go to
/// stdout when the table went to a file, else stderr.
class Output {
 public:
  Output(const std::string& path, std::ostream& out, std::ostream& err)
      : table_(&out), summary_(&err) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw DataError("cannot write '" + path + "'");
      table_ = file_.get();
      summary_ = &out;
    }
    *table_ << std::setprecision(12);
    *summary_ << std::setprecision(12);
  }
  std::ostream& table() { return *table_; }
  std::ostream& summary() { return *summary_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* table_;
  std::ostream* summary_;
};

inline std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = detail::parse_number(item);
    if (!v) throw UsageError("'" + item + "' is not a number");
    out.push_back(*v);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

// --- commands -------------------------------------------------------------

inline int cmd_train(const DataArgs& data, const DataArgs& test, const TrainArgs& targs,
                     const std::string& out_path, std::ostream& out) {
  const BoostConfig cfg = make_config(targs);
  if (out_path.empty()) throw UsageError("--out is required for train");
  const BooleanDataset ds = load_boolean(data);
  const Ensemble ens = lazybb(ds, cfg);
  save_model(ens, out_path);
  const double eta = ens.trace.empty() ? 0.0 : ens.trace.front().eta;
  const EpsilonDelta spent = declared_spend(cfg, ds.n(), eta, ens.trace.size());
  out << std::setprecision(12);
  out << "model=" << out_path << "\n";
  out << "learner=" << to_string(cfg.learner) << "\n";
  out << "examples=" << ds.n() << "\n";
  out << "features=" << ds.r() << "\n";
  out << "rounds_run=" << ens.trace.size() << "\n";
  out << "eta_per_round=" << eta << "\n";
  out << "epsilon_spent=" << spent.epsilon << "\n";
  out << "delta_spent=" << spent.delta << "\n";
  out << "train_accuracy=" << accuracy(ens, ds) << "\n";
  if (!test.path.empty()) {
    const BooleanDataset holdout = load_boolean(test, data.format == "libsvm" ? ds.r() : 0);
    if (holdout.r() != ds.r()) throw DataError("test data has a different feature count");
    out << "test_accuracy=" << accuracy(ens, holdout) << "\n";
  }
  return kExitOk;
}

inline int cmd_predict(const std::string& model_path, const DataArgs& data,
                       const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (model_path.empty()) throw UsageError("--model is required");
  const Ensemble ens = load_model(model_path);
  const BooleanDataset ds = load_boolean(data, data.format == "libsvm" ? ens.num_features : 0);
  if (ds.r() != ens.num_features) {
    throw DataError("model expects " + std::to_string(ens.num_features) +
                    " features but the data has " + std::to_string(ds.r()));
  }
  Output o(out_path, out, err);
  o.table() << "prediction\n";
  std::size_t correct = 0;
  for (std::size_t i = 0; i < ds.n(); ++i) {
    const int p = majority_predict(ens, ds.row(i));
    o.table() << p << "\n";
    if (p == ds.label(i)) ++correct;
  }
  o.summary() << "accuracy=" << static_cast<double>(correct) / static_cast<double>(ds.n()) << "\n";
  return kExitOk;
}

inline int cmd_cv(const DataArgs& data, const TrainArgs& targs, std::size_t folds,
                  std::size_t repeats, const std::string& out_path, std::ostream& out,
                  std::ostream& err) {
  const BoostConfig cfg = make_config(targs);
  if (folds < 2) throw UsageError("--folds must be at least 2");
  if (repeats < 1) throw UsageError("--repeats must be at least 1");
  const BooleanDataset ds = load_boolean(data);
  if (folds > ds.n()) throw UsageError("more folds than examples");
  const CvResult cv = cross_validate(ds, cfg, folds, repeats, cfg.seed);
  Output o(out_path, out, err);
  o.table() << "repeat,fold,accuracy,features\n";
  for (const auto& r : cv.runs) {
    o.table() << r.repeat << "," << r.fold << "," << r.accuracy << "," << r.features << "\n";
  }
  o.summary() << "mean_accuracy=" << cv.accuracy.mean << "\n"
              << "std_accuracy=" << cv.accuracy.std << "\n"
              << "mean_features=" << cv.features.mean << "\n";
  return kExitOk;
}

struct GridArgs {
  std::string taus;
  std::string lambdas;
  std::string kappas;
  std::string epsilons;
  std::size_t folds = 5;
};

inline int cmd_grid(const DataArgs& data, const TrainArgs& targs, const GridArgs& g,
                    std::size_t repeats, const std::string& out_path, std::ostream& out,
                    std::ostream& err) {
  GridSpec spec;
  if (!g.taus.empty()) {
    spec.tau_values.clear();
    for (double v : parse_list(g.taus)) {
      if (v < 1 || v != std::floor(v)) throw UsageError("round counts must be positive integers");
      spec.tau_values.push_back(static_cast<std::size_t>(v));
    }
  }
  if (!g.lambdas.empty()) spec.lambda_values = parse_list(g.lambdas);
  if (!g.kappas.empty()) spec.kappa_values = parse_list(g.kappas);
  if (!g.epsilons.empty()) spec.epsilon_values = parse_list(g.epsilons);
  spec.folds = g.folds;
  spec.repeats = repeats;
  BoostConfig base;
  try {
    spec.validate();
    base = make_config(targs);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const BooleanDataset ds = load_boolean(data);
  if (spec.folds > ds.n()) throw UsageError("more folds than examples");
  GridReport report;
  try {
    report = grid_search(ds, spec, base, base.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Output o(out_path, out, err);
  o.table() << "epsilon,tau,lambda,kappa,mean_accuracy,std_accuracy,mean_features,std_features,"
               "winner\n";
  for (const auto& row : report.rows) {
    bool winner = false;
    for (const auto& w : report.winners) {
      winner = winner || (w.epsilon == row.epsilon && w.tau == row.tau && w.lambda == row.lambda &&
                          w.kappa == row.kappa);
    }
    o.table() << row.epsilon << "," << row.tau << "," << row.lambda << "," << row.kappa << ","
              << row.accuracy.mean << "," << row.accuracy.std << "," << row.features.mean << ","
              << row.features.std << "," << (winner ? 1 : 0) << "\n";
  }
  for (const auto& w : report.winners) {
    o.summary() << "best epsilon=" << w.epsilon << " tau=" << w.tau << " lambda=" << w.lambda
                << " kappa=" << w.kappa << " accuracy=" << w.accuracy.mean << "\n";
  }
  return kExitOk;
}

inline int cmd_report_sparsity(const std::vector<std::string>& models, const DataArgs& data,
                               const TrainArgs& targs, std::size_t repeats,
                               const std::string& out_path, std::ostream& out, std::ostream& err) {
  std::vector<Ensemble> ensembles;
  if (!models.empty()) {
    for (const auto& m : models) ensembles.push_back(load_model(m));
  } else {
    if (data.path.empty()) throw UsageError("report sparsity needs --model or --data");
    BoostConfig cfg = make_config(targs);
    const BooleanDataset ds = load_boolean(data);
    for (std::size_t k = 0; k < repeats; ++k) {
      cfg.seed = targs.seed + k;
      ensembles.push_back(lazybb(ds, cfg));
    }
  }
  Output o(out_path, out, err);
  o.table() << "run,features_used,percent_of_total\n";
  std::vector<double> counts;
  for (std::size_t k = 0; k < ensembles.size(); ++k) {
    const auto& ens = ensembles[k];
    const double c = static_cast<double>(features_used(ens).size());
    const double pct = ens.num_features ? 100.0 * c / static_cast<double>(ens.num_features) : 0.0;
    counts.push_back(c);
    o.table() << k << "," << c << "," << pct << "\n";
  }
  const Summary s = summarize(counts);
  const double total = static_cast<double>(ensembles.front().num_features);
  o.summary() << "mean_features=" << s.mean << "\n"
              << "std_features=" << s.std << "\n"
              << "mean_percent=" << (total > 0 ? 100.0 * s.mean / total : 0.0) << "\n";
  return kExitOk;
}

inline int cmd_report_margins(const std::string& model_path, const DataArgs& data,
                              const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (model_path.empty()) throw UsageError("--model is required");
  const Ensemble ens = load_model(model_path);
  const BooleanDataset ds = load_boolean(data, data.format == "libsvm" ? ens.num_features : 0);
  if (ds.r() != ens.num_features) throw DataError("model and data have different feature counts");
  const Margins m = margins(ens, ds);
  Output o(out_path, out, err);
  o.table() << "bin_lo,bin_hi,count\n";
  for (const auto& b : margin_histogram(m.normalized)) {
    o.table() << b.lo << "," << b.hi << "," << b.count << "\n";
  }
  o.summary() << "examples=" << ds.n() << "\n";
  return kExitOk;
}

inline int cmd_report_advantage(const std::vector<std::string>& models,
                                const std::string& out_path, std::ostream& out,
                                std::ostream& err) {
  if (models.empty()) throw UsageError("--model is required");
  std::vector<std::vector<double>> curves;
  for (const auto& path : models) {
    const Ensemble ens = load_model(path);
    if (ens.trace.empty()) throw DataError("model '" + path + "' has no training trace");
    curves.push_back(advantage_curve(ens));
  }
  std::size_t length = curves.front().size();
  for (const auto& c : curves) length = std::min(length, c.size());
  Output o(out_path, out, err);
  o.table() << "round,advantage\n";
  for (std::size_t t = 0; t < length; ++t) {
    double sum = 0.0;
    for (const auto& c : curves) sum += c[t];
    o.table() << t + 1 << "," << sum / static_cast<double>(curves.size()) << "\n";
  }
  o.summary() << "runs=" << curves.size() << "\n";
  return kExitOk;
}

inline int cmd_report_rademacher(const DataArgs& data, const std::string& model_path,
                                 std::size_t draws, std::uint64_t seed, std::ostream& out) {
  if (draws < 100) throw UsageError("--draws must be at least 100");
  const BooleanDataset ds = load_boolean(data);
  const double rad = estimate_rademacher(ds, draws, RngStream(seed, 0));
  out << std::setprecision(12) << "rademacher=" << rad << "\n";
  if (!model_path.empty()) {
    const Ensemble ens = load_model(model_path);
    if (ds.r() != ens.num_features) throw DataError("model and data have different feature counts");
    const MarginBound mb = margin_bound_accuracy(margins(ens, ds).normalized, rad);
    out << "theta=" << mb.theta << "\n"
        << "pessimistic_accuracy_estimate=" << mb.accuracy << "\n"
        << "train_accuracy=" << accuracy(ens, ds) << "\n";
  }
  return kExitOk;
}

struct AuditArgs {
  std::string mechanism = "dp-1r";
  std::size_t trials = 100000;
  std::string scores;
  std::string scores_prime;
  double sensitivity = 1.0;
};

inline int cmd_audit(const AuditArgs& a, const DataArgs& data, const DataArgs& data_prime,
                     const TrainArgs& targs, const std::string& out_path, std::ostream& out,
                     std::ostream& err) {
  if (a.trials < 10000) throw UsageError("--trials must be at least 10000");
  if (!(targs.epsilon > 0.0)) throw UsageError("--epsilon must be positive");
  const RngStream rng(targs.seed, 0);
  AuditReport report;
  double declared = targs.epsilon;
  if (a.mechanism == "wem" || a.mechanism == "wrnm") {
    std::vector<double> q{0.0, 0.5, 1.0};
    std::vector<double> qp{0.5, 0.5, 0.5};
    if (!a.scores.empty()) q = parse_list(a.scores);
    if (!a.scores_prime.empty()) qp = parse_list(a.scores_prime);
    if (a.scores_prime.empty() && !a.scores.empty()) qp = q;
    if (q.size() != qp.size()) throw UsageError("score vectors have different lengths");
    if (!(a.sensitivity > 0.0)) throw UsageError("--sensitivity must be positive");
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (std::abs(q[i] - qp[i]) > a.sensitivity) {
        throw UsageError("score vectors differ by more than --sensitivity");
      }
    }
    // Both selections are (2 eta sensitivity)-DP.
    const NoiseRate eta(targs.epsilon / (2.0 * a.sensitivity));
    const bool wem = a.mechanism == "wem";
    const auto sampler = [&](const std::vector<double>& s) -> OutcomeSampler {
      return [&, s](RngStream& r) {
        const auto k = wem ? weighted_exponential_mechanism(s, eta, r)
                           : weighted_report_noisy_max(s, eta, r);
        return std::to_string(k);
      };
    };
    report = audit_outcomes(sampler(q), sampler(qp), a.trials, rng);
  } else if (a.mechanism == "dp-1r" || a.mechanism == "dp-topdown" || a.mechanism == "1r") {
    BooleanDataset s = audit_toy_pair().first;
    BooleanDataset sp = audit_toy_pair().second;
    if (!data.path.empty() || !data_prime.path.empty()) {
      if (data.path.empty() || data_prime.path.empty()) {
        throw UsageError("--data and --data-prime must be given together");
      }
      s = load_boolean(data);
      sp = load_boolean(data_prime, data_prime.format == "libsvm" ? s.r() : 0);
    }
    if (s.n() != sp.n() || s.r() != sp.r() || s.differing_records(sp).size() > 1) {
      throw UsageError("audited datasets are not neighbors");
    }
    const auto mu = SmoothDistribution::uniform(s.n());
    const double zeta = 1.0 / static_cast<double>(s.n());
    AuditedMechanism mech;
    if (a.mechanism == "dp-1r") {
      const NoiseRate eta(targs.epsilon / (4.0 * zeta));
      mech = [eta](const BooleanDataset& d, const SmoothDistribution& m, RngStream& r) {
        return canonical_string(Hypothesis(train_dp_1r(d, m, eta, r)));
      };
    } else if (a.mechanism == "dp-topdown") {
      if (targs.tree_nodes < 1) throw UsageError("--tree-nodes must be at least 1");
      const std::size_t t = targs.tree_nodes;
      const NoiseRate eta(targs.epsilon / (16.0 * static_cast<double>(t) * zeta));
      mech = [eta, t, zeta](const BooleanDataset& d, const SmoothDistribution& m, RngStream& r) {
        return canonical_string(Hypothesis(train_dp_topdown(d, m, t, eta, r, zeta)));
      };
    } else {
      declared = 0.0;
      mech = [](const BooleanDataset& d, const SmoothDistribution& m, RngStream&) {
        return canonical_string(Hypothesis(train_1r(d, m)));
      };
    }
    report = audit_weak_learner(mech, s, sp, mu, mu, a.trials, rng, zeta);
  } else {
    throw UsageError("unknown mechanism '" + a.mechanism + "'");
  }
  Output o(out_path, out, err);
  o.table() << "outcome,freq,freq_prime,log_ratio,counted\n";
  for (const auto& row : report.rows) {
    o.table() << '"' << row.outcome << '"' << "," << format_double(row.freq) << ","
              << format_double(row.freq_prime) << "," << format_double(row.log_ratio) << ","
              << (row.counted ? 1 : 0) << "\n";
  }
  o.summary() << "mechanism=" << a.mechanism << "\n"
              << "trials=" << report.trials << "\n"
              << "declared_epsilon=" << declared << "\n"
              << "epsilon_hat=" << format_double(report.epsilon_hat) << "\n";
  return kExitOk;
}

// --- entry point ------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differentially private smooth boosting"};
  app.require_subcommand(1);

  DataArgs data;
  DataArgs test;
  DataArgs data_prime;
  TrainArgs targs;
  GridArgs grid;
  AuditArgs audit;
  std::string out_path;
  std::string model;
  std::vector<std::string> models;
  std::size_t folds = 5;
  std::size_t repeats = 5;
  std::size_t grid_repeats = 1;
  std::size_t draws = 1000;

  auto* train = app.add_subcommand("train", "train a boosted ensemble");
  add_data_options(train, data);
  add_train_options(train, targs);
  train->add_option("--test", test.path, "holdout data reported after training");
  train->add_option("--out", out_path, "model file to write");

  auto* predict = app.add_subcommand("predict", "predict with a saved model");
  add_data_options(predict, data);
  predict->add_option("--model", model, "model file");
  predict->add_option("--out", out_path, "predictions CSV");

  auto* cv = app.add_subcommand("cv", "repeated k-fold cross-validation");
  add_data_options(cv, data);
  add_train_options(cv, targs);
  cv->add_option("--folds", folds, "number of folds");
  cv->add_option("--repeats", repeats, "repeated shuffles");
  cv->add_option("--out", out_path, "per-run CSV");

  auto* gridcmd = app.add_subcommand("grid", "cross-validated grid search per epsilon");
  add_data_options(gridcmd, data);
  add_train_options(gridcmd, targs);
  gridcmd->add_option("--taus", grid.taus, "comma-separated round counts");
  gridcmd->add_option("--lambdas", grid.lambdas, "comma-separated learning rates");
  gridcmd->add_option("--kappas", grid.kappas, "comma-separated densities");
  gridcmd->add_option("--epsilons", grid.epsilons, "comma-separated budgets");
  gridcmd->add_option("--folds", grid.folds, "number of folds");
  gridcmd->add_option("--repeats", grid_repeats, "repeated shuffles per cell");
  gridcmd->add_option("--out", out_path, "grid CSV");

  auto* report = app.add_subcommand("report", "reports on models and data");
  report->require_subcommand(1);
  auto* sparsity = report->add_subcommand("sparsity", "distinct features used");
  sparsity->add_option("--model", models, "model files (repeatable)");
  add_data_options(sparsity, data);
  add_train_options(sparsity, targs);
  sparsity->add_option("--repeats", repeats, "training runs when --data is given");
  sparsity->add_option("--out", out_path, "CSV output");
  auto* margin = report->add_subcommand("margins", "normalized margin histogram");
  margin->add_option("--model", model, "model file");
  add_data_options(margin, data);
  margin->add_option("--out", out_path, "CSV output");
  auto* advantage = report->add_subcommand("advantage", "per-round advantage");
  advantage->add_option("--model", models, "model files (repeatable; averaged)");
  advantage->add_option("--out", out_path, "CSV output");
  auto* rademacher = report->add_subcommand("rademacher", "stump Rademacher complexity");
  add_data_options(rademacher, data);
  rademacher->add_option("--model", model, "model for the margin-bound estimate");
  rademacher->add_option("--draws", draws, "random sign vectors");
  rademacher->add_option("--seed", targs.seed, "seed");

  auto* auditcmd = app.add_subcommand("audit", "empirical privacy audit");
  auditcmd->add_option("--mechanism", audit.mechanism, "dp-1r, dp-topdown, wem, wrnm or 1r");
  auditcmd->add_option("--trials", audit.trials, "trials per input");
  auditcmd->add_option("--epsilon", targs.epsilon, "declared epsilon");
  auditcmd->add_option("--tree-nodes", targs.tree_nodes, "internal nodes (dp-topdown)");
  auditcmd->add_option("--seed", targs.seed, "seed");
  auditcmd->add_option("--scores", audit.scores, "comma-separated scores (wem, wrnm)");
  auditcmd->add_option("--scores-prime", audit.scores_prime, "neighboring scores (wem, wrnm)");
  auditcmd->add_option("--sensitivity", audit.sensitivity, "score sensitivity (wem, wrnm)");
  add_data_options(auditcmd, data);
  auditcmd->add_option("--data-prime", data_prime.path, "neighboring dataset");
  auditcmd->add_option("--out", out_path, "CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  test.format = data.format;
  test.schema = data.schema;
  test.label_column = data.label_column;
  test.positive_label = data.positive_label;
  data_prime.format = data.format;
  data_prime.schema = data.schema;
  data_prime.label_column = data.label_column;
  data_prime.positive_label = data.positive_label;

  try {
    if (*train) return cmd_train(data, test, targs, out_path, out);
    if (*predict) return cmd_predict(model, data, out_path, out, err);
    if (*cv) return cmd_cv(data, targs, folds, repeats, out_path, out, err);
    if (*gridcmd) return cmd_grid(data, targs, grid, grid_repeats, out_path, out, err);
    if (*sparsity) return cmd_report_sparsity(models, data, targs, repeats, out_path, out, err);
    if (*margin) return cmd_report_margins(model, data, out_path, out, err);
    if (*advantage) return cmd_report_advantage(models, out_path, out, err);
    if (*rademacher) return cmd_report_rademacher(data, model, draws, targs.seed, out);
    if (*auditcmd) return cmd_audit(audit, data, data_prime, targs, out_path, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace dpboost::cli
