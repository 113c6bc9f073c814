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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dpboost_cli.hpp"
#include "support.hpp"

namespace dpboost {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "dpboost");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string value_of(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
  }
  return {};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dpboost_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    RngStream rng(1, 0);
    const auto ds = testing::majority3_dataset(120, 3, rng);
    std::ofstream csv(path("train.csv"));
    for (std::size_t j = 0; j < ds.r(); ++j) csv << "f" << j << ",";
    csv << "label\n";
    for (std::size_t i = 0; i < ds.n(); ++i) {
      for (std::size_t j = 0; j < ds.r(); ++j) csv << static_cast<int>(ds.value(i, j)) << ",";
      csv << (ds.label(i) > 0 ? "yes" : "no") << "\n";
    }
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, TrainWritesModelAndSummary) {
  const auto r = run({"train", "--data", path("train.csv"), "--out", path("m.json"), "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(value_of(r.out, "rounds_run"), "9");
  EXPECT_EQ(value_of(r.out, "learner"), "dp-1r");
  EXPECT_EQ(value_of(r.out, "examples"), "120");
  EXPECT_EQ(value_of(r.out, "features"), "6");
  EXPECT_NEAR(std::stod(value_of(r.out, "epsilon_spent")), 1.0, 1e-9);
  EXPECT_EQ(value_of(r.out, "delta_spent"), "0");
  EXPECT_EQ(load_model(path("m.json")).size(), 9u);
}

TEST_F(CliTest, TrainIsDeterministic) {
  ASSERT_EQ(run({"train", "--data", path("train.csv"), "--out", path("a.json"), "--seed", "5"}).code, 0);
  ASSERT_EQ(run({"train", "--data", path("train.csv"), "--out", path("b.json"), "--seed", "5"}).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({"train", "--data", path("train.csv"), "--out", path("m.json"), "--rounds", "0"}).code, 2);
  EXPECT_EQ(run({"train", "--data", path("train.csv"), "--out", path("m.json"), "--delta", "1e-6",
                 "--accounting", "basic"}).code, 2);
  EXPECT_EQ(run({"train", "--data", path("train.csv")}).code, 2);
  EXPECT_EQ(run({"train", "--data", path("train.csv"), "--out", path("m.json"), "--learner", "svm"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST_F(CliTest, DeltaSelectsAdvancedAccounting) {
  const auto r = run({"train", "--data", path("train.csv"), "--out", path("m.json"), "--delta", "1e-6"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(value_of(r.out, "epsilon_spent")), 1.0, 1e-6);
  EXPECT_EQ(value_of(r.out, "delta_spent"), "1e-06");
  EXPECT_EQ(load_model(path("m.json")).config.accounting, Accounting::kAdvanced);
}

TEST_F(CliTest, NonBooleanColumnsNeedSchema) {
  std::ofstream(path("cat.csv")) << "color,label\nred,1\nblue,0\n";
  EXPECT_EQ(run({"train", "--data", path("cat.csv"), "--out", path("m.json")}).code, 2);
}

TEST_F(CliTest, MissingFileIsDataError) {
  EXPECT_EQ(run({"train", "--data", path("absent.csv"), "--out", path("m.json")}).code, 3);
}

TEST_F(CliTest, PredictReproducesTrainingAccuracy) {
  const auto t = run({"train", "--data", path("train.csv"), "--out", path("m.json"), "--learner", "1r",
                      "--rounds", "15"});
  ASSERT_EQ(t.code, 0) << t.err;
  const auto p = run({"predict", "--model", path("m.json"), "--data", path("train.csv"), "--out",
                      path("p.csv")});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_NEAR(std::stod(value_of(p.out, "accuracy")), std::stod(value_of(t.out, "train_accuracy")), 1e-12);
  const auto csv = slurp(path("p.csv"));
  EXPECT_EQ(csv.rfind("prediction\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 121);
}

TEST_F(CliTest, ConstantModelPredictsPositive) {
  Ensemble ens;
  ens.num_features = 6;
  ens.hypotheses = {OneRule::constant(true)};
  save_model(ens, path("const.json"));
  const auto p = run({"predict", "--model", path("const.json"), "--data", path("train.csv")});
  ASSERT_EQ(p.code, 0) << p.err;
  std::istringstream in(p.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "prediction");
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(line, "1");
    ++rows;
  }
  EXPECT_EQ(rows, 120);
}

TEST_F(CliTest, FeatureCountMismatchIsDataError) {
  Ensemble ens;
  ens.num_features = 4;
  ens.hypotheses = {OneRule::literal(0)};
  save_model(ens, path("narrow.json"));
  EXPECT_EQ(run({"predict", "--model", path("narrow.json"), "--data", path("train.csv")}).code, 3);
}

TEST_F(CliTest, CrossValidationTable) {
  const auto r = run({"cv", "--data", path("train.csv"), "--folds", "3", "--repeats", "2", "--rounds", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("repeat,fold,accuracy,features\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 7);
  EXPECT_FALSE(value_of(r.err, "mean_accuracy").empty());
}

TEST_F(CliTest, GridIsDeterministic) {
  const std::vector<std::string> args{"grid",        "--data",   path("train.csv"), "--taus", "3,5",
                                      "--lambdas",   "0.3,0.5",  "--kappas",        "0.35",
                                      "--epsilons",  "0.5,1",    "--folds",         "3"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("epsilon,tau,lambda,kappa,mean_accuracy,std_accuracy,mean_features,std_features,winner\n", 0),
            0u);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 9);
}

TEST_F(CliTest, Reports) {
  ASSERT_EQ(run({"train", "--data", path("train.csv"), "--out", path("m.json"), "--rounds", "7"}).code, 0);
  const auto sp = run({"report", "sparsity", "--model", path("m.json")});
  ASSERT_EQ(sp.code, 0) << sp.err;
  EXPECT_EQ(sp.out.rfind("run,features_used,percent_of_total\n", 0), 0u);
  const auto mg = run({"report", "margins", "--model", path("m.json"), "--data", path("train.csv")});
  ASSERT_EQ(mg.code, 0) << mg.err;
  EXPECT_EQ(std::count(mg.out.begin(), mg.out.end(), '\n'), 22);
  const auto adv = run({"report", "advantage", "--model", path("m.json"), "--model", path("m.json")});
  ASSERT_EQ(adv.code, 0) << adv.err;
  EXPECT_EQ(std::count(adv.out.begin(), adv.out.end(), '\n'), 8);
  const auto rad = run({"report", "rademacher", "--data", path("train.csv"), "--model", path("m.json"),
                        "--draws", "200"});
  ASSERT_EQ(rad.code, 0) << rad.err;
  const double r = std::stod(value_of(rad.out, "rademacher"));
  EXPECT_GT(r, 0.0);
  EXPECT_LT(r, 1.0);
  EXPECT_FALSE(value_of(rad.out, "pessimistic_accuracy_estimate").empty());
  EXPECT_EQ(run({"report"}).code, 2);
}

TEST_F(CliTest, AuditWemEqualScores) {
  const auto r = run({"audit", "--mechanism", "wem", "--scores", "0.2,0.4,0.6", "--scores-prime",
                      "0.2,0.4,0.6", "--trials", "20000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LE(std::stod(value_of(r.err, "epsilon_hat")), 0.05);
  EXPECT_EQ(value_of(r.err, "mechanism"), "wem");
}

TEST_F(CliTest, AuditDefaultsToToyPair) {
  const auto r = run({"audit", "--mechanism", "1r", "--trials", "10000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(value_of(r.err, "epsilon_hat"), "inf");
}

TEST_F(CliTest, AuditUnknownMechanism) {
  EXPECT_EQ(run({"audit", "--mechanism", "gaussian"}).code, 2);
}

}  // namespace
}  // namespace dpboost
