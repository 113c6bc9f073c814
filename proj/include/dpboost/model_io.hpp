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

#include <fstream>
#include <string>

#include "json.hpp"

#include "dpboost/boosting.hpp"
#include "dpboost/errors.hpp"

namespace dpboost {

inline nlohmann::ordered_json config_to_json(const BoostConfig& cfg) {
  nlohmann::ordered_json j;
  j["learner"] = to_string(cfg.learner);
  j["kappa"] = cfg.kappa;
  j["lambda"] = cfg.lambda;
  j["rounds"] = cfg.rounds;
  j["tree_nodes"] = cfg.tree_nodes;
  j["epsilon"] = cfg.epsilon;
  j["delta"] = cfg.delta;
  j["accounting"] = to_string(cfg.accounting);
  j["beta"] = cfg.beta;
  j["seed"] = cfg.seed;
  j["stop_after_negative"] = cfg.stop_after_negative;
  return j;
}

inline BoostConfig config_from_json(const nlohmann::json& j) {
  BoostConfig cfg;
  cfg.learner = parse_learner(j.at("learner").get<std::string>());
  cfg.kappa = j.at("kappa").get<double>();
  cfg.lambda = j.at("lambda").get<double>();
  cfg.rounds = j.at("rounds").get<std::size_t>();
  cfg.tree_nodes = j.value("tree_nodes", std::size_t{1});
  cfg.epsilon = j.value("epsilon", 1.0);
  cfg.delta = j.value("delta", 0.0);
  cfg.accounting = parse_accounting(j.value("accounting", std::string("basic")));
  cfg.beta = j.value("beta", 0.1);
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.stop_after_negative = j.value("stop_after_negative", std::size_t{0});
  return cfg;
}

/// {"config", "hypotheses", "trace", "features"} in that order.
inline nlohmann::ordered_json to_json(const Ensemble& ens) {
  nlohmann::ordered_json j;
  j["config"] = config_to_json(ens.config);
  j["hypotheses"] = nlohmann::ordered_json::array();
  for (const auto& h : ens.hypotheses) j["hypotheses"].push_back(to_json(h));
  j["trace"] = nlohmann::ordered_json::array();
  for (const auto& rec : ens.trace) {
    nlohmann::ordered_json r;
    r["round"] = rec.round;
    r["advantage"] = rec.advantage;
    r["eta"] = rec.eta;
    r["mass"] = rec.mass;
    r["max_probability"] = rec.max_probability;
    j["trace"].push_back(r);
  }
  j["features"]["count"] = ens.num_features;
  j["features"]["names"] = ens.feature_names;
  j["train_size"] = ens.train_size;
  return j;
}

inline Ensemble ensemble_from_json(const nlohmann::json& j) {
  try {
    Ensemble ens;
    ens.config = config_from_json(j.at("config"));
    for (const auto& h : j.at("hypotheses")) ens.hypotheses.push_back(hypothesis_from_json(h));
    if (j.contains("trace")) {
      for (const auto& r : j.at("trace")) {
        RoundRecord rec;
        rec.round = r.at("round").get<std::size_t>();
        rec.advantage = r.at("advantage").get<double>();
        rec.eta = r.at("eta").get<double>();
        rec.mass = r.value("mass", 0.0);
        rec.max_probability = r.value("max_probability", 0.0);
        ens.trace.push_back(rec);
      }
    }
    ens.num_features = j.at("features").at("count").get<std::size_t>();
    ens.feature_names = j.at("features").value("names", std::vector<std::string>{});
    ens.train_size = j.value("train_size", std::size_t{0});
    for (const auto& h : ens.hypotheses) {
      for (std::size_t f : features_used(h)) {
        if (f >= ens.num_features) throw DataError("model uses feature " + std::to_string(f) +
                                                   " beyond its feature count");
      }
    }
    return ens;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("malformed model: ") + e.what());
  }
}

inline std::string serialize(const Ensemble& ens) { return to_json(ens).dump(2) + "\n"; }

inline void save_model(const Ensemble& ens, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file '" + path + "'");
  out << serialize(ens);
  if (!out) throw DataError("failed writing model file '" + path + "'");
}

inline Ensemble load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("model file '" + path + "' is not valid JSON: " + e.what());
  }
  return ensemble_from_json(j);
}

}  // namespace dpboost
