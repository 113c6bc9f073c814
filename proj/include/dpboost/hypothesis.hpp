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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dpboost/errors.hpp"

namespace dpboost {

/// Decision stump over Boolean features: a signed literal or a constant.
/// A literal predicts +1 when its feature is 1; a negated literal predicts
/// +1 when its feature is 0.
class OneRule {
 public:
  enum class Kind { kLiteral, kNegatedLiteral, kConstTrue, kConstFalse };

  static OneRule literal(std::size_t feature) { return OneRule(Kind::kLiteral, feature); }
  static OneRule negated(std::size_t feature) { return OneRule(Kind::kNegatedLiteral, feature); }
  static OneRule constant(bool positive) {
    return OneRule(positive ? Kind::kConstTrue : Kind::kConstFalse, std::nullopt);
  }

  /// Canonical order over the 2r+2 stumps: x_0, -x_0, ..., x_{r-1}, -x_{r-1}, +1, -1.
  static OneRule from_index(std::size_t index, std::size_t r) {
    detail::require(index < 2 * r + 2, "stump index out of range");
    if (index == 2 * r) return constant(true);
    if (index == 2 * r + 1) return constant(false);
    return index % 2 == 0 ? literal(index / 2) : negated(index / 2);
  }
  std::size_t index(std::size_t r) const {
    switch (kind_) {
      case Kind::kLiteral: return 2 * *feature_;
      case Kind::kNegatedLiteral: return 2 * *feature_ + 1;
      case Kind::kConstTrue: return 2 * r;
      case Kind::kConstFalse: return 2 * r + 1;
    }
    return 0;
  }

  Kind kind() const { return kind_; }
  std::optional<std::size_t> feature() const { return feature_; }
  bool is_constant() const { return !feature_.has_value(); }

  int predict(std::span<const std::uint8_t> x) const {
    switch (kind_) {
      case Kind::kLiteral: return x[*feature_] ? 1 : -1;
      case Kind::kNegatedLiteral: return x[*feature_] ? -1 : 1;
      case Kind::kConstTrue: return 1;
      case Kind::kConstFalse: return -1;
    }
    return 1;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::kLiteral: return "x" + std::to_string(*feature_);
      case Kind::kNegatedLiteral: return "-x" + std::to_string(*feature_);
      case Kind::kConstTrue: return "+1";
      case Kind::kConstFalse: return "-1";
    }
    return "?";
  }

  bool operator==(const OneRule&) const = default;

 private:
  OneRule(Kind kind, std::optional<std::size_t> feature) : kind_(kind), feature_(feature) {}

  Kind kind_;
  std::optional<std::size_t> feature_;
};

/// Binary tree over Boolean splits. An internal node on feature j sends
/// examples with x_j = 0 left and x_j = 1 right; leaves carry +1 or -1.
/// Node 0 is the root.
class DecisionTree {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    int left = -1;
    int right = -1;
    int label = 1;
    bool is_leaf() const { return feature < 0; }
    bool operator==(const Node&) const = default;
  };

  DecisionTree() : nodes_(1) {}

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(std::size_t id) const { return nodes_.at(id); }

  std::size_t internal_count() const { return (nodes_.size() - 1) / 2; }
  std::size_t leaf_count() const { return internal_count() + 1; }

  /// Leaf ids, left to right.
  std::vector<std::size_t> leaves() const {
    std::vector<std::size_t> out;
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
      const std::size_t id = stack.back();
      stack.pop_back();
      const Node& nd = nodes_[id];
      if (nd.is_leaf()) {
        out.push_back(id);
      } else {
        stack.push_back(static_cast<std::size_t>(nd.right));
        stack.push_back(static_cast<std::size_t>(nd.left));
      }
    }
    return out;
  }

  bool is_leaf(std::size_t id) const { return id < nodes_.size() && nodes_[id].is_leaf(); }

  std::size_t leaf_of(std::span<const std::uint8_t> x) const {
    std::size_t id = 0;
    while (!nodes_[id].is_leaf()) {
      const Node& nd = nodes_[id];
      id = static_cast<std::size_t>(x[static_cast<std::size_t>(nd.feature)] ? nd.right : nd.left);
    }
    return id;
  }

  int predict(std::span<const std::uint8_t> x) const { return nodes_[leaf_of(x)].label; }

  /// Replaces leaf `id` by a split on `feature`; returns the (left, right)
  /// child ids. Children start labeled +1.
  std::pair<std::size_t, std::size_t> split(std::size_t id, std::size_t feature) {
    detail::require(is_leaf(id), "split target is not a leaf");
    const auto left = nodes_.size();
    nodes_.push_back(Node{});
    nodes_.push_back(Node{});
    Node& nd = nodes_[id];
    nd.feature = static_cast<int>(feature);
    nd.left = static_cast<int>(left);
    nd.right = static_cast<int>(left + 1);
    return {left, left + 1};
  }

  void set_label(std::size_t leaf, int label) {
    detail::require(is_leaf(leaf), "label target is not a leaf");
    detail::require(label == 1 || label == -1, "leaf labels must be +1 or -1");
    nodes_[leaf].label = label;
  }

  std::set<std::size_t> features() const {
    std::set<std::size_t> out;
    for (const auto& nd : nodes_) {
      if (!nd.is_leaf()) out.insert(static_cast<std::size_t>(nd.feature));
    }
    return out;
  }

  nlohmann::ordered_json to_json(std::size_t id = 0) const {
    const Node& nd = nodes_.at(id);
    nlohmann::ordered_json j;
    if (nd.is_leaf()) {
      j["label"] = nd.label;
    } else {
      j["split"] = nd.feature;
      j["left"] = to_json(static_cast<std::size_t>(nd.left));
      j["right"] = to_json(static_cast<std::size_t>(nd.right));
    }
    return j;
  }

  static DecisionTree from_json(const nlohmann::json& j) {
    DecisionTree tree;
    tree.read(j, 0);
    return tree;
  }

  bool operator==(const DecisionTree&) const = default;

 private:
  void read(const nlohmann::json& j, std::size_t id) {
    if (j.contains("label")) {
      set_label(id, j.at("label").get<int>());
      return;
    }
    const int feature = j.at("split").get<int>();
    detail::require(feature >= 0, "negative split feature");
    auto [left, right] = split(id, static_cast<std::size_t>(feature));
    read(j.at("left"), left);
    read(j.at("right"), right);
  }

  std::vector<Node> nodes_;
};

using Hypothesis = std::variant<OneRule, DecisionTree>;

inline int predict(const Hypothesis& h, std::span<const std::uint8_t> x) {
  return std::visit([&](const auto& v) { return v.predict(x); }, h);
}

inline std::set<std::size_t> features_used(const Hypothesis& h) {
  if (const auto* rule = std::get_if<OneRule>(&h)) {
    if (rule->feature()) return {*rule->feature()};
    return {};
  }
  return std::get<DecisionTree>(h).features();
}

inline const char* kind_name(OneRule::Kind kind) {
  switch (kind) {
    case OneRule::Kind::kLiteral: return "literal";
    case OneRule::Kind::kNegatedLiteral: return "negated-literal";
    case OneRule::Kind::kConstTrue: return "const-true";
    case OneRule::Kind::kConstFalse: return "const-false";
  }
  return "?";
}

inline nlohmann::ordered_json to_json(const Hypothesis& h) {
  if (const auto* rule = std::get_if<OneRule>(&h)) {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(rule->kind());
    if (rule->feature()) j["feature"] = *rule->feature();
    return j;
  }
  return std::get<DecisionTree>(h).to_json();
}

inline Hypothesis hypothesis_from_json(const nlohmann::json& j) {
  if (j.contains("kind")) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "const-true") return OneRule::constant(true);
    if (kind == "const-false") return OneRule::constant(false);
    const auto feature = j.at("feature").get<std::size_t>();
    if (kind == "literal") return OneRule::literal(feature);
    if (kind == "negated-literal") return OneRule::negated(feature);
    throw std::invalid_argument("unknown stump kind '" + kind + "'");
  }
  return DecisionTree::from_json(j);
}

/// Stable string form, used to tally outcomes in privacy audits.
inline std::string canonical_string(const Hypothesis& h) {
  if (const auto* rule = std::get_if<OneRule>(&h)) return rule->to_string();
  return std::get<DecisionTree>(h).to_json().dump();
}

}  // namespace dpboost
