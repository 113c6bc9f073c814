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
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "dpboost/dataset.hpp"
#include "dpboost/errors.hpp"
#include "dpboost/raw_data.hpp"

namespace dpboost {

/// Interval on the real line; a missing endpoint is unbounded.
struct Bin {
  std::optional<double> min;
  std::optional<double> max;
  bool min_open = false;
  bool max_open = false;

  bool contains(double v) const {
    if (min && (min_open ? v <= *min : v < *min)) return false;
    if (max && (max_open ? v >= *max : v > *max)) return false;
    return true;
  }

  bool is_empty() const {
    if (!min || !max) return false;
    if (*min < *max) return false;
    return !(*min == *max && !min_open && !max_open);
  }
};

struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::kCategorical;
  std::vector<std::string> categories;
  /// Categorical only: emit a "<name>=missing" indicator for missing cells.
  bool missing_category = true;
  /// Categorical only: route out-of-schema values to "<name>=other".
  bool other_bucket = false;
  std::vector<Bin> bins;

  std::size_t width() const {
    switch (kind) {
      case ColumnKind::kCategorical:
        return categories.size() + (missing_category ? 1 : 0) + (other_bucket ? 1 : 0);
      case ColumnKind::kNumeric: return bins.size();
      case ColumnKind::kBoolean: return 1;
    }
    return 0;
  }
};

/// Fixed, data-independent description of how raw columns become Boolean
/// indicators. Nothing in here is read from the private records.
struct EncodingSchema {
  std::vector<ColumnSchema> columns;
  std::string label_column;
  /// Raw label value mapped to +1. When unset, the larger of the two label
  /// values (numerically if both parse as numbers, else lexicographically)
  /// is +1.
  std::optional<std::string> positive_label;

  std::size_t feature_count() const {
    std::size_t total = 0;
    for (const auto& c : columns) total += c.width();
    return total;
  }
};

namespace detail {

inline std::string format_number(double v) {
  std::ostringstream out;
  out.precision(15);
  out << v;
  return out.str();
}

inline bool bins_overlap(const Bin& a, const Bin& b) {
  // Lower end of the intersection.
  double lo = -std::numeric_limits<double>::infinity();
  bool lo_open = true;
  const auto take_lo = [&](const Bin& x) {
    if (!x.min) return;
    if (*x.min > lo || (*x.min == lo && x.min_open)) {
      lo = *x.min;
      lo_open = x.min_open;
    }
  };
  double hi = std::numeric_limits<double>::infinity();
  bool hi_open = true;
  const auto take_hi = [&](const Bin& x) {
    if (!x.max) return;
    if (*x.max < hi || (*x.max == hi && x.max_open)) {
      hi = *x.max;
      hi_open = x.max_open;
    }
  };
  take_lo(a);
  take_lo(b);
  take_hi(a);
  take_hi(b);
  if (lo < hi) return true;
  return lo == hi && !lo_open && !hi_open;
}

}  // namespace detail

/// Human-readable indicator name, e.g. "age <= 17" or "13 <= education-num <= 14.5".
inline std::string bin_feature_name(const std::string& column, const Bin& bin) {
  using detail::format_number;
  if (bin.min && bin.max && *bin.min == *bin.max && !bin.min_open && !bin.max_open) {
    return column + " = " + format_number(*bin.min);
  }
  if (!bin.min && !bin.max) return column + " any";
  if (!bin.min) return column + (bin.max_open ? " < " : " <= ") + format_number(*bin.max);
  if (!bin.max) return column + (bin.min_open ? " > " : " >= ") + format_number(*bin.min);
  return format_number(*bin.min) + (bin.min_open ? " < " : " <= ") + column +
         (bin.max_open ? " < " : " <= ") + format_number(*bin.max);
}

inline std::vector<std::string> feature_names(const EncodingSchema& schema) {
  std::vector<std::string> names;
  names.reserve(schema.feature_count());
  for (const auto& col : schema.columns) {
    switch (col.kind) {
      case ColumnKind::kCategorical:
        for (const auto& cat : col.categories) names.push_back(col.name + "=" + cat);
        if (col.missing_category) names.push_back(col.name + "=missing");
        if (col.other_bucket) names.push_back(col.name + "=other");
        break;
      case ColumnKind::kNumeric:
        for (const auto& bin : col.bins) names.push_back(bin_feature_name(col.name, bin));
        break;
      case ColumnKind::kBoolean:
        names.push_back(col.name);
        break;
    }
  }
  return names;
}

/// Throws std::invalid_argument on duplicate columns or categories, empty
/// bins, and overlapping bins.
inline void validate(const EncodingSchema& schema) {
  std::set<std::string> columns;
  for (const auto& col : schema.columns) {
    detail::require(!col.name.empty(), "schema column with empty name");
    detail::require(columns.insert(col.name).second, "duplicate schema column: " + col.name);
    detail::require(col.name != schema.label_column,
                    "label column '" + col.name + "' cannot also be a feature");
    if (col.kind == ColumnKind::kCategorical) {
      std::set<std::string> seen;
      for (const auto& cat : col.categories) {
        detail::require(seen.insert(cat).second,
                        "column " + col.name + ": duplicate category '" + cat + "'");
      }
    }
    if (col.kind == ColumnKind::kNumeric) {
      for (std::size_t a = 0; a < col.bins.size(); ++a) {
        detail::require(!col.bins[a].is_empty(),
                        "column " + col.name + ": empty bin " + bin_feature_name(col.name, col.bins[a]));
        for (std::size_t b = a + 1; b < col.bins.size(); ++b) {
          detail::require(!detail::bins_overlap(col.bins[a], col.bins[b]),
                          "column " + col.name + ": bins '" +
                              bin_feature_name(col.name, col.bins[a]) + "' and '" +
                              bin_feature_name(col.name, col.bins[b]) + "' overlap");
        }
      }
    }
  }
  detail::require(!schema.label_column.empty(), "schema has no label column");
  const auto names = feature_names(schema);
  std::set<std::string> unique(names.begin(), names.end());
  detail::require(unique.size() == names.size(), "schema produces duplicate feature names");
}

/// Equal-width bins over a publicly known range [lo, hi]. The first bin is
/// closed on both ends, the rest are open on the left.
inline std::vector<Bin> equal_width_bins(double lo, double hi, std::size_t count) {
  detail::require(count >= 1, "bin count must be positive");
  detail::require(lo < hi, "bin range must satisfy lo < hi");
  std::vector<Bin> bins;
  const double width = (hi - lo) / static_cast<double>(count);
  for (std::size_t k = 0; k < count; ++k) {
    Bin b;
    b.min = lo + width * static_cast<double>(k);
    b.max = k + 1 == count ? hi : lo + width * static_cast<double>(k + 1);
    b.min_open = k > 0;
    bins.push_back(b);
  }
  return bins;
}

/// Schema that treats every non-label column of `raw` as a Boolean
/// indicator. Only column names are read, so this is safe for LIBSVM data
/// whose features are already binary.
inline EncodingSchema boolean_schema(const RawDataset& raw,
                                     std::optional<std::string> positive_label = std::nullopt) {
  EncodingSchema schema;
  schema.label_column = raw.label_column;
  schema.positive_label = std::move(positive_label);
  for (const auto& col : raw.columns) {
    if (col.name == raw.label_column) continue;
    ColumnSchema c;
    c.name = col.name;
    c.kind = ColumnKind::kBoolean;
    schema.columns.push_back(std::move(c));
  }
  return schema;
}

// JSON schema file:
// {"columns": [{"name", "kind", "categories"|"bins", "missing"?, "other"?}],
//  "label": {"column", "positive"?}}
// Bins are {"min"?, "max"?, "min_open"?, "max_open"?}.
inline EncodingSchema schema_from_json(const nlohmann::json& j) {
  EncodingSchema schema;
  try {
    for (const auto& jc : j.at("columns")) {
      ColumnSchema c;
      c.name = jc.at("name").get<std::string>();
      const auto kind = jc.at("kind").get<std::string>();
      if (kind == "categorical") {
        c.kind = ColumnKind::kCategorical;
        c.categories = jc.at("categories").get<std::vector<std::string>>();
        c.missing_category = jc.value("missing", true);
        c.other_bucket = jc.value("other", false);
      } else if (kind == "numeric") {
        c.kind = ColumnKind::kNumeric;
        for (const auto& jb : jc.at("bins")) {
          Bin b;
          if (jb.contains("min")) b.min = jb.at("min").get<double>();
          if (jb.contains("max")) b.max = jb.at("max").get<double>();
          b.min_open = jb.value("min_open", false);
          b.max_open = jb.value("max_open", false);
          c.bins.push_back(b);
        }
      } else if (kind == "boolean") {
        c.kind = ColumnKind::kBoolean;
      } else {
        throw DataError("schema column " + c.name + ": unknown kind '" + kind + "'");
      }
      schema.columns.push_back(std::move(c));
    }
    const auto& label = j.at("label");
    schema.label_column = label.at("column").get<std::string>();
    if (label.contains("positive")) schema.positive_label = label.at("positive").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed schema: ") + e.what());
  }
  try {
    validate(schema);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("invalid schema: ") + e.what());
  }
  return schema;
}

inline EncodingSchema load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open schema " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("schema " + path + ": " + e.what());
  }
  return schema_from_json(j);
}

namespace detail {

inline std::vector<int> map_labels(const RawDataset& raw, std::size_t label_col,
                                   const std::optional<std::string>& positive) {
  std::set<std::string> values;
  for (std::size_t i = 0; i < raw.rows.size(); ++i) {
    const auto& cell = raw.rows[i][label_col];
    if (!cell) throw DataError("record " + std::to_string(i + 1) + ": missing label");
    values.insert(*cell);
  }
  if (values.size() > 2) {
    throw DataError("label column has " + std::to_string(values.size()) +
                    " distinct values; exactly two classes are supported");
  }
  std::string pos;
  if (positive) {
    pos = *positive;
  } else {
    std::vector<std::string> sorted(values.begin(), values.end());
    const bool numeric = std::all_of(sorted.begin(), sorted.end(),
                                     [](const std::string& v) { return parse_number(v).has_value(); });
    if (numeric) {
      std::sort(sorted.begin(), sorted.end(), [](const std::string& a, const std::string& b) {
        return *parse_number(a) < *parse_number(b);
      });
    }
    // A single observed class maps to -1 unless it is named positive.
    pos = sorted.size() == 2 ? sorted[1] : std::string();
  }
  std::vector<int> y;
  y.reserve(raw.rows.size());
  for (const auto& row : raw.rows) y.push_back(*row[label_col] == pos ? 1 : -1);
  return y;
}

}  // namespace detail

/// Encodes `raw` into indicators as described by `schema`. Categorical
/// columns set exactly one indicator per row; numeric columns set the
/// indicator of the bin containing the value (none when missing or outside
/// every bin); boolean columns copy the truth value (missing is 0).
inline BooleanDataset one_hot_encode(const RawDataset& raw, const EncodingSchema& schema) {
  validate(schema);
  const std::size_t label_col = raw.column_index(schema.label_column);
  std::vector<std::size_t> source;
  for (const auto& col : schema.columns) source.push_back(raw.column_index(col.name));

  std::vector<std::unordered_map<std::string, std::size_t>> category_index(schema.columns.size());
  for (std::size_t c = 0; c < schema.columns.size(); ++c) {
    const auto& cats = schema.columns[c].categories;
    for (std::size_t k = 0; k < cats.size(); ++k) category_index[c].emplace(cats[k], k);
  }

  const std::size_t n = raw.rows.size();
  const std::size_t r = schema.feature_count();
  std::vector<std::uint8_t> x(n * r, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto where = [&](const std::string& column) {
      return "record " + std::to_string(i + 1) + ", column " + column;
    };
    std::size_t offset = 0;
    std::uint8_t* out = x.data() + i * r;
    for (std::size_t c = 0; c < schema.columns.size(); ++c) {
      const auto& col = schema.columns[c];
      const RawCell& cell = raw.rows[i][source[c]];
      switch (col.kind) {
        case ColumnKind::kCategorical: {
          const std::size_t cats = col.categories.size();
          if (!cell) {
            if (!col.missing_category) throw DataError(where(col.name) + ": missing value and no missing category");
            out[offset + cats] = 1;
          } else if (auto it = category_index[c].find(*cell); it != category_index[c].end()) {
            out[offset + it->second] = 1;
          } else if (col.other_bucket) {
            out[offset + cats + (col.missing_category ? 1 : 0)] = 1;
          } else {
            throw DataError(where(col.name) + ": category '" + *cell + "' not in schema");
          }
          break;
        }
        case ColumnKind::kNumeric: {
          if (!cell) break;
          const auto v = detail::parse_number(*cell);
          if (!v) throw DataError(where(col.name) + ": '" + *cell + "' is not numeric");
          for (std::size_t b = 0; b < col.bins.size(); ++b) {
            if (col.bins[b].contains(*v)) {
              out[offset + b] = 1;
              break;
            }
          }
          break;
        }
        case ColumnKind::kBoolean: {
          if (!cell) break;
          if (auto b = detail::parse_bool(*cell)) {
            out[offset] = *b ? 1 : 0;
          } else if (auto v = detail::parse_number(*cell)) {
            out[offset] = *v != 0.0 ? 1 : 0;
          } else {
            throw DataError(where(col.name) + ": '" + *cell + "' is not boolean");
          }
          break;
        }
      }
      offset += col.width();
    }
  }
  auto y = detail::map_labels(raw, label_col, schema.positive_label);
  return BooleanDataset(n, r, std::move(x), std::move(y), feature_names(schema));
}

}  // namespace dpboost
