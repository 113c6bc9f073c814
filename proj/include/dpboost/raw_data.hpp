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
#include <cctype>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpboost/errors.hpp"

namespace dpboost {

enum class ColumnKind { kCategorical, kNumeric, kBoolean };

inline const char* to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::kCategorical: return "categorical";
    case ColumnKind::kNumeric: return "numeric";
    case ColumnKind::kBoolean: return "boolean";
  }
  return "?";
}

struct RawColumn {
  std::string name;
  ColumnKind kind = ColumnKind::kCategorical;
};

/// A missing cell is std::nullopt.
using RawCell = std::optional<std::string>;

struct RawDataset {
  std::vector<RawColumn> columns;
  std::vector<std::vector<RawCell>> rows;
  std::string label_column;

  std::size_t column_index(std::string_view name) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].name == name) return c;
    }
    throw DataError("no column named '" + std::string(name) + "'");
  }
  bool has_column(std::string_view name) const {
    return std::any_of(columns.begin(), columns.end(),
                       [&](const RawColumn& c) { return c.name == name; });
  }
  /// Columns other than the label.
  std::size_t feature_column_count() const {
    return columns.size() - (has_column(label_column) ? 1 : 0);
  }
};

enum class DataFormat { kCsv, kLibsvm };

struct LoadOptions {
  /// Empty means "last column" for CSV; LIBSVM always uses "label".
  std::string label_column;
  std::vector<std::string> missing_markers = {"", "?"};
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

inline std::optional<bool> parse_bool(std::string_view s) {
  s = trim(s);
  if (iequals(s, "true") || iequals(s, "yes") || s == "1") return true;
  if (iequals(s, "false") || iequals(s, "no") || s == "0") return false;
  return std::nullopt;
}

// Reads one RFC-4180 record. Quoted fields may contain separators, doubled
// quotes and newlines; unquoted fields are whitespace-trimmed. Returns false
// at end of input. `line` is advanced by the number of physical lines read.
inline bool read_csv_record(std::istream& in, std::vector<std::string>& fields,
                            std::vector<bool>& quoted, std::size_t& line) {
  fields.clear();
  quoted.clear();
  std::string physical;
  if (!std::getline(in, physical)) return false;
  ++line;
  std::string field;
  bool in_quotes = false;
  bool was_quoted = false;
  std::size_t pos = 0;
  for (;;) {
    if (pos >= physical.size()) {
      if (in_quotes) {
        if (!std::getline(in, physical)) throw DataError("line " + std::to_string(line) + ": unterminated quoted field");
        ++line;
        field.push_back('\n');
        pos = 0;
        continue;
      }
      break;
    }
    const char c = physical[pos++];
    if (in_quotes) {
      if (c == '"') {
        if (pos < physical.size() && physical[pos] == '"') {
          field.push_back('"');
          ++pos;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && trim(field).empty()) {
      field.clear();
      in_quotes = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? field : std::string(trim(field)));
      quoted.push_back(was_quoted);
      field.clear();
      was_quoted = false;
    } else if (c != '\r' || pos < physical.size()) {
      field.push_back(c);
    }
  }
  fields.push_back(was_quoted ? field : std::string(trim(field)));
  quoted.push_back(was_quoted);
  return true;
}

inline void infer_kinds(RawDataset& raw) {
  for (std::size_t c = 0; c < raw.columns.size(); ++c) {
    bool numeric = true;
    bool boolean = true;
    bool any = false;
    for (const auto& row : raw.rows) {
      if (!row[c]) continue;
      any = true;
      const std::string& v = *row[c];
      if (numeric && !parse_number(v)) numeric = false;
      if (boolean && !(iequals(v, "true") || iequals(v, "false"))) boolean = false;
      if (!numeric && !boolean) break;
    }
    if (!any) {
      raw.columns[c].kind = ColumnKind::kCategorical;
    } else if (boolean) {
      raw.columns[c].kind = ColumnKind::kBoolean;
    } else {
      raw.columns[c].kind = numeric ? ColumnKind::kNumeric : ColumnKind::kCategorical;
    }
  }
}

}  // namespace detail

/// Parses CSV with a header row. Column kinds are inferred: a column is
/// numeric when every present value parses as a number, boolean when every
/// present value is true/false, categorical otherwise.
inline RawDataset parse_csv(std::istream& in, const LoadOptions& options = {}) {
  RawDataset raw;
  std::vector<std::string> fields;
  std::vector<bool> quoted;
  std::size_t line = 0;
  if (!detail::read_csv_record(in, fields, quoted, line)) throw DataError("empty CSV input");
  for (auto& name : fields) {
    if (name.empty()) throw DataError("line 1: empty column name in header");
    raw.columns.push_back({name, ColumnKind::kCategorical});
  }
  const auto is_missing = [&](const std::string& v, bool was_quoted) {
    if (was_quoted && !v.empty()) return false;
    return std::find(options.missing_markers.begin(), options.missing_markers.end(), v) !=
           options.missing_markers.end();
  };
  while (true) {
    const std::size_t start_line = line + 1;
    if (!detail::read_csv_record(in, fields, quoted, line)) break;
    if (fields.size() == 1 && fields[0].empty() && !quoted[0]) continue;  // blank line
    if (fields.size() != raw.columns.size()) {
      throw DataError("line " + std::to_string(start_line) + ": expected " +
                      std::to_string(raw.columns.size()) + " fields, found " +
                      std::to_string(fields.size()));
    }
    std::vector<RawCell> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (is_missing(fields[c], quoted[c])) {
        row.emplace_back(std::nullopt);
      } else {
        row.emplace_back(std::move(fields[c]));
      }
    }
    raw.rows.push_back(std::move(row));
  }
  if (raw.rows.empty()) throw DataError("CSV input has a header but no records");
  raw.label_column = options.label_column.empty() ? raw.columns.back().name : options.label_column;
  if (!raw.has_column(raw.label_column)) {
    throw DataError("label column '" + raw.label_column + "' not in header");
  }
  detail::infer_kinds(raw);
  return raw;
}

/// Parses "<label> <idx>:<val> ..." lines with 1-based feature indices.
/// Absent features are 0. Columns are named f1..fR where R is the largest
/// index seen, or `num_features` when given.
inline RawDataset parse_libsvm(std::istream& in, std::size_t num_features = 0) {
  std::vector<std::pair<std::string, std::map<std::size_t, std::string>>> records;
  std::string text;
  std::size_t line = 0;
  std::size_t max_index = 0;
  while (std::getline(in, text)) {
    ++line;
    std::string_view view = detail::trim(text);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = detail::trim(view.substr(0, hash));
    }
    if (view.empty()) continue;
    std::istringstream tokens{std::string(view)};
    std::string label;
    tokens >> label;
    std::map<std::size_t, std::string> features;
    std::string token;
    std::size_t previous = 0;
    while (tokens >> token) {
      const auto colon = token.find(':');
      const auto bad = [&] {
        return DataError("line " + std::to_string(line) + ": malformed feature '" + token + "'");
      };
      if (colon == std::string::npos || colon == 0 || colon + 1 == token.size()) throw bad();
      std::size_t index = 0;
      const std::string_view idx(token.data(), colon);
      auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), index);
      if (ec != std::errc() || ptr != idx.data() + idx.size() || index == 0) throw bad();
      if (!detail::parse_number(token.substr(colon + 1))) throw bad();
      if (index <= previous) {
        throw DataError("line " + std::to_string(line) + ": feature indices must increase");
      }
      previous = index;
      max_index = std::max(max_index, index);
      features.emplace(index, token.substr(colon + 1));
    }
    records.emplace_back(std::move(label), std::move(features));
  }
  if (records.empty()) throw DataError("empty LIBSVM input");
  if (num_features != 0) {
    if (max_index > num_features) {
      throw DataError("feature index " + std::to_string(max_index) + " exceeds declared count " +
                      std::to_string(num_features));
    }
    max_index = num_features;
  }
  RawDataset raw;
  for (std::size_t j = 1; j <= max_index; ++j) {
    raw.columns.push_back({"f" + std::to_string(j), ColumnKind::kNumeric});
  }
  raw.columns.push_back({"label", ColumnKind::kCategorical});
  raw.label_column = "label";
  raw.rows.reserve(records.size());
  for (auto& [label, features] : records) {
    std::vector<RawCell> row(max_index + 1, RawCell{"0"});
    for (auto& [index, value] : features) row[index - 1] = value;
    row[max_index] = label;
    raw.rows.push_back(std::move(row));
  }
  return raw;
}

inline RawDataset load_dataset(const std::string& path, DataFormat format,
                               const LoadOptions& options = {}, std::size_t num_features = 0) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return format == DataFormat::kCsv ? parse_csv(in, options) : parse_libsvm(in, num_features);
}

}  // namespace dpboost
