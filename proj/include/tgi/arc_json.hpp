// Copyright 2026 The tgi Authors
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

#include <string>
#include <string_view>

#include <json.hpp>

#include "tgi/grid.hpp"

namespace tgi {

namespace detail {

inline Grid grid_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    throw MalformedJson(where + ": grid must be a non-empty array of rows");
  }
  std::vector<std::vector<int>> rows;
  rows.reserve(j.size());
  for (const auto& row : j) {
    if (!row.is_array()) throw MalformedJson(where + ": row is not an array");
    auto& out = rows.emplace_back();
    out.reserve(row.size());
    for (const auto& cell : row) {
      if (!cell.is_number_integer()) {
        throw MalformedJson(where + ": cell is not an integer");
      }
      const auto v = cell.get<long long>();
      if (v < 0 || v > 9) {
        throw GridBoundsViolation(where + ": cell value " + std::to_string(v) +
                                  " outside 0..9");
      }
      out.push_back(static_cast<int>(v));
    }
  }
  try {
    return Grid::from_rows(rows);
  } catch (const GridBoundsViolation& e) {
    throw GridBoundsViolation(where + ": " + e.what());
  }
}

inline std::vector<Pair> split_from_json(const nlohmann::json& doc,
                                         const char* name) {
  if (!doc.contains(name)) throw EmptySplit(std::string("missing '") + name + "'");
  const auto& arr = doc.at(name);
  if (!arr.is_array()) throw MalformedJson(std::string(name) + " is not an array");
  if (arr.empty()) throw EmptySplit(std::string(name) + " is empty");
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& p = arr[i];
    const std::string where = std::string(name) + "[" + std::to_string(i) + "]";
    if (!p.is_object() || !p.contains("input") || !p.contains("output")) {
      throw MalformedJson(where + ": pair needs 'input' and 'output'");
    }
    pairs.push_back(Pair{grid_from_json(p.at("input"), where + ".input"),
                         grid_from_json(p.at("output"), where + ".output")});
  }
  return pairs;
}

inline void append_grid(std::string& out, const Grid& g) {
  out += '[';
  for (int r = 0; r < g.height(); ++r) {
    if (r) out += ',';
    out += '[';
    for (int c = 0; c < g.width(); ++c) {
      if (c) out += ',';
      out += static_cast<char>('0' + g.at(r, c).value());
    }
    out += ']';
  }
  out += ']';
}

inline void append_split(std::string& out, const std::vector<Pair>& pairs) {
  out += '[';
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) out += ',';
    out += "{\"input\":";
    append_grid(out, pairs[i].input);
    out += ",\"output\":";
    append_grid(out, pairs[i].output);
    out += '}';
  }
  out += ']';
}

}  // namespace detail

inline Grid parse_grid_json(const nlohmann::json& j) {
  return detail::grid_from_json(j, "grid");
}

// Canonical grid text: nested integer arrays, no whitespace.
inline std::string serialize_grid(const Grid& g) {
  std::string out;
  detail::append_grid(out, g);
  return out;
}

inline Episode parse_arc_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedJson(e.what());
  }
  if (!doc.is_object()) throw MalformedJson("top level must be an object");
  Episode e;
  e.train = detail::split_from_json(doc, "train");
  e.test = detail::split_from_json(doc, "test");
  return e;
}

// Keys in order train, test and input, output; no whitespace.
inline std::string serialize_arc_json(const Episode& e) {
  std::string out = "{\"train\":";
  detail::append_split(out, e.train);
  out += ",\"test\":";
  detail::append_split(out, e.test);
  out += '}';
  return out;
}

}  // namespace tgi
