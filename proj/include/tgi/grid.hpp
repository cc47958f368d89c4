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

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tgi/error.hpp"

namespace tgi {

inline constexpr int kMaxGridDim = 30;
inline constexpr int kNumColors = 10;

// One ARC palette symbol, 0..9. Color 0 is the background unless a
// generator says otherwise.
class Color {
 public:
  constexpr Color() = default;
  constexpr explicit Color(int value) : value_(static_cast<std::uint8_t>(value)) {
    if (value < 0 || value >= kNumColors) {
      throw GridBoundsViolation("color " + std::to_string(value) +
                                " outside 0..9");
    }
  }

  constexpr int value() const noexcept { return value_; }

  friend constexpr auto operator<=>(Color, Color) = default;

 private:
  std::uint8_t value_ = 0;
};

inline constexpr Color kBackground{0};

// Canonical display names used by reasoning templates.
inline std::string_view color_name(Color c) {
  static constexpr std::array<std::string_view, kNumColors> kNames = {
      "black", "blue",    "red",    "green", "yellow",
      "grey",  "magenta", "orange", "cyan",  "maroon"};
  return kNames[static_cast<std::size_t>(c.value())];
}

// Rectangular matrix of colors, 1..30 on each side, stored row-major.
class Grid {
 public:
  Grid(int height, int width, Color fill = kBackground)
      : height_(height), width_(width) {
    check_dims(height, width);
    cells_.assign(static_cast<std::size_t>(height * width), fill);
  }

  Grid(int height, int width, std::vector<Color> cells)
      : height_(height), width_(width), cells_(std::move(cells)) {
    check_dims(height, width);
    if (cells_.size() != static_cast<std::size_t>(height * width)) {
      throw GridBoundsViolation("cell count does not match dimensions");
    }
  }

  // Builds from nested integer rows, validating every bound.
  static Grid from_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) throw GridBoundsViolation("grid has no rows");
    const int h = static_cast<int>(rows.size());
    const int w = static_cast<int>(rows.front().size());
    check_dims(h, w);
    std::vector<Color> cells;
    cells.reserve(static_cast<std::size_t>(h * w));
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != w) {
        throw GridBoundsViolation("ragged rows");
      }
      for (int v : row) cells.emplace_back(v);
    }
    return Grid(h, w, std::move(cells));
  }

  static Grid from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<std::vector<int>> v;
    for (const auto& r : rows) v.emplace_back(r);
    return from_rows(v);
  }

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  int area() const noexcept { return height_ * width_; }

  bool contains(int row, int col) const noexcept {
    return row >= 0 && row < height_ && col >= 0 && col < width_;
  }

  Color at(int row, int col) const {
    return cells_[index(row, col)];
  }
  void set(int row, int col, Color c) { cells_[index(row, col)] = c; }

  std::span<const Color> cells() const noexcept { return cells_; }

  std::vector<std::vector<int>> to_rows() const {
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(height_));
    for (int r = 0; r < height_; ++r) {
      auto& row = rows[static_cast<std::size_t>(r)];
      row.reserve(static_cast<std::size_t>(width_));
      for (int c = 0; c < width_; ++c) row.push_back(at(r, c).value());
    }
    return rows;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

  static void check_dims(int height, int width) {
    if (height < 1 || height > kMaxGridDim || width < 1 || width > kMaxGridDim) {
      throw GridBoundsViolation("dimensions " + std::to_string(height) + "x" +
                                std::to_string(width) + " outside 1..30");
    }
  }

 private:
  std::size_t index(int row, int col) const {
    if (!contains(row, col)) {
      throw OutOfBounds("cell (" + std::to_string(row) + "," +
                        std::to_string(col) + ") outside " +
                        std::to_string(height_) + "x" + std::to_string(width_));
    }
    return static_cast<std::size_t>(row * width_ + col);
  }

  int height_;
  int width_;
  std::vector<Color> cells_;
};

inline bool grid_equal(const Grid& a, const Grid& b) { return a == b; }

inline std::map<Color, int> color_histogram(const Grid& g) {
  std::map<Color, int> counts;
  for (Color c : g.cells()) ++counts[c];
  return counts;
}

struct Pair {
  Grid input;
  Grid output;

  friend bool operator==(const Pair&, const Pair&) = default;
};

// Train and test pairs sharing one latent rule. Both splits are non-empty.
struct Episode {
  std::vector<Pair> train;
  std::vector<Pair> test;

  void validate() const {
    if (train.empty()) throw EmptySplit("episode has no train pairs");
    if (test.empty()) throw EmptySplit("episode has no test pairs");
  }

  // Visits train pairs then test pairs.
  template <typename Fn>
  void for_each_pair(Fn&& fn) const {
    for (std::size_t i = 0; i < train.size(); ++i) fn(train[i], false, i);
    for (std::size_t i = 0; i < test.size(); ++i) fn(test[i], true, i);
  }

  friend bool operator==(const Episode&, const Episode&) = default;
};

}  // namespace tgi
