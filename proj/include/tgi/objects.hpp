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

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tgi/grid.hpp"

namespace tgi {

enum class Connectivity { four, eight };
enum class ExtractionKind { same_color, any_foreground };

struct ExtractionMode {
  ExtractionKind kind = ExtractionKind::same_color;
  Color background = kBackground;
};

enum class Axis { horizontal, vertical };

struct Cell {
  int row = 0;
  int col = 0;
  Color color;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct BBox {
  int top = 0;
  int left = 0;
  int bottom = 0;  // inclusive
  int right = 0;   // inclusive

  int height() const noexcept { return bottom - top + 1; }
  int width() const noexcept { return right - left + 1; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

// A non-empty set of colored cells, kept sorted in raster order. Coordinates
// may leave the source grid after translate(); composing such an object into
// a grid raises OutOfBounds.
class GridObject {
 public:
  explicit GridObject(std::vector<Cell> cells) : cells_(std::move(cells)) {
    if (cells_.empty()) throw PreconditionViolation("object has no cells");
    std::sort(cells_.begin(), cells_.end());
    // Same position listed twice is a construction error.
    for (std::size_t i = 1; i < cells_.size(); ++i) {
      if (cells_[i].row == cells_[i - 1].row && cells_[i].col == cells_[i - 1].col) {
        throw PreconditionViolation("object lists a cell twice");
      }
    }
    bbox_ = {cells_.front().row, cells_.front().col, cells_.front().row,
             cells_.front().col};
    for (const auto& c : cells_) {
      bbox_.top = std::min(bbox_.top, c.row);
      bbox_.bottom = std::max(bbox_.bottom, c.row);
      bbox_.left = std::min(bbox_.left, c.col);
      bbox_.right = std::max(bbox_.right, c.col);
    }
  }

  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const BBox& bbox() const noexcept { return bbox_; }
  int size() const noexcept { return static_cast<int>(cells_.size()); }

  friend bool operator==(const GridObject& a, const GridObject& b) {
    return a.cells_ == b.cells_;
  }

 private:
  std::vector<Cell> cells_;
  BBox bbox_;
};

// Ordered by each object's first cell in raster order.
using GridObjects = std::vector<GridObject>;

inline GridObjects find_connected_objects(const Grid& g, Connectivity conn,
                                          ExtractionMode mode = {}) {
  static constexpr int kDr[8] = {-1, 1, 0, 0, -1, -1, 1, 1};
  static constexpr int kDc[8] = {0, 0, -1, 1, -1, 1, -1, 1};
  const int neighbours = conn == Connectivity::four ? 4 : 8;
  std::vector<char> seen(static_cast<std::size_t>(g.area()), 0);
  GridObjects out;
  std::vector<std::pair<int, int>> stack;
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      const Color start = g.at(r, c);
      if (start == mode.background || seen[static_cast<std::size_t>(r * g.width() + c)]) {
        continue;
      }
      std::vector<Cell> cells;
      seen[static_cast<std::size_t>(r * g.width() + c)] = 1;
      stack.assign(1, {r, c});
      while (!stack.empty()) {
        const auto [pr, pc] = stack.back();
        stack.pop_back();
        const Color pcol = g.at(pr, pc);
        cells.push_back({pr, pc, pcol});
        for (int k = 0; k < neighbours; ++k) {
          const int nr = pr + kDr[k];
          const int nc = pc + kDc[k];
          if (!g.contains(nr, nc)) continue;
          auto& flag = seen[static_cast<std::size_t>(nr * g.width() + nc)];
          if (flag) continue;
          const Color ncol = g.at(nr, nc);
          if (ncol == mode.background) continue;
          if (mode.kind == ExtractionKind::same_color && ncol != start) continue;
          flag = 1;
          stack.emplace_back(nr, nc);
        }
      }
      out.emplace_back(std::move(cells));
    }
  }
  return out;
}

inline GridObject translate(const GridObject& o, int dr, int dc) {
  std::vector<Cell> cells = o.cells();
  for (auto& c : cells) {
    c.row += dr;
    c.col += dc;
  }
  return GridObject(std::move(cells));
}

// Clockwise quarter turns.
inline Grid rotate(const Grid& g, int quarter_turns) {
  if (quarter_turns < 0 || quarter_turns > 3) {
    throw PreconditionViolation("quarter_turns " + std::to_string(quarter_turns) +
                                " outside 0..3");
  }
  Grid cur = g;
  for (int t = 0; t < quarter_turns; ++t) {
    Grid next(cur.width(), cur.height());
    for (int r = 0; r < next.height(); ++r) {
      for (int c = 0; c < next.width(); ++c) {
        next.set(r, c, cur.at(cur.height() - 1 - c, r));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

// horizontal mirrors left and right (columns swap); vertical mirrors top and
// bottom (rows swap).
inline Grid reflect(const Grid& g, Axis axis) {
  Grid out(g.height(), g.width());
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      if (axis == Axis::horizontal) {
        out.set(r, c, g.at(r, g.width() - 1 - c));
      } else {
        out.set(r, c, g.at(g.height() - 1 - r, c));
      }
    }
  }
  return out;
}

namespace detail {
inline void require_inside(const Grid& g, const GridObject& o) {
  const auto& b = o.bbox();
  if (!g.contains(b.top, b.left) || !g.contains(b.bottom, b.right)) {
    throw OutOfBounds("object bbox (" + std::to_string(b.top) + "," +
                      std::to_string(b.left) + ")-(" + std::to_string(b.bottom) +
                      "," + std::to_string(b.right) + ") outside " +
                      std::to_string(g.height()) + "x" + std::to_string(g.width()));
  }
}
}  // namespace detail

inline Grid crop_to_bbox(const Grid& g, const GridObject& o) {
  detail::require_inside(g, o);
  const auto& b = o.bbox();
  Grid out(b.height(), b.width());
  for (int r = 0; r < b.height(); ++r) {
    for (int c = 0; c < b.width(); ++c) out.set(r, c, g.at(b.top + r, b.left + c));
  }
  return out;
}

inline Grid paint(const Grid& g, const GridObject& o, Color c) {
  detail::require_inside(g, o);
  Grid out = g;
  for (const auto& cell : o.cells()) out.set(cell.row, cell.col, c);
  return out;
}

inline Grid overlay(const Grid& base, const GridObject& o) {
  detail::require_inside(base, o);
  Grid out = base;
  for (const auto& cell : o.cells()) out.set(cell.row, cell.col, cell.color);
  return out;
}

inline GridObject recolor(const GridObject& o, Color c) {
  std::vector<Cell> cells = o.cells();
  for (auto& cell : cells) cell.color = c;
  return GridObject(std::move(cells));
}

struct ObjectPredicate {
  enum class Kind { size_equals, size_largest, size_smallest, color_equals, bbox_dims };
  Kind kind;
  int n = 0;  // size_equals: size; bbox_dims: height
  int w = 0;  // bbox_dims: width
  Color color;

  static ObjectPredicate size_equals(int n) { return {Kind::size_equals, n, 0, {}}; }
  static ObjectPredicate largest() { return {Kind::size_largest, 0, 0, {}}; }
  static ObjectPredicate smallest() { return {Kind::size_smallest, 0, 0, {}}; }
  static ObjectPredicate color_equals(Color c) { return {Kind::color_equals, 0, 0, c}; }
  static ObjectPredicate bbox_dims(int h, int w) { return {Kind::bbox_dims, h, w, {}}; }
};

// Object color for color_equals: the object must be uniformly that color.
inline GridObjects filter_objects(const GridObjects& os, const ObjectPredicate& pred) {
  if (os.empty()) return {};
  int extreme = os.front().size();
  for (const auto& o : os) {
    if (pred.kind == ObjectPredicate::Kind::size_largest) extreme = std::max(extreme, o.size());
    if (pred.kind == ObjectPredicate::Kind::size_smallest) extreme = std::min(extreme, o.size());
  }
  GridObjects out;
  for (const auto& o : os) {
    bool keep = false;
    switch (pred.kind) {
      case ObjectPredicate::Kind::size_equals:
        keep = o.size() == pred.n;
        break;
      case ObjectPredicate::Kind::size_largest:
      case ObjectPredicate::Kind::size_smallest:
        keep = o.size() == extreme;
        break;
      case ObjectPredicate::Kind::color_equals:
        keep = std::all_of(o.cells().begin(), o.cells().end(),
                           [&](const Cell& c) { return c.color == pred.color; });
        break;
      case ObjectPredicate::Kind::bbox_dims:
        keep = o.bbox().height() == pred.n && o.bbox().width() == pred.w;
        break;
    }
    if (keep) out.push_back(o);
  }
  return out;
}

// Most frequent color among cells; ties go to the smaller color value.
template <typename Range>
Color dominant_color_of(const Range& cells) {
  std::array<int, kNumColors> counts{};
  for (const auto& c : cells) ++counts[static_cast<std::size_t>(c.color.value())];
  int best = 0;
  for (int k = 1; k < kNumColors; ++k) {
    if (counts[static_cast<std::size_t>(k)] > counts[static_cast<std::size_t>(best)]) best = k;
  }
  return Color(best);
}

struct ObjectFeatures {
  double center_row = 0;  // bbox midpoint; always a multiple of 0.5
  double center_col = 0;
  int area = 0;
  Color dominant;
};

inline ObjectFeatures object_features(const GridObject& o) {
  const auto& b = o.bbox();
  return {(b.top + b.bottom) / 2.0, (b.left + b.right) / 2.0, o.size(),
          dominant_color_of(o.cells())};
}

}  // namespace tgi
