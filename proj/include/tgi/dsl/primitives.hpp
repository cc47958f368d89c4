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
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tgi/dsl/term.hpp"
#include "tgi/objects.hpp"

namespace tgi::dsl {

using Value = std::variant<Grid, GridObject, GridObjects, Scalar>;

inline Type value_type(const Value& v) {
  switch (v.index()) {
    case 0: return Type::grid;
    case 1: return Type::object;
    case 2: return Type::objects;
    default: return scalar_type(std::get<Scalar>(v));
  }
}

namespace detail {

template <typename T>
const T& scalar_as(const Value& v) {
  return std::get<T>(std::get<Scalar>(v));
}
inline std::int64_t as_int(const Value& v) { return scalar_as<std::int64_t>(v); }
inline Color as_color(const Value& v) { return scalar_as<Color>(v); }

inline int narrow_int(std::int64_t v, std::string_view what) {
  if (v < -1000000 || v > 1000000) {
    throw PreconditionViolation(std::string(what) + " argument out of range");
  }
  return static_cast<int>(v);
}

inline Grid gravity(const Grid& g, Direction dir) {
  Grid out(g.height(), g.width());
  const bool vertical = dir == Direction::up || dir == Direction::down;
  const int lines = vertical ? g.width() : g.height();
  const int len = vertical ? g.height() : g.width();
  for (int line = 0; line < lines; ++line) {
    auto at = [&](int k) { return vertical ? g.at(k, line) : g.at(line, k); };
    auto put = [&](int k, Color c) {
      if (vertical) {
        out.set(k, line, c);
      } else {
        out.set(line, k, c);
      }
    };
    std::vector<Color> fg;
    for (int k = 0; k < len; ++k) {
      if (at(k) != kBackground) fg.push_back(at(k));
    }
    const bool toward_end = dir == Direction::down || dir == Direction::right;
    const int start = toward_end ? len - static_cast<int>(fg.size()) : 0;
    for (std::size_t i = 0; i < fg.size(); ++i) put(start + static_cast<int>(i), fg[i]);
  }
  return out;
}

inline GridObjects sort_objects_by(GridObjects os, SortKey key) {
  auto proj = [key](const GridObject& o) {
    switch (key) {
      case SortKey::size_asc: return o.size();
      case SortKey::size_desc: return -o.size();
      case SortKey::top: return o.bbox().top;
      case SortKey::left: return o.bbox().left;
    }
    return 0;
  };
  std::stable_sort(os.begin(), os.end(),
                   [&](const GridObject& a, const GridObject& b) { return proj(a) < proj(b); });
  return os;
}

// Stacks objects in order against the `toward` edge (up or down), one bbox
// band per object, each flush with the `align` edge (left or right).
inline Grid stack(const GridObjects& os, const Grid& canvas, Direction toward,
                  Direction align) {
  if (toward != Direction::up && toward != Direction::down) {
    throw PreconditionViolation("stack direction must be up or down");
  }
  if (align != Direction::left && align != Direction::right) {
    throw PreconditionViolation("stack alignment must be left or right");
  }
  Grid out = canvas;
  int cursor = toward == Direction::down ? canvas.height() : 0;
  for (const auto& o : os) {
    const auto& b = o.bbox();
    int top;
    if (toward == Direction::down) {
      top = cursor - b.height();
      cursor = top;
    } else {
      top = cursor;
      cursor += b.height();
    }
    const int left = align == Direction::left ? 0 : canvas.width() - b.width();
    out = overlay(out, translate(o, top - b.top, left - b.left));
  }
  return out;
}

inline Grid recolor_map(const Grid& g, std::span<const Value> pairs) {
  std::array<int, kNumColors> table;
  for (int k = 0; k < kNumColors; ++k) table[static_cast<std::size_t>(k)] = k;
  // Earlier pairs win when a source color repeats.
  for (std::size_t i = pairs.size(); i >= 2; i -= 2) {
    table[static_cast<std::size_t>(as_color(pairs[i - 2]).value())] =
        as_color(pairs[i - 1]).value();
  }
  Grid out = g;
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      out.set(r, c, Color(table[static_cast<std::size_t>(g.at(r, c).value())]));
    }
  }
  return out;
}

}  // namespace detail

// Fixed signature of a table primitive. `if` and `eq` are generic and are
// typed specially by the checker.
struct PrimitiveSpec {
  std::string_view name;
  std::vector<Type> params;
  Type result;
  bool color_pairs_tail = false;  // params followed by one or more (Color, Color)
  std::function<Value(std::span<const Value>)> apply;
  std::string_view summary;
};

inline constexpr std::string_view kIf = "if";
inline constexpr std::string_view kEq = "eq";

inline const std::vector<PrimitiveSpec>& primitive_table() {
  using namespace detail;
  using V = std::span<const Value>;
  static const std::vector<PrimitiveSpec> table = {
      {"objects", {Type::grid, Type::connectivity, Type::mode}, Type::objects, false,
       [](V a) -> Value {
         return find_connected_objects(
             std::get<Grid>(a[0]), scalar_as<Connectivity>(a[1]),
             ExtractionMode{scalar_as<ExtractionKind>(a[2]), kBackground});
       },
       "connected components, ordered by first raster cell"},
      {"nth-object", {Type::objects, Type::integer}, Type::object, false,
       [](V a) -> Value {
         const auto& os = std::get<GridObjects>(a[0]);
         const auto i = as_int(a[1]);
         if (i < 0 || i >= static_cast<std::int64_t>(os.size())) {
           throw DegenerateResult("nth-object index " + std::to_string(i) + " of " +
                                  std::to_string(os.size()) + " objects");
         }
         return os[static_cast<std::size_t>(i)];
       },
       "object at a zero-based index"},
      {"count-objects", {Type::objects}, Type::integer, false,
       [](V a) -> Value {
         return Scalar{static_cast<std::int64_t>(std::get<GridObjects>(a[0]).size())};
       },
       "number of objects"},
      {"largest", {Type::objects}, Type::objects, false,
       [](V a) -> Value {
         return filter_objects(std::get<GridObjects>(a[0]), ObjectPredicate::largest());
       },
       "objects of maximal size (all ties)"},
      {"translate", {Type::object, Type::integer, Type::integer}, Type::object, false,
       [](V a) -> Value {
         return translate(std::get<GridObject>(a[0]), narrow_int(as_int(a[1]), "translate"),
                          narrow_int(as_int(a[2]), "translate"));
       },
       "shift an object by (rows, cols)"},
      {"rotate", {Type::grid, Type::integer}, Type::grid, false,
       [](V a) -> Value {
         return rotate(std::get<Grid>(a[0]), narrow_int(as_int(a[1]), "rotate"));
       },
       "clockwise quarter turns, 0..3"},
      {"reflect", {Type::grid, Type::axis}, Type::grid, false,
       [](V a) -> Value { return reflect(std::get<Grid>(a[0]), scalar_as<Axis>(a[1])); },
       "mirror columns (horizontal) or rows (vertical)"},
      {"crop", {Type::grid, Type::object}, Type::grid, false,
       [](V a) -> Value { return crop_to_bbox(std::get<Grid>(a[0]), std::get<GridObject>(a[1])); },
       "sub-grid under an object's bounding box"},
      {"paint", {Type::grid, Type::object, Type::color}, Type::grid, false,
       [](V a) -> Value {
         return paint(std::get<Grid>(a[0]), std::get<GridObject>(a[1]), as_color(a[2]));
       },
       "recolor an object's cells in a grid"},
      {"overlay", {Type::grid, Type::object}, Type::grid, false,
       [](V a) -> Value { return overlay(std::get<Grid>(a[0]), std::get<GridObject>(a[1])); },
       "write an object's cells onto a grid"},
      {"recolor", {Type::object, Type::color}, Type::object, false,
       [](V a) -> Value { return recolor(std::get<GridObject>(a[0]), as_color(a[1])); },
       "object with every cell set to one color"},
      {"canvas", {Type::integer, Type::integer, Type::color}, Type::grid, false,
       [](V a) -> Value {
         const auto h = as_int(a[0]);
         const auto w = as_int(a[1]);
         if (h < 1 || h > kMaxGridDim || w < 1 || w > kMaxGridDim) {
           throw DegenerateResult("canvas " + std::to_string(h) + "x" + std::to_string(w));
         }
         return Grid(static_cast<int>(h), static_cast<int>(w), as_color(a[2]));
       },
       "uniform grid of the given size"},
      {"height", {Type::grid}, Type::integer, false,
       [](V a) -> Value { return Scalar{std::int64_t{std::get<Grid>(a[0]).height()}}; },
       "grid rows"},
      {"width", {Type::grid}, Type::integer, false,
       [](V a) -> Value { return Scalar{std::int64_t{std::get<Grid>(a[0]).width()}}; },
       "grid columns"},
      {"size", {Type::object}, Type::integer, false,
       [](V a) -> Value { return Scalar{std::int64_t{std::get<GridObject>(a[0]).size()}}; },
       "object cell count"},
      {"bbox-height", {Type::object}, Type::integer, false,
       [](V a) -> Value {
         return Scalar{std::int64_t{std::get<GridObject>(a[0]).bbox().height()}};
       },
       "bounding-box rows"},
      {"bbox-width", {Type::object}, Type::integer, false,
       [](V a) -> Value {
         return Scalar{std::int64_t{std::get<GridObject>(a[0]).bbox().width()}};
       },
       "bounding-box columns"},
      {"gravity", {Type::grid, Type::direction}, Type::grid, false,
       [](V a) -> Value { return gravity(std::get<Grid>(a[0]), scalar_as<Direction>(a[1])); },
       "slide foreground cells toward an edge, keeping their order"},
      {"sort-objects-by", {Type::objects, Type::sort_key}, Type::objects, false,
       [](V a) -> Value {
         return sort_objects_by(std::get<GridObjects>(a[0]), scalar_as<SortKey>(a[1]));
       },
       "stable sort by a key"},
      {"stack", {Type::objects, Type::grid, Type::direction, Type::direction}, Type::grid, false,
       [](V a) -> Value {
         return stack(std::get<GridObjects>(a[0]), std::get<Grid>(a[1]),
                      scalar_as<Direction>(a[2]), scalar_as<Direction>(a[3]));
       },
       "stack objects against an edge with an alignment"},
      {"recolor-map", {Type::grid}, Type::grid, true,
       [](V a) -> Value { return recolor_map(std::get<Grid>(a[0]), a.subspan(1)); },
       "replace colors by (from, to) pairs"},
      {kIf, {}, Type::grid, false, nullptr, "(if cond then else), branches share a type"},
      {kEq, {}, Type::boolean, false,
       [](V a) -> Value { return Scalar{std::get<Scalar>(a[0]) == std::get<Scalar>(a[1])}; },
       "equality of two scalars of one type"},
  };
  return table;
}

inline const PrimitiveSpec* find_primitive(std::string_view name) {
  for (const auto& p : primitive_table()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace tgi::dsl
