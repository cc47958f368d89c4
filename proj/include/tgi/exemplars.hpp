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
#include <numeric>
#include <string>
#include <vector>

#include "tgi/constraints.hpp"
#include "tgi/dsl.hpp"
#include "tgi/generator.hpp"
#include "tgi/objects.hpp"
#include "tgi/sampler.hpp"

// The exemplar catalog. Grid sizes keep every input inside 5x5..30x30.
namespace tgi::exemplars {

using dsl::Direction;
using dsl::Env;
using dsl::Scalar;

namespace detail {

inline std::int64_t int_var(const Env& env, std::string_view name) {
  return std::get<std::int64_t>(env.find(name)->second);
}
inline Color color_var(const Env& env, std::string_view name) {
  return std::get<Color>(env.find(name)->second);
}
template <typename T>
T scalar_var(const Env& env, std::string_view name) {
  return std::get<T>(env.find(name)->second);
}

inline VarSpec int_range(std::string name, int lo, int hi) {
  return {std::move(name), [lo, hi](RngStream& r, const SampleContext&) -> Scalar {
            return std::int64_t{r.uniform(lo, hi)};
          }};
}

inline VarSpec one_of(std::string name, std::vector<Scalar> choices) {
  return {std::move(name), [choices = std::move(choices)](RngStream& r, const SampleContext&) {
            return r.choice(choices);
          }};
}

// A foreground color distinct from the named taskvars sampled before it.
inline VarSpec distinct_color(std::string name, std::vector<std::string> avoid) {
  return {std::move(name),
          [avoid = std::move(avoid)](RngStream& r, const SampleContext& ctx) -> Scalar {
            std::vector<Color> exclude{kBackground};
            for (const auto& a : avoid) {
              const auto& env = ctx.taskvars.contains(a) ? ctx.taskvars : ctx.gridvars;
              exclude.push_back(color_var(env, a));
            }
            return random_subset_colors(r, 1, exclude).front();
          }};
}

inline GridObject segment(int length, Color c) {
  std::vector<Cell> cells;
  for (int k = 0; k < length; ++k) cells.push_back({0, k, c});
  return GridObject(std::move(cells));
}

inline GridObject square(int side, Color c) {
  std::vector<Cell> cells;
  for (int r = 0; r < side; ++r) {
    for (int k = 0; k < side; ++k) cells.push_back({r, k, c});
  }
  return GridObject(std::move(cells));
}

// Recolors each cell of o with a color from palette; every palette color is
// used at least once when o has enough cells.
inline GridObject scatter_colors(RngStream& rng, const GridObject& o,
                                 const std::vector<Color>& palette) {
  std::vector<Cell> cells = o.cells();
  std::vector<std::size_t> order(cells.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  for (std::size_t k = 0; k < order.size(); ++k) {
    cells[order[k]].color = k < palette.size() ? palette[k] : rng.choice(palette);
  }
  return GridObject(std::move(cells));
}

inline bool has_square(const Grid& g, int side) {
  for (const auto& o : find_connected_objects(g, Connectivity::eight)) {
    if (o.bbox().height() == side && o.bbox().width() == side) return true;
  }
  return false;
}

inline bool unique_largest(const Grid& g) {
  const auto objs = find_connected_objects(g, Connectivity::four);
  return filter_objects(objs, ObjectPredicate::largest()).size() == 1;
}

inline bool every_pair(const Episode& e, const std::function<bool(const Pair&)>& fn) {
  bool ok = true;
  e.for_each_pair([&](const Pair& p, bool, std::size_t) { ok = ok && fn(p); });
  return ok;
}

inline std::vector<std::vector<Color>> lines_of(const Grid& g, bool columns) {
  std::vector<std::vector<Color>> out(static_cast<std::size_t>(columns ? g.width() : g.height()));
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      out[static_cast<std::size_t>(columns ? c : r)].push_back(g.at(r, c));
    }
  }
  for (auto& line : out) std::sort(line.begin(), line.end());
  return out;
}

}  // namespace detail

inline GeneratorDefinition stacked_segments() {
  using namespace detail;
  GeneratorDefinition d;
  d.id = "tgi.g1.stacked_segments";
  d.summary = "sort horizontal segments by length and stack them against an edge";
  d.taskvars = {one_of("stack_dir", {Direction::down, Direction::up}),
                one_of("align", {Direction::right, Direction::left})};
  d.gridvars = {int_range("rows", 6, 14), int_range("cols", 6, 14),
                {"segment_count", [](RngStream& r, const SampleContext& ctx) -> Scalar {
                   const auto rows = int_var(ctx.gridvars, "rows");
                   const auto cols = int_var(ctx.gridvars, "cols");
                   const auto hi = std::min<std::int64_t>({5, (rows + 1) / 2, cols});
                   return std::int64_t{r.uniform(2, static_cast<int>(hi))};
                 }}};
  d.input_builder = [](RngStream& r, const Env&, const Env& gv) {
    const int rows = static_cast<int>(int_var(gv, "rows"));
    const int cols = static_cast<int>(int_var(gv, "cols"));
    const int n = static_cast<int>(int_var(gv, "segment_count"));
    std::vector<int> lengths(static_cast<std::size_t>(cols));
    std::iota(lengths.begin(), lengths.end(), 1);
    r.shuffle(lengths);
    GridObjects segs;
    for (int k = 0; k < n; ++k) {
      segs.push_back(segment(lengths[static_cast<std::size_t>(k)], Color(r.uniform(1, 9))));
    }
    return place_non_overlapping(r, Grid(rows, cols), segs, 1);
  };
  d.transform_builder = [](const Env&) {
    using namespace dsl;
    return Program{
        let("segments",
            prim("sort-objects-by",
                 {filter_objects("s",
                                 prim("objects", {input(), lit(Connectivity::four),
                                                  lit(ExtractionKind::same_color)}),
                                 prim("eq", {prim("bbox-height", {var("s")}), lit_int(1)})),
                  lit(SortKey::size_desc)}),
            prim("stack", {var("segments"),
                           prim("canvas", {prim("height", {input()}), prim("width", {input()}),
                                           lit_color(0)}),
                           var("stack_dir"), var("align")}))};
  };
  d.constraints = {EpisodeConstraint::coverage("train_has_three_segments",
                                               [](std::span<const Grid> inputs) {
                                                 return std::any_of(
                                                     inputs.begin(), inputs.end(),
                                                     [](const Grid& g) {
                                                       return object_count(g, Connectivity::four) >= 3;
                                                     });
                                               })};
  d.input_template = {{"The input grid is black and holds a few horizontal segments.",
                       "Every segment has its own length and color; the number of segments varies "
                       "from grid to grid."}};
  d.transform_template = {
      {"Order the segments from longest to shortest.",
       "Stack them in consecutive rows starting at the {stack_dir:edge} edge, longest segment "
       "closest to that edge.",
       "Push every segment against the {align:edge} edge of the grid.",
       "All other cells become black."}};
  d.declared_invariants = {
      {"color_histogram_preserved",
       [](const Episode& e, const Env&) {
         return every_pair(e, [](const Pair& p) {
           return color_histogram(p.input) == color_histogram(p.output);
         });
       }},
      {"one_row_per_segment",
       [](const Episode& e, const Env&) {
         return every_pair(e, [](const Pair& p) {
           int used_rows = 0;
           for (int r = 0; r < p.output.height(); ++r) {
             bool any = false;
             for (int c = 0; c < p.output.width(); ++c) any = any || p.output.at(r, c) != kBackground;
             used_rows += any;
           }
           return used_rows == object_count(p.input, Connectivity::four);
         });
       }},
      {"stacked_against_edges", [](const Episode& e, const Env& tv) {
         const bool from_top = scalar_var<Direction>(tv, "stack_dir") == Direction::up;
         const bool from_left = scalar_var<Direction>(tv, "align") == Direction::left;
         return every_pair(e, [&](const Pair& p) {
           const Grid& g = p.output;
           int prev = g.width() + 1;
           bool ended = false;
           for (int k = 0; k < g.height(); ++k) {
             const int r = from_top ? k : g.height() - 1 - k;
             int run = 0;
             while (run < g.width() &&
                    g.at(r, from_left ? run : g.width() - 1 - run) != kBackground) {
               ++run;
             }
             int filled = 0;
             for (int c = 0; c < g.width(); ++c) filled += g.at(r, c) != kBackground;
             if (filled != run || run > prev || (ended && run > 0)) return false;
             ended = run == 0;
             prev = run;
           }
           return true;
         });
       }}};
  return d;
}

inline GeneratorDefinition size_dependent() {
  using namespace detail;
  GeneratorDefinition d;
  d.id = "tgi.g2.size_dependent";
  d.summary = "recolor 3x3 and 5x5 squares with two different colors";
  d.taskvars = {distinct_color("object_color", {}),
                distinct_color("small_color", {"object_color"}),
                distinct_color("large_color", {"object_color", "small_color"})};
  d.gridvars = {int_range("rows", 12, 20), int_range("cols", 12, 20),
                int_range("object_count", 1, 4)};
  d.input_builder = [](RngStream& r, const Env& tv, const Env& gv) {
    const Color c = color_var(tv, "object_color");
    GridObjects squares;
    for (std::int64_t k = 0; k < int_var(gv, "object_count"); ++k) {
      squares.push_back(square(r.bernoulli(0.5) ? 3 : 5, c));
    }
    return place_non_overlapping(
        r, Grid(static_cast<int>(int_var(gv, "rows")), static_cast<int>(int_var(gv, "cols"))),
        squares, 1);
  };
  d.transform_builder = [](const Env&) {
    using namespace dsl;
    return Program{let(
        "objs", prim("objects", {input(), lit(Connectivity::eight), lit(ExtractionKind::same_color)}),
        fold_overlay(
            map_objects("o", var("objs"),
                        prim("if", {prim("eq", {prim("bbox-width", {var("o")}), lit_int(3)}),
                                    prim("recolor", {var("o"), var("small_color")}),
                                    prim("recolor", {var("o"), var("large_color")})})),
            input()))};
  };
  d.constraints = {
      EpisodeConstraint::coverage("train_has_3x3_and_5x5",
                                  [](std::span<const Grid> inputs) {
                                    bool small = false, large = false;
                                    for (const auto& g : inputs) {
                                      small = small || has_square(g, 3);
                                      large = large || has_square(g, 5);
                                    }
                                    return small && large;
                                  }),
      EpisodeConstraint::test_distinctness(
          "object_count", [](const Grid& g) { return object_count(g, Connectivity::eight); }),
      EpisodeConstraint::no_test_only_colors(),
      EpisodeConstraint::no_test_only_object_sizes(Connectivity::eight)};
  d.input_template = {{"The input grid contains solid {object_color:color_name} squares on a "
                       "black background.",
                       "Each square is either 3x3 or 5x5; the number of squares differs between "
                       "the training grids and the test grid."}};
  d.transform_template = {{"Recolor every 3x3 square to {small_color:color_name}.",
                           "Recolor every 5x5 square to {large_color:color_name}.",
                           "Leave the background unchanged."}};
  d.declared_invariants = {
      {"squares_recolored_by_size", [](const Episode& e, const Env& tv) {
         const Color small = color_var(tv, "small_color");
         const Color large = color_var(tv, "large_color");
         return every_pair(e, [&](const Pair& p) {
           for (const auto& o : find_connected_objects(p.input, Connectivity::eight)) {
             const Color want = o.bbox().width() == 3 ? small : large;
             for (const auto& c : o.cells()) {
               if (p.output.at(c.row, c.col) != want) return false;
             }
           }
           return true;
         });
       }}};
  return d;
}

inline GeneratorDefinition color_mapping() {
  using namespace detail;
  GeneratorDefinition d;
  d.id = "tgi.g3.color_mapping";
  d.summary = "crop a multicolored object, apply a fixed color mapping, rotate";
  // Eight distinct foreground colors: four sources, four targets.
  std::vector<std::string> taken;
  for (int k = 0; k < 4; ++k) {
    d.taskvars.push_back(distinct_color("src" + std::to_string(k), taken));
    taken.push_back("src" + std::to_string(k));
  }
  for (int k = 0; k < 4; ++k) {
    d.taskvars.push_back(distinct_color("dst" + std::to_string(k), taken));
    taken.push_back("dst" + std::to_string(k));
  }
  d.taskvars.push_back(int_range("turns", 1, 3));
  d.gridvars = {int_range("rows", 8, 14), int_range("cols", 8, 14),
                int_range("color_count", 2, 4), int_range("object_rows", 3, 5),
                int_range("object_cols", 3, 5)};
  d.input_builder = [](RngStream& r, const Env& tv, const Env& gv) {
    const int oh = static_cast<int>(int_var(gv, "object_rows"));
    const int ow = static_cast<int>(int_var(gv, "object_cols"));
    const int k = static_cast<int>(int_var(gv, "color_count"));
    std::vector<Color> sources;
    for (int i = 0; i < 4; ++i) sources.push_back(color_var(tv, "src" + std::to_string(i)));
    r.shuffle(sources);
    sources.resize(static_cast<std::size_t>(k));
    const ExtentConstraint ext{std::max({k, oh, ow}), oh * ow, oh, ow};
    GridObject shape = synthesize_contiguous_object(r, Connectivity::eight, ext, sources.front());
    GridObject colored = scatter_colors(r, shape, sources);
    return place_non_overlapping(
        r, Grid(static_cast<int>(int_var(gv, "rows")), static_cast<int>(int_var(gv, "cols"))),
        {colored}, 0);
  };
  d.transform_builder = [](const Env&) {
    using namespace dsl;
    std::vector<TermPtr> args = {prim(
        "crop", {input(), prim("nth-object", {prim("objects", {input(), lit(Connectivity::eight),
                                                                lit(ExtractionKind::any_foreground)}),
                                               lit_int(0)})})};
    for (int k = 0; k < 4; ++k) {
      args.push_back(var("src" + std::to_string(k)));
      args.push_back(var("dst" + std::to_string(k)));
    }
    return Program{prim("rotate", {prim("recolor-map", std::move(args)), var("turns")})};
  };
  d.train_count = {3, 4};
  d.constraints = {EpisodeConstraint::test_distinctness("color_count", distinct_foreground_colors),
                   EpisodeConstraint::no_test_only_colors()};
  d.input_template = {{"The input grid is black except for one multicolored object.",
                       "The object uses some of {src0:color_name}, {src1:color_name}, "
                       "{src2:color_name} and {src3:color_name}; the test object uses a different "
                       "number of colors than every training object."}};
  d.transform_template = {
      {"Cut out the bounding box of the object.",
       "Replace {src0:color_name} with {dst0:color_name}, {src1:color_name} with "
       "{dst1:color_name}, {src2:color_name} with {dst2:color_name} and {src3:color_name} with "
       "{dst3:color_name}; black stays black.",
       "Turn the result clockwise by {turns:plural(quarter turn)}."}};
  d.declared_invariants = {
      {"consistent_color_mapping", [](const Episode& e, const Env& tv) {
         std::map<int, int> mapping{{0, 0}};
         const int turns = static_cast<int>(int_var(tv, "turns"));
         return every_pair(e, [&](const Pair& p) {
           const auto objs = find_connected_objects(
               p.input, Connectivity::eight, {ExtractionKind::any_foreground, kBackground});
           if (objs.size() != 1) return false;
           const Grid src = rotate(crop_to_bbox(p.input, objs.front()), turns);
           if (src.height() != p.output.height() || src.width() != p.output.width()) return false;
           for (std::size_t i = 0; i < src.cells().size(); ++i) {
             const auto [it, fresh] =
                 mapping.emplace(src.cells()[i].value(), p.output.cells()[i].value());
             if (!fresh && it->second != p.output.cells()[i].value()) return false;
           }
           return true;
         });
       }}};
  return d;
}

inline GeneratorDefinition gravity() {
  using namespace detail;
  GeneratorDefinition d;
  d.id = "tgi.g4.gravity";
  d.summary = "colored cells fall toward one edge";
  d.taskvars = {one_of("direction", {Direction::down, Direction::up, Direction::left,
                                     Direction::right}),
                distinct_color("c0", {}), distinct_color("c1", {"c0"}),
                distinct_color("c2", {"c0", "c1"})};
  d.gridvars = {int_range("rows", 5, 12), int_range("cols", 5, 12),
                int_range("density_percent", 15, 40)};
  d.input_builder = [](RngStream& r, const Env& tv, const Env& gv) {
    const std::vector<Color> palette = {color_var(tv, "c0"), color_var(tv, "c1"),
                                        color_var(tv, "c2")};
    const double density = static_cast<double>(int_var(gv, "density_percent")) / 100.0;
    Grid g(static_cast<int>(int_var(gv, "rows")), static_cast<int>(int_var(gv, "cols")));
    for (int row = 0; row < g.height(); ++row) {
      for (int col = 0; col < g.width(); ++col) {
        if (r.bernoulli(density)) g.set(row, col, r.choice(palette));
      }
    }
    return g;
  };
  // Inputs must not already be settled.
  d.input_accept = [](const Grid& g, const Env& tv) {
    return dsl::detail::gravity(g, scalar_var<Direction>(tv, "direction")) != g;
  };
  d.transform_builder = [](const Env&) {
    using namespace dsl;
    return Program{prim("gravity", {input(), var("direction")})};
  };
  d.constraints = {EpisodeConstraint::no_test_only_colors()};
  d.input_template = {{"Cells colored {c0:color_name}, {c1:color_name} and {c2:color_name} are "
                       "scattered over a black grid."}};
  d.transform_template = {{"Let every colored cell fall toward the {direction:edge} edge.",
                           "A cell stops at the border or against another colored cell, so the "
                           "order of colors along each line is kept."}};
  d.declared_invariants = {
      {"line_multisets_preserved",
       [](const Episode& e, const Env& tv) {
         const auto dir = scalar_var<Direction>(tv, "direction");
         const bool columns = dir == Direction::up || dir == Direction::down;
         return every_pair(e, [&](const Pair& p) {
           return lines_of(p.input, columns) == lines_of(p.output, columns);
         });
       }},
      {"output_settled", [](const Episode& e, const Env& tv) {
         const auto dir = scalar_var<Direction>(tv, "direction");
         return every_pair(e, [&](const Pair& p) {
           return dsl::detail::gravity(p.output, dir) == p.output;
         });
       }}};
  return d;
}

inline GeneratorDefinition recolor_largest() {
  using namespace detail;
  GeneratorDefinition d;
  d.id = "tgi.g5.recolor_largest";
  d.summary = "recolor the strictly largest shape";
  d.taskvars = {distinct_color("target", {}), distinct_color("p0", {"target"}),
                distinct_color("p1", {"target", "p0"})};
  d.gridvars = {int_range("rows", 8, 15), int_range("cols", 8, 15),
                int_range("object_count", 2, 4)};
  d.input_builder = [](RngStream& r, const Env& tv, const Env& gv) {
    const std::vector<Color> palette = {color_var(tv, "p0"), color_var(tv, "p1")};
    GridObjects shapes;
    for (std::int64_t k = 0; k < int_var(gv, "object_count"); ++k) {
      shapes.push_back(synthesize_contiguous_object(r, Connectivity::four, {1, 8, 4, 4},
                                                    r.choice(palette)));
    }
    return place_non_overlapping(
        r, Grid(static_cast<int>(int_var(gv, "rows")), static_cast<int>(int_var(gv, "cols"))),
        shapes, 1);
  };
  d.input_accept = [](const Grid& g, const Env&) { return unique_largest(g); };
  d.transform_builder = [](const Env&) {
    using namespace dsl;
    return Program{let(
        "objs", prim("objects", {input(), lit(Connectivity::four), lit(ExtractionKind::same_color)}),
        prim("paint",
             {input(), prim("nth-object", {prim("largest", {var("objs")}), lit_int(0)}),
              var("target")}))};
  };
  d.constraints = {EpisodeConstraint::no_test_only_colors(),
                   EpisodeConstraint::custom("unique_largest_object", [](const Episode& e) {
                     return every_pair(e, [](const Pair& p) { return unique_largest(p.input); });
                   })};
  d.input_template = {{"The input grid shows a few {p0:color_name} and {p1:color_name} shapes "
                       "on a black background.",
                       "Exactly one shape has more cells than any other."}};
  d.transform_template = {{"Find the shape with the most cells.",
                           "Recolor that shape to {target:color_name} and leave the rest "
                           "unchanged."}};
  d.declared_invariants = {
      {"one_object_recolored", [](const Episode& e, const Env& tv) {
         const Color target = color_var(tv, "target");
         return every_pair(e, [&](const Pair& p) {
           int changed = 0;
           for (const auto& o : find_connected_objects(p.input, Connectivity::four)) {
             bool diff = false;
             for (const auto& c : o.cells()) {
               const Color now = p.output.at(c.row, c.col);
               if (now != c.color) {
                 if (now != target) return false;
                 diff = true;
               }
             }
             changed += diff;
           }
           return changed == 1;
         });
       }}};
  return d;
}

inline GeneratorDefinition symmetry() {
  using namespace detail;
  GeneratorDefinition d;
  d.id = "tgi.g6.symmetry";
  d.summary = "mirror a half-grid pattern into the empty half";
  d.taskvars = {one_of("axis", {Axis::horizontal, Axis::vertical}), distinct_color("c0", {}),
                distinct_color("c1", {"c0"})};
  d.gridvars = {int_range("rows", 6, 14), int_range("cols", 6, 14)};
  d.input_builder = [](RngStream& r, const Env& tv, const Env& gv) {
    const int rows = static_cast<int>(int_var(gv, "rows"));
    const int cols = static_cast<int>(int_var(gv, "cols"));
    const bool horizontal = scalar_var<Axis>(tv, "axis") == Axis::horizontal;
    const int half_rows = horizontal ? rows : rows / 2;
    const int half_cols = horizontal ? cols / 2 : cols;
    const int max_size = std::min(14, half_rows * half_cols);
    GridObject shape = synthesize_contiguous_object(
        r, Connectivity::eight, {3, max_size, std::min(half_rows, 5), std::min(half_cols, 5)},
        color_var(tv, "c0"));
    shape = scatter_colors(r, shape, {color_var(tv, "c0"), color_var(tv, "c1")});
    const Grid half = place_non_overlapping(r, Grid(half_rows, half_cols), {shape}, 0);
    Grid g(rows, cols);
    for (int row = 0; row < half_rows; ++row) {
      for (int col = 0; col < half_cols; ++col) g.set(row, col, half.at(row, col));
    }
    return g;
  };
  d.transform_builder = [](const Env&) {
    using namespace dsl;
    return Program{prim(
        "overlay",
        {input(), prim("nth-object", {prim("objects", {prim("reflect", {input(), var("axis")}),
                                                       lit(Connectivity::eight),
                                                       lit(ExtractionKind::any_foreground)}),
                                      lit_int(0)})})};
  };
  d.constraints = {EpisodeConstraint::no_test_only_colors()};
  d.input_template = {{"A {c0:color_name} and {c1:color_name} pattern is drawn in the "
                       "{axis:half} half of the grid.",
                       "The {axis:other_half} half is empty."}};
  d.transform_template = {{"Mirror the pattern into the {axis:other_half} half.",
                           "The original pattern stays, so the finished grid is symmetric."}};
  d.declared_invariants = {
      {"output_mirror_symmetric", [](const Episode& e, const Env& tv) {
         const Axis axis = scalar_var<Axis>(tv, "axis");
         return every_pair(e, [&](const Pair& p) { return reflect(p.output, axis) == p.output; });
       }}};
  return d;
}

inline std::vector<GeneratorDefinition> catalog() {
  return {stacked_segments(), size_dependent(), color_mapping(),
          gravity(),          recolor_largest(), symmetry()};
}

}  // namespace tgi::exemplars
