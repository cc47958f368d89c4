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
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "tgi/grid.hpp"
#include "tgi/objects.hpp"
#include "tgi/rng.hpp"

namespace tgi {

inline constexpr std::size_t kEpisodeAttempts = 1000;
inline constexpr std::size_t kGridAttempts = 200;

template <typename T>
struct Retried {
  T value;
  std::size_t attempts;
};

// Draws candidates until one is accepted. sample() is called exactly once per
// attempt.
template <typename Sample, typename Accept>
auto retry(RngStream& rng, Sample&& sample, Accept&& accept, std::size_t max_attempts,
           const std::string& what = "retry")
    -> Retried<std::invoke_result_t<Sample&, RngStream&>> {
  if (max_attempts < 1) throw PreconditionViolation("max_attempts must be >= 1");
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    auto candidate = sample(rng);
    if (accept(candidate)) return {std::move(candidate), attempt};
  }
  throw BudgetExhausted(max_attempts, what);
}

struct ExtentConstraint {
  int min_size = 1;
  int max_size = 1;
  int max_bbox_height = 1;
  int max_bbox_width = 1;
};

// Random growth from a seed cell: each step adds a uniformly chosen frontier
// cell inside the max_bbox frame. The result is normalised so its bbox starts
// at (0, 0).
inline GridObject synthesize_contiguous_object(RngStream& rng, Connectivity conn,
                                               const ExtentConstraint& ext, Color c) {
  if (ext.min_size < 1 || ext.max_size < ext.min_size || ext.max_bbox_height < 1 ||
      ext.max_bbox_width < 1) {
    throw PreconditionViolation("unsatisfiable extent constraint");
  }
  const int frame = ext.max_bbox_height * ext.max_bbox_width;
  if (ext.min_size > frame) {
    throw BudgetExhausted(0, "object of size " + std::to_string(ext.min_size) +
                                 " cannot fit a " + std::to_string(ext.max_bbox_height) +
                                 "x" + std::to_string(ext.max_bbox_width) + " box");
  }
  const int target = rng.uniform(ext.min_size, std::min(ext.max_size, frame));
  const int h = ext.max_bbox_height;
  const int w = ext.max_bbox_width;
  std::vector<char> in(static_cast<std::size_t>(frame), 0);
  std::vector<std::pair<int, int>> cells;
  std::set<std::pair<int, int>> frontier;
  const int neighbours = conn == Connectivity::four ? 4 : 8;
  static constexpr int kDr[8] = {-1, 1, 0, 0, -1, -1, 1, 1};
  static constexpr int kDc[8] = {0, 0, -1, 1, -1, 1, -1, 1};

  auto add = [&](int r, int col) {
    in[static_cast<std::size_t>(r * w + col)] = 1;
    cells.emplace_back(r, col);
    frontier.erase({r, col});
    for (int k = 0; k < neighbours; ++k) {
      const int nr = r + kDr[k];
      const int nc = col + kDc[k];
      if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
      if (!in[static_cast<std::size_t>(nr * w + nc)]) frontier.emplace(nr, nc);
    }
  };

  add(rng.uniform(0, h - 1), rng.uniform(0, w - 1));
  while (static_cast<int>(cells.size()) < target) {
    if (frontier.empty()) {
      throw BudgetExhausted(cells.size(), "object growth ran out of frontier");
    }
    auto it = frontier.begin();
    std::advance(it, rng.uniform(0, static_cast<int>(frontier.size()) - 1));
    add(it->first, it->second);
  }

  int top = h, left = w;
  for (const auto& [r, col] : cells) {
    top = std::min(top, r);
    left = std::min(left, col);
  }
  std::vector<Cell> out;
  out.reserve(cells.size());
  for (const auto& [r, col] : cells) out.push_back({r - top, col - left, c});
  return GridObject(std::move(out));
}

struct Placement {
  Grid grid;
  GridObjects placed;  // in input order, at their final coordinates
};

// Places every object (translated by its bbox) onto background cells of the
// canvas. With min_gap > 0, cells of different objects (and pre-existing
// foreground) keep a Chebyshev distance of at least min_gap + 1.
inline Placement place_objects(RngStream& rng, const Grid& canvas,
                               const GridObjects& objects, int min_gap,
                               std::size_t max_attempts = kGridAttempts) {
  if (min_gap < 0) throw PreconditionViolation("min_gap must be >= 0");
  int free_cells = 0;
  for (Color c : canvas.cells()) free_cells += c == kBackground;
  int needed = 0;
  for (const auto& o : objects) {
    needed += o.size();
    if (o.bbox().height() > canvas.height() || o.bbox().width() > canvas.width()) {
      throw BudgetExhausted(0, "object larger than canvas");
    }
  }
  if (needed > free_cells) {
    throw BudgetExhausted(0, std::to_string(needed) + " object cells on " +
                                 std::to_string(free_cells) + " free cells");
  }

  auto attempt = [&](RngStream& r) -> std::optional<Placement> {
    Grid g = canvas;
    // blocked: cells a new object may not occupy.
    std::vector<char> blocked(static_cast<std::size_t>(g.area()), 0);
    auto block_around = [&](int row, int col) {
      for (int dr = -min_gap; dr <= min_gap; ++dr) {
        for (int dc = -min_gap; dc <= min_gap; ++dc) {
          if (g.contains(row + dr, col + dc)) {
            blocked[static_cast<std::size_t>((row + dr) * g.width() + col + dc)] = 1;
          }
        }
      }
    };
    for (int row = 0; row < g.height(); ++row) {
      for (int col = 0; col < g.width(); ++col) {
        if (g.at(row, col) != kBackground) block_around(row, col);
      }
    }
    GridObjects placed;
    for (const auto& o : objects) {
      const auto& b = o.bbox();
      bool ok = false;
      for (int tries = 0; tries < 20 && !ok; ++tries) {
        const int top = r.uniform(0, g.height() - b.height());
        const int left = r.uniform(0, g.width() - b.width());
        const int dr = top - b.top;
        const int dc = left - b.left;
        ok = std::all_of(o.cells().begin(), o.cells().end(), [&](const Cell& c) {
          return !blocked[static_cast<std::size_t>((c.row + dr) * g.width() + c.col + dc)];
        });
        if (ok) {
          GridObject moved = translate(o, dr, dc);
          for (const auto& c : moved.cells()) {
            g.set(c.row, c.col, c.color);
          }
          for (const auto& c : moved.cells()) block_around(c.row, c.col);
          placed.push_back(std::move(moved));
        }
      }
      if (!ok) return std::nullopt;
    }
    return Placement{std::move(g), std::move(placed)};
  };

  auto result = retry(rng, attempt, [](const auto& p) { return p.has_value(); },
                      max_attempts, "place_non_overlapping");
  return std::move(*result.value);
}

inline Grid place_non_overlapping(RngStream& rng, const Grid& canvas,
                                  const GridObjects& objects, int min_gap) {
  return place_objects(rng, canvas, objects, min_gap).grid;
}

// k distinct colors, none in exclude, in random order.
inline std::vector<Color> random_subset_colors(RngStream& rng, int k,
                                               const std::vector<Color>& exclude = {}) {
  std::vector<Color> pool;
  for (int v = 0; v < kNumColors; ++v) {
    if (std::find(exclude.begin(), exclude.end(), Color(v)) == exclude.end()) {
      pool.emplace_back(v);
    }
  }
  if (k < 0 || k > static_cast<int>(pool.size())) {
    throw InsufficientPalette("need " + std::to_string(k) + " colors, " +
                              std::to_string(pool.size()) + " available");
  }
  rng.shuffle(pool);
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

}  // namespace tgi
