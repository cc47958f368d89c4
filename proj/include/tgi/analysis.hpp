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
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tgi/arc_json.hpp"
#include "tgi/dataset.hpp"
#include "tgi/objects.hpp"

// Distributional summaries over a loaded dataset.
namespace tgi {

enum class GridRole { inputs, outputs };

struct SizeHeatmap {
  static constexpr int kMinDim = 5;
  static constexpr int kMaxDim = 30;
  static constexpr int kSpan = kMaxDim - kMinDim + 1;

  std::array<std::array<std::size_t, kSpan>, kSpan> counts{};  // [rows - 5][cols - 5]
  std::size_t out_of_window = 0;

  std::size_t at(int rows, int cols) const { return counts[rows - kMinDim][cols - kMinDim]; }
  std::size_t in_window() const {
    std::size_t n = 0;
    for (const auto& r : counts) {
      for (std::size_t c : r) n += c;
    }
    return n;
  }
  std::size_t total() const { return in_window() + out_of_window; }

  void add(const Grid& g) {
    const int h = g.height(), w = g.width();
    if (h < kMinDim || w < kMinDim || h > kMaxDim || w > kMaxDim) {
      ++out_of_window;
    } else {
      ++counts[h - kMinDim][w - kMinDim];
    }
  }
};

inline SizeHeatmap size_heatmap(const std::vector<LoadedSample>& ds, GridRole role) {
  SizeHeatmap h;
  for (const auto& s : ds) {
    s.episode.for_each_pair([&](const Pair& p, bool, std::size_t) {
      h.add(role == GridRole::inputs ? p.input : p.output);
    });
  }
  return h;
}

// Row label column plus one column per width; first row holds the widths.
inline std::string render_heatmap_csv(const SizeHeatmap& h) {
  std::ostringstream out;
  out << "rows\\cols";
  for (int c = SizeHeatmap::kMinDim; c <= SizeHeatmap::kMaxDim; ++c) out << ',' << c;
  out << '\n';
  for (int r = SizeHeatmap::kMinDim; r <= SizeHeatmap::kMaxDim; ++r) {
    out << r;
    for (int c = SizeHeatmap::kMinDim; c <= SizeHeatmap::kMaxDim; ++c) out << ',' << h.at(r, c);
    out << '\n';
  }
  return out.str();
}

struct GridFeatureRow {
  std::string sample_id;
  std::string role;  // train_input, train_output, test_input, test_output
  std::size_t pair_index = 0;
  std::optional<ObjectFeatures> features;  // nullopt for all-background grids
};

// Features of the union of all foreground cells.
inline std::optional<ObjectFeatures> grid_features(const Grid& g) {
  std::vector<Cell> cells;
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      if (g.at(r, c) != kBackground) cells.push_back({r, c, g.at(r, c)});
    }
  }
  if (cells.empty()) return std::nullopt;
  return object_features(GridObject(std::move(cells)));
}

inline std::vector<GridFeatureRow> extract_features(const std::vector<LoadedSample>& ds) {
  std::vector<GridFeatureRow> rows;
  for (const auto& s : ds) {
    s.episode.for_each_pair([&](const Pair& p, bool is_test, std::size_t i) {
      const std::string split = is_test ? "test" : "train";
      rows.push_back({s.id, split + "_input", i, grid_features(p.input)});
      rows.push_back({s.id, split + "_output", i, grid_features(p.output)});
    });
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.sample_id < b.sample_id;
  });
  return rows;
}

inline std::string render_features_csv(const std::vector<GridFeatureRow>& rows) {
  std::ostringstream out;
  out << "sample_id,role,pair_index,center_row,center_col,area,dominant\n";
  for (const auto& r : rows) {
    out << r.sample_id << ',' << r.role << ',' << r.pair_index << ',';
    if (r.features) {
      out << r.features->center_row << ',' << r.features->center_col << ',' << r.features->area
          << ',' << r.features->dominant.value() << '\n';
    } else {
      out << "NA,NA,0,NA\n";
    }
  }
  return out.str();
}

struct GeneratorDiversity {
  std::size_t samples = 0;
  std::size_t inputs = 0;
  std::size_t distinct_inputs = 0;
  std::size_t distinct_episodes = 0;
  std::map<std::string, std::set<std::string>> taskvar_values;

  double unique_inputs() const { return inputs ? double(distinct_inputs) / inputs : 1.0; }
  double unique_episodes() const {
    return samples ? double(distinct_episodes) / samples : 1.0;
  }
};

struct DiversityReport {
  static constexpr std::string_view kMeasure = "exact-serialization";
  std::map<std::string, GeneratorDiversity> generators;
};

inline DiversityReport diversity(const std::vector<LoadedSample>& ds) {
  DiversityReport rep;
  std::map<std::string, std::pair<std::set<std::string>, std::set<std::string>>> seen;
  for (const auto& s : ds) {
    auto& g = rep.generators[s.generator_id];
    auto& [inputs, episodes] = seen[s.generator_id];
    ++g.samples;
    episodes.insert(serialize_arc_json(s.episode));
    s.episode.for_each_pair([&](const Pair& p, bool, std::size_t) {
      ++g.inputs;
      inputs.insert(serialize_grid(p.input));
    });
    if (s.taskvars) {
      for (const auto& [name, v] : *s.taskvars) g.taskvar_values[name].insert(dsl::render_scalar(v));
    }
  }
  for (auto& [id, g] : rep.generators) {
    g.distinct_inputs = seen[id].first.size();
    g.distinct_episodes = seen[id].second.size();
  }
  return rep;
}

inline std::string render_diversity_json(const DiversityReport& rep) {
  nlohmann::ordered_json j;
  j["uniqueness_measure"] = DiversityReport::kMeasure;
  auto& gens = j["generators"] = nlohmann::ordered_json::object();
  for (const auto& [id, g] : rep.generators) {
    nlohmann::ordered_json jg;
    jg["samples"] = g.samples;
    jg["unique_inputs"] = g.unique_inputs();
    jg["unique_episodes"] = g.unique_episodes();
    auto& cov = jg["taskvar_coverage"] = nlohmann::ordered_json::object();
    for (const auto& [name, values] : g.taskvar_values) {
      cov[name] = {{"distinct", values.size()}, {"values", values}};
    }
    gens[id] = std::move(jg);
  }
  return j.dump(2) + "\n";
}

}  // namespace tgi
