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

#include "test_support.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace tgi {
namespace {

LoadedSample loaded(const TaskSample& s) {
  return {s.sample_id(), s.provenance.generator_id, s.episode, s.taskvars};
}

LoadedSample constant_sample(std::string id, int h, int w, std::size_t pairs) {
  LoadedSample s{std::move(id), "gen.const", {}, std::nullopt};
  const Grid g(h, w);
  for (std::size_t i = 0; i < pairs; ++i) s.episode.train.push_back({g, g});
  s.episode.test.push_back({g, g});
  return s;
}

std::vector<LoadedSample> exemplar_dataset(std::uint64_t per_generator) {
  std::vector<LoadedSample> ds;
  for (const auto& d : exemplars::catalog()) {
    for (std::uint64_t seed = 0; seed < per_generator; ++seed) {
      ds.push_back(loaded(create_task(d, seed)));
    }
  }
  return ds;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(SizeHeatmap, SingleShapeLandsInOneCell) {
  const std::vector<LoadedSample> ds = {constant_sample("a", 7, 9, 3),
                                        constant_sample("b", 7, 9, 2)};
  const SizeHeatmap h = size_heatmap(ds, GridRole::inputs);
  EXPECT_EQ(h.at(7, 9), 7u);
  EXPECT_EQ(h.total(), 7u);
  EXPECT_EQ(h.out_of_window, 0u);
  EXPECT_EQ(h.at(9, 7), 0u);
}

TEST(SizeHeatmap, OutsideWindowIsCountedSeparately) {
  const std::vector<LoadedSample> ds = {constant_sample("a", 3, 3, 1),
                                        constant_sample("b", 5, 30, 1)};
  const SizeHeatmap h = size_heatmap(ds, GridRole::outputs);
  EXPECT_EQ(h.out_of_window, 2u);
  EXPECT_EQ(h.in_window(), 2u);
  EXPECT_EQ(h.at(5, 30), 2u);
}

TEST(SizeHeatmap, MassMatchesIndependentCount) {
  const auto ds = exemplar_dataset(20);
  for (GridRole role : {GridRole::inputs, GridRole::outputs}) {
    std::size_t grids = 0;
    std::map<std::pair<int, int>, std::size_t> dims;
    for (const auto& s : ds) {
      for (const auto* split : {&s.episode.train, &s.episode.test}) {
        for (const Pair& p : *split) {
          const Grid& g = role == GridRole::inputs ? p.input : p.output;
          ++grids;
          ++dims[{g.height(), g.width()}];
        }
      }
    }
    const SizeHeatmap h = size_heatmap(ds, role);
    EXPECT_EQ(h.total(), grids);
    for (const auto& [hw, n] : dims) {
      const auto [r, c] = hw;
      if (r >= 5 && c >= 5 && r <= 30 && c <= 30) {
        EXPECT_EQ(h.at(r, c), n);
      }
    }
  }
}

TEST(SizeHeatmap, CsvShape) {
  const auto lines =
      lines_of(render_heatmap_csv(size_heatmap({constant_sample("a", 6, 8, 1)}, GridRole::inputs)));
  ASSERT_EQ(lines.size(), 27u);
  for (const auto& l : lines) EXPECT_EQ(std::count(l.begin(), l.end(), ','), 26) << l;
  EXPECT_EQ(lines[0].rfind("rows\\cols,5,6,", 0), 0u);
  std::string row6 = "6";
  for (int c = 5; c <= 30; ++c) row6 += c == 8 ? ",2" : ",0";
  EXPECT_EQ(lines[2], row6);
}

TEST(GridFeatures, Examples) {
  Grid g(6, 6);
  for (int r = 2; r < 4; ++r) {
    for (int c = 2; c < 4; ++c) g.set(r, c, Color(3));
  }
  const auto f = grid_features(g);
  ASSERT_TRUE(f);
  EXPECT_EQ(f->area, 4);
  EXPECT_DOUBLE_EQ(f->center_row, 2.5);
  EXPECT_DOUBLE_EQ(f->center_col, 2.5);
  EXPECT_EQ(f->dominant, Color(3));

  EXPECT_FALSE(grid_features(Grid(5, 5)));
}

TEST(GridFeatures, SingleObjectAgreesWithObjectFeatures) {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Grid g = testing::random_grid(rng, 10, 10, 9, 0.4);
    const auto objs = find_connected_objects(g, Connectivity::eight, {ExtractionKind::any_foreground, kBackground});
    if (objs.size() != 1) continue;
    const auto a = grid_features(g);
    const auto b = object_features(objs[0]);
    ASSERT_TRUE(a);
    EXPECT_EQ(a->area, b.area);
    EXPECT_DOUBLE_EQ(a->center_row, b.center_row);
    EXPECT_DOUBLE_EQ(a->center_col, b.center_col);
    EXPECT_EQ(a->dominant, b.dominant);
  }
}

TEST(Features, CsvRowsAndNa) {
  const std::vector<LoadedSample> ds = {constant_sample("z", 5, 5, 2)};
  const auto rows = extract_features(ds);
  ASSERT_EQ(rows.size(), 6u);
  const auto lines = lines_of(render_features_csv(rows));
  EXPECT_EQ(lines[0], "sample_id,role,pair_index,center_row,center_col,area,dominant");
  EXPECT_EQ(lines[1], "z,train_input,0,NA,NA,0,NA");
  EXPECT_EQ(lines[6], "z,test_output,0,NA,NA,0,NA");
}

TEST(Features, IndependentOfInputOrder) {
  auto ds = exemplar_dataset(5);
  const auto baseline = render_features_csv(extract_features(ds));
  std::mt19937 rng(3);
  for (int i = 0; i < 5; ++i) {
    std::shuffle(ds.begin(), ds.end(), rng);
    EXPECT_EQ(render_features_csv(extract_features(ds)), baseline);
  }
}

TEST(Diversity, IdenticalEpisodesCollapse) {
  std::vector<LoadedSample> ds;
  for (int k = 0; k < 4; ++k) ds.push_back(constant_sample("s" + std::to_string(k), 6, 6, 2));
  const auto rep = diversity(ds);
  const auto& g = rep.generators.at("gen.const");
  EXPECT_EQ(g.samples, 4u);
  EXPECT_DOUBLE_EQ(g.unique_episodes(), 0.25);
  EXPECT_DOUBLE_EQ(g.unique_inputs(), 1.0 / 12.0);
}

TEST(Diversity, SingleSampleIsFullyUnique) {
  const auto rep = diversity({loaded(create_task(exemplars::gravity(), 1))});
  const auto& g = rep.generators.begin()->second;
  EXPECT_DOUBLE_EQ(g.unique_episodes(), 1.0);
  EXPECT_DOUBLE_EQ(g.unique_inputs(), 1.0);
}

TEST(Diversity, ExemplarsDoNotRepeat) {
  const auto rep = diversity(exemplar_dataset(50));
  EXPECT_EQ(rep.generators.size(), exemplars::catalog().size());
  for (const auto& [id, g] : rep.generators) {
    EXPECT_EQ(g.distinct_episodes, 50u) << id;
    EXPECT_FALSE(g.taskvar_values.empty()) << id;
  }
}

TEST(Diversity, JsonNamesMeasureAndIsOrderIndependent) {
  auto ds = exemplar_dataset(4);
  const std::string text = render_diversity_json(diversity(ds));
  std::reverse(ds.begin(), ds.end());
  EXPECT_EQ(render_diversity_json(diversity(ds)), text);
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["uniqueness_measure"], "exact-serialization");
  EXPECT_EQ(j["generators"].size(), exemplars::catalog().size());
}

}  // namespace
}  // namespace tgi
