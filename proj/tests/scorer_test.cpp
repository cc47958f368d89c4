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

namespace tgi {
namespace {

LoadedSample sample(std::string id, std::string gen, int v, std::size_t tests = 1) {
  LoadedSample s{std::move(id), std::move(gen), {}, std::nullopt};
  const Grid in = Grid::from_rows({{v, 0}, {0, v}});
  s.episode.train.push_back({in, in});
  for (std::size_t i = 0; i < tests; ++i) {
    s.episode.test.push_back({in, Grid::from_rows({{v, v}, {0, int(i)}})});
  }
  return s;
}

Grid off_by_one(Grid g) {
  g.set(0, 0, Color((g.at(0, 0).value() + 1) % 10));
  return g;
}

PredictionFile exact(const std::vector<LoadedSample>& ds) {
  PredictionFile p;
  for (const auto& s : ds) {
    for (const auto& t : s.episode.test) p[s.id].push_back(t.output);
  }
  return p;
}

std::vector<LoadedSample> four_samples() {
  return {sample("a__0", "a", 1), sample("a__1", "a", 2), sample("b__0", "b", 3),
          sample("b__1", "b", 4)};
}

TEST(Score, HalfSolved) {
  const auto ds = four_samples();
  PredictionFile p = exact(ds);
  p["a__1"][0] = off_by_one(*p["a__1"][0]);
  p["b__1"][0] = off_by_one(*p["b__1"][0]);
  const auto r = score(ds, p);
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_DOUBLE_EQ(r.table.overall(), 0.5);
  EXPECT_EQ(r.table.per_generator.at("a").solved, 1u);
  EXPECT_EQ(r.table.per_generator.at("b").total, 2u);
  EXPECT_FALSE(r.table.solved.at("b__1"));
}

TEST(Score, AllTestPairsMustMatch) {
  const std::vector<LoadedSample> ds = {sample("m__0", "m", 5, 3)};
  PredictionFile p = exact(ds);
  EXPECT_TRUE(score(ds, p).table.solved.at("m__0"));
  p["m__0"][2] = off_by_one(*p["m__0"][2]);
  EXPECT_FALSE(score(ds, p).table.solved.at("m__0"));
}

TEST(Score, MatchesIndependentRecount) {
  std::vector<LoadedSample> ds;
  for (const auto& d : exemplars::catalog()) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto s = create_task(d, seed);
      ds.push_back({s.sample_id(), d.id, s.episode, s.taskvars});
    }
  }
  // Predict the identity: solved exactly when each test output equals its input.
  PredictionFile p;
  std::map<std::string, std::pair<int, int>> expect;
  int solved = 0;
  for (const auto& s : ds) {
    bool ok = true;
    for (const auto& t : s.episode.test) {
      p[s.id].push_back(t.input);
      ok = ok && t.input == t.output;
    }
    auto& [sv, tot] = expect[s.generator_id];
    sv += ok;
    ++tot;
    solved += ok;
  }
  const auto r = score(ds, p);
  for (const auto& [gen, st] : expect) {
    EXPECT_EQ(r.table.per_generator.at(gen).solved, std::size_t(st.first)) << gen;
    EXPECT_EQ(r.table.per_generator.at(gen).total, std::size_t(st.second)) << gen;
  }
  EXPECT_DOUBLE_EQ(r.table.overall(), double(solved) / ds.size());
}

TEST(Score, MissingPrediction) {
  const auto ds = four_samples();
  PredictionFile p = exact(ds);
  p.erase("b__0");
  const auto r = score(ds, p);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("b__0"), std::string::npos);
  EXPECT_DOUBLE_EQ(r.table.overall(), 0.75);
  EXPECT_THROW(score(ds, p, {true, false, std::nullopt}), NotFound);
}

TEST(Score, ArityMismatchThrows) {
  const auto ds = four_samples();
  PredictionFile p = exact(ds);
  p["a__0"].push_back(Grid(1, 1));
  EXPECT_THROW(score(ds, p), ArityMismatch);
  p["a__0"].clear();
  EXPECT_THROW(score(ds, p), ArityMismatch);
}

TEST(Score, UnknownSampleId) {
  const auto ds = four_samples();
  PredictionFile p = exact(ds);
  p["zzz__9"].push_back(Grid(1, 1));
  const auto r = score(ds, p);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_DOUBLE_EQ(r.table.overall(), 1.0);
  EXPECT_THROW(score(ds, p, {false, true, std::nullopt}), UnknownSampleId);
}

TEST(ParsePredictions, InvalidGridCountsAsWrong) {
  const std::vector<LoadedSample> ds = {sample("a__0", "a", 1), sample("a__1", "a", 2)};
  const auto p = parse_predictions(
      R"({"a__0": [[[1,1],[0,0]]], "a__1": [[[1,2],[3]]]})");
  ASSERT_EQ(p.at("a__1").size(), 1u);
  EXPECT_FALSE(p.at("a__1")[0].has_value());
  const auto r = score(ds, p);
  EXPECT_TRUE(r.table.solved.at("a__0"));
  EXPECT_FALSE(r.table.solved.at("a__1"));

  EXPECT_THROW(parse_predictions("[1]"), MalformedJson);
  EXPECT_THROW(parse_predictions("{\"a\": 3}"), MalformedJson);
  EXPECT_THROW(parse_predictions("{"), MalformedJson);
}

TEST(ScoreTable, OverallVersusGeneratorMean) {
  // Generator a: 3 of 3; generator b: 0 of 1.
  std::vector<LoadedSample> ds = {sample("a__0", "a", 1), sample("a__1", "a", 2),
                                  sample("a__2", "a", 3), sample("b__0", "b", 4)};
  PredictionFile p = exact(ds);
  p["b__0"][0] = off_by_one(*p["b__0"][0]);
  const auto t = score(ds, p).table;
  EXPECT_DOUBLE_EQ(t.overall(), 0.75);
  EXPECT_DOUBLE_EQ(t.generator_mean(), 0.5);
  const auto j = nlohmann::json::parse(render_overall_json(t));
  EXPECT_DOUBLE_EQ(j["overall_accuracy"].get<double>(), 0.75);
  EXPECT_DOUBLE_EQ(j["mean_generator_accuracy"].get<double>(), 0.5);
  EXPECT_EQ(render_scores_csv(t), "generator_id,solved,total,accuracy\na,3,3,1\nb,0,1,0\n");
}

TEST(Score, CellLimitExcludesLargeEpisodes) {
  std::vector<LoadedSample> ds = four_samples();
  LoadedSample big{"c__0", "c", {}, std::nullopt};
  const Grid g(10, 10);
  big.episode.train.push_back({g, g});
  big.episode.test.push_back({g, g});
  ds.push_back(big);
  EXPECT_EQ(episode_cells(big.episode), 400u);
  EXPECT_EQ(episode_cells(ds[0].episode), 16u);

  const PredictionFile p = exact(ds);
  ScoreOptions opt;
  opt.max_cells = 399;
  const auto r = score(ds, p, opt);
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_EQ(r.table.total(), 4u);
  EXPECT_EQ(r.table.excluded, std::vector<std::string>{"c__0"});
  EXPECT_FALSE(r.table.per_generator.contains("c"));
  EXPECT_EQ(nlohmann::json::parse(render_overall_json(r.table))["excluded_over_cell_limit"][0],
            "c__0");
  opt.max_cells = 400;
  EXPECT_EQ(score(ds, p, opt).table.total(), 5u);
}

ScoreTable table(std::map<std::string, std::pair<int, int>> per_gen) {
  ScoreTable t;
  for (const auto& [g, st] : per_gen) {
    t.per_generator[g] = {std::size_t(st.first), std::size_t(st.second)};
  }
  return t;
}

TEST(DifficultyMatrix, SingleTable) {
  const auto m = difficulty_matrix({{"ref", table({{"x", {1, 4}}, {"y", {3, 4}}, {"z", {2, 4}}})}},
                                   "ref");
  EXPECT_EQ(m.models, std::vector<std::string>{"ref"});
  EXPECT_EQ(m.generators, (std::vector<std::string>{"y", "z", "x"}));
  EXPECT_EQ(m.accuracy[0], (std::vector<double>{0.75, 0.5, 0.25}));
}

TEST(DifficultyMatrix, TiesAreStable) {
  const auto t = table({{"x", {1, 2}}, {"y", {1, 2}}});
  const auto m = difficulty_matrix({{"m1", t}, {"m2", t}, {"m3", t}}, "m2");
  EXPECT_EQ(m.models, (std::vector<std::string>{"m1", "m2", "m3"}));
  EXPECT_EQ(m.generators, (std::vector<std::string>{"x", "y"}));
}

TEST(DifficultyMatrix, OrderingProperties) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(0, 10);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<std::string, ScoreTable>> tables;
    for (int k = 0; k < 4; ++k) {
      std::map<std::string, std::pair<int, int>> per;
      for (const char* g : {"g1", "g2", "g3", "g4", "g5"}) per[g] = {d(rng), 10};
      tables.emplace_back("m" + std::to_string(k), table(per));
    }
    const auto m = difficulty_matrix(tables, "m0");
    const auto ref_row =
        std::find(m.models.begin(), m.models.end(), "m0") - m.models.begin();
    for (std::size_t c = 1; c < m.generators.size(); ++c) {
      EXPECT_GE(m.accuracy[ref_row][c - 1], m.accuracy[ref_row][c]);
    }
    auto mean = [](const std::vector<double>& r) {
      double s = 0;
      for (double v : r) s += v;
      return s / r.size();
    };
    for (std::size_t r = 1; r < m.models.size(); ++r) {
      EXPECT_GE(mean(m.accuracy[r - 1]), mean(m.accuracy[r]));
    }
  }
}

TEST(DifficultyMatrix, Errors) {
  const auto a = table({{"x", {1, 2}}});
  const auto b = table({{"y", {1, 2}}});
  EXPECT_THROW(difficulty_matrix({{"a", a}, {"b", b}}, "a"), GeneratorSetMismatch);
  EXPECT_THROW(difficulty_matrix({{"a", a}}, "nope"), NotFound);
}

}  // namespace
}  // namespace tgi
