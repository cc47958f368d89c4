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

using testing::random_grid;

TEST(Grid, EqualityExamples) {
  EXPECT_TRUE(grid_equal(Grid::from_rows({{1}}), Grid::from_rows({{1}})));
  EXPECT_FALSE(grid_equal(Grid::from_rows({{1}}), Grid::from_rows({{2}})));
  EXPECT_FALSE(grid_equal(Grid::from_rows({{1, 2, 3}, {4, 5, 6}}),
                          Grid::from_rows({{1, 2}, {3, 4}, {5, 6}})));
}

TEST(Grid, BoundsAreEnforced) {
  EXPECT_THROW(Grid(0, 3), GridBoundsViolation);
  EXPECT_THROW(Grid(3, 31), GridBoundsViolation);
  EXPECT_NO_THROW(Grid(30, 30));
  EXPECT_THROW(Color(10), GridBoundsViolation);
  EXPECT_THROW(Color(-1), GridBoundsViolation);
  EXPECT_THROW(Grid::from_rows({{1, 2}, {3}}), GridBoundsViolation);
  Grid g(2, 2);
  EXPECT_THROW(g.at(2, 0), OutOfBounds);
  EXPECT_THROW(g.set(0, -1, Color(1)), OutOfBounds);
}

TEST(Grid, EqualityIsAnEquivalence) {
  std::mt19937 gen(11);
  std::vector<Grid> pool;
  for (int i = 0; i < 200; ++i) pool.push_back(random_grid(gen, 3, 3, 2, 0.5));
  for (const auto& a : pool) {
    EXPECT_TRUE(grid_equal(a, a));
    for (const auto& b : pool) {
      EXPECT_EQ(grid_equal(a, b), grid_equal(b, a));
      if (!grid_equal(a, b)) continue;
      for (const auto& c : pool) {
        if (grid_equal(b, c)) {
          EXPECT_TRUE(grid_equal(a, c));
        }
      }
    }
  }
}

TEST(Grid, ColorNames) {
  const std::vector<std::string> expected = {"black", "blue",    "red",    "green", "yellow",
                                             "grey",  "magenta", "orange", "cyan",  "maroon"};
  for (int v = 0; v < 10; ++v) EXPECT_EQ(color_name(Color(v)), expected[v]);
}

TEST(ColorHistogram, Examples) {
  const auto h = color_histogram(Grid::from_rows({{0, 0}, {1, 0}}));
  EXPECT_EQ(h, (std::map<Color, int>{{Color(0), 3}, {Color(1), 1}}));
  EXPECT_EQ(color_histogram(Grid(5, 5, Color(3))), (std::map<Color, int>{{Color(3), 25}}));
}

TEST(ColorHistogram, SumsToAreaOnRandomGrids) {
  std::mt19937 gen(3);
  for (int i = 0; i < 1000; ++i) {
    const Grid g = random_grid(gen, 30, 30);
    int sum = 0;
    for (const auto& [_, n] : color_histogram(g)) sum += n;
    ASSERT_EQ(sum, g.height() * g.width());
  }
}

constexpr std::string_view kMinimal =
    R"({"train":[{"input":[[0]],"output":[[0]]}],"test":[{"input":[[0]],"output":[[0]]}]})";

TEST(ArcJson, MinimalDocument) {
  const Episode e = parse_arc_json(kMinimal);
  ASSERT_EQ(e.train.size(), 1u);
  ASSERT_EQ(e.test.size(), 1u);
  EXPECT_EQ(e.train[0].input, Grid::from_rows({{0}}));
  EXPECT_EQ(serialize_arc_json(e), kMinimal);
}

TEST(ArcJson, Errors) {
  EXPECT_THROW(parse_arc_json("{"), MalformedJson);
  EXPECT_THROW(parse_arc_json("[]"), MalformedJson);
  EXPECT_THROW(parse_arc_json(R"({"train":[{"input":[[10]],"output":[[0]]}],)"
                              R"("test":[{"input":[[0]],"output":[[0]]}]})"),
               GridBoundsViolation);
  EXPECT_THROW(parse_arc_json(R"({"train":[],"test":[{"input":[[0]],"output":[[0]]}]})"),
               EmptySplit);
  EXPECT_THROW(parse_arc_json(R"({"train":[{"input":[[0]],"output":[[0]]}],"test":[]})"),
               EmptySplit);
  std::string row31 = "[0";
  for (int i = 0; i < 30; ++i) row31 += ",0";
  row31 += "]";
  EXPECT_THROW(parse_arc_json(R"({"train":[{"input":[)" + row31 +
                              R"(],"output":[[0]]}],"test":[{"input":[[0]],"output":[[0]]}]})"),
               GridBoundsViolation);
  EXPECT_THROW(parse_arc_json(R"({"train":[{"input":[[1,2],[3]],"output":[[0]]}],)"
                              R"("test":[{"input":[[0]],"output":[[0]]}]})"),
               GridBoundsViolation);
}

// Hand-written (document, canonical form) fixtures: whitespace, key order,
// split order and extra keys all normalise away.
struct Fixture {
  std::string_view raw;
  std::string_view canonical;
};

constexpr Fixture kFixtures[] = {
    {R"({"train":[{"input":[[0]],"output":[[0]]}],"test":[{"input":[[0]],"output":[[0]]}]})",
     R"({"train":[{"input":[[0]],"output":[[0]]}],"test":[{"input":[[0]],"output":[[0]]}]})"},
    {R"({ "train" : [ { "input" : [ [ 0 ] ] , "output" : [ [ 0 ] ] } ] , "test" : [ { "input" : [ [ 0 ] ] , "output" : [ [ 0 ] ] } ] })",
     R"({"train":[{"input":[[0]],"output":[[0]]}],"test":[{"input":[[0]],"output":[[0]]}]})"},
    {R"({"test":[{"input":[[1]],"output":[[2]]}],"train":[{"input":[[3]],"output":[[4]]}]})",
     R"({"train":[{"input":[[3]],"output":[[4]]}],"test":[{"input":[[1]],"output":[[2]]}]})"},
    {R"({"train":[{"output":[[5]],"input":[[6]]}],"test":[{"output":[[7]],"input":[[8]]}]})",
     R"({"train":[{"input":[[6]],"output":[[5]]}],"test":[{"input":[[8]],"output":[[7]]}]})"},
    {"{\n  \"train\": [\n    {\"input\": [[1, 2], [3, 4]], \"output\": [[4, 3], [2, 1]]}\n  ],\n  \"test\": [\n    {\"input\": [[0, 1]], \"output\": [[1, 0]]}\n  ]\n}\n",
     R"({"train":[{"input":[[1,2],[3,4]],"output":[[4,3],[2,1]]}],"test":[{"input":[[0,1]],"output":[[1,0]]}]})"},
    {R"({"train":[{"input":[[1,1,1]],"output":[[1],[1],[1]]},{"input":[[2,2]],"output":[[2],[2]]}],"test":[{"input":[[3]],"output":[[3]]}]})",
     R"({"train":[{"input":[[1,1,1]],"output":[[1],[1],[1]]},{"input":[[2,2]],"output":[[2],[2]]}],"test":[{"input":[[3]],"output":[[3]]}]})"},
    {"{\"train\":[{\"input\":[[9]],\"output\":[[9]]}],\t\"test\":[{\"input\":[[9]],\"output\":[[9]]}]}",
     R"({"train":[{"input":[[9]],"output":[[9]]}],"test":[{"input":[[9]],"output":[[9]]}]})"},
    {R"({"name":"x","train":[{"input":[[0]],"output":[[1]]}],"test":[{"input":[[1]],"output":[[0]]}]})",
     R"({"train":[{"input":[[0]],"output":[[1]]}],"test":[{"input":[[1]],"output":[[0]]}]})"},
    {R"({"train":[{"input":[[0,0],[0,0]],"output":[[5,5],[5,5]],"note":1}],"test":[{"input":[[0]],"output":[[5]]}]})",
     R"({"train":[{"input":[[0,0],[0,0]],"output":[[5,5],[5,5]]}],"test":[{"input":[[0]],"output":[[5]]}]})"},
    {"{\"train\":[{\"input\":[[1,2,3],\n[4,5,6]],\"output\":[[1,4],[2,5],[3,6]]}],\"test\":[{\"input\":[[7,8]],\"output\":[[7],[8]]}]}",
     R"({"train":[{"input":[[1,2,3],[4,5,6]],"output":[[1,4],[2,5],[3,6]]}],"test":[{"input":[[7,8]],"output":[[7],[8]]}]})"},
    {R"({"train":[{"input":[[0]],"output":[[0]]},{"input":[[1]],"output":[[1]]},{"input":[[2]],"output":[[2]]}],"test":[{"input":[[3]],"output":[[3]]},{"input":[[4]],"output":[[4]]}]})",
     R"({"train":[{"input":[[0]],"output":[[0]]},{"input":[[1]],"output":[[1]]},{"input":[[2]],"output":[[2]]}],"test":[{"input":[[3]],"output":[[3]]},{"input":[[4]],"output":[[4]]}]})"},
    {"  {\"test\" :[{\"output\":[[0,0]],\"input\":[[1,1]]}] ,\"train\":[{\"output\":[[2,2]],\"input\":[[3,3]]}]}  ",
     R"({"train":[{"input":[[3,3]],"output":[[2,2]]}],"test":[{"input":[[1,1]],"output":[[0,0]]}]})"},
    {R"({"train":[{"input":[[1,0,1],[0,1,0],[1,0,1]],"output":[[0]]}],"test":[{"input":[[0,1,0]],"output":[[1]]}]})",
     R"({"train":[{"input":[[1,0,1],[0,1,0],[1,0,1]],"output":[[0]]}],"test":[{"input":[[0,1,0]],"output":[[1]]}]})"},
    {"{\r\n\"train\":[{\"input\":[[8]],\"output\":[[8,8]]}],\r\n\"test\":[{\"input\":[[8,8]],\"output\":[[8,8,8,8]]}]\r\n}",
     R"({"train":[{"input":[[8]],"output":[[8,8]]}],"test":[{"input":[[8,8]],"output":[[8,8,8,8]]}]})"},
    {R"({"train":[{"input":[[4],[4],[4],[4]],"output":[[4,4,4,4]]}],"test":[{"input":[[6],[6]],"output":[[6,6]]}],"meta":{"k":[1,2]}})",
     R"({"train":[{"input":[[4],[4],[4],[4]],"output":[[4,4,4,4]]}],"test":[{"input":[[6],[6]],"output":[[6,6]]}]})"},
    {R"({"train":[{"input":[[0,1,2,3,4,5,6,7,8,9]],"output":[[9,8,7,6,5,4,3,2,1,0]]}],"test":[{"input":[[5]],"output":[[5]]}]})",
     R"({"train":[{"input":[[0,1,2,3,4,5,6,7,8,9]],"output":[[9,8,7,6,5,4,3,2,1,0]]}],"test":[{"input":[[5]],"output":[[5]]}]})"},
    {"{\"train\" : [{\"input\" : [[2, 2], [2, 2]], \"output\" : [[3, 3], [3, 3]]}, {\"input\" : [[2]], \"output\" : [[3]]}], \"test\" : [{\"input\" : [[2, 2, 2]], \"output\" : [[3, 3, 3]]}]}",
     R"({"train":[{"input":[[2,2],[2,2]],"output":[[3,3],[3,3]]},{"input":[[2]],"output":[[3]]}],"test":[{"input":[[2,2,2]],"output":[[3,3,3]]}]})"},
    {R"({"train":[{"input":[[7,0],[0,7]],"output":[[0,7],[7,0]]}],"test":[{"output":[[7,7],[0,0]],"input":[[0,0],[7,7]]}]})",
     R"({"train":[{"input":[[7,0],[0,7]],"output":[[0,7],[7,0]]}],"test":[{"input":[[0,0],[7,7]],"output":[[7,7],[0,0]]}]})"},
    {"{\"train\":[{\"input\":[[1]],\"output\":[[2]]},\n{\"input\":[[3]],\"output\":[[4]]},\n{\"input\":[[5]],\"output\":[[6]]},\n{\"input\":[[7]],\"output\":[[8]]}],\"test\":[{\"input\":[[9]],\"output\":[[0]]}]}",
     R"({"train":[{"input":[[1]],"output":[[2]]},{"input":[[3]],"output":[[4]]},{"input":[[5]],"output":[[6]]},{"input":[[7]],"output":[[8]]}],"test":[{"input":[[9]],"output":[[0]]}]})"},
    {R"({"train":[{"input":[[3,3,3],[3,0,3],[3,3,3]],"output":[[0,0,0],[0,3,0],[0,0,0]]}],"test":[{"input":[[1,1],[1,1]],"output":[[0,0],[0,0]]}]})",
     R"({"train":[{"input":[[3,3,3],[3,0,3],[3,3,3]],"output":[[0,0,0],[0,3,0],[0,0,0]]}],"test":[{"input":[[1,1],[1,1]],"output":[[0,0],[0,0]]}]})"},
};

TEST(ArcJson, CanonicalizesHandBuiltFixtures) {
  static_assert(std::size(kFixtures) == 20);
  for (const auto& f : kFixtures) {
    EXPECT_EQ(serialize_arc_json(parse_arc_json(f.raw)), f.canonical) << f.raw;
    EXPECT_EQ(serialize_arc_json(parse_arc_json(f.canonical)), f.canonical);
  }
}

TEST(ArcJson, RoundTripsRandomEpisodes) {
  std::mt19937 gen(99);
  for (int i = 0; i < 300; ++i) {
    Episode e;
    const int n_train = 1 + static_cast<int>(gen() % 5);
    const int n_test = 1 + static_cast<int>(gen() % 2);
    for (int k = 0; k < n_train; ++k) e.train.push_back({random_grid(gen, 30, 30), random_grid(gen, 30, 30)});
    for (int k = 0; k < n_test; ++k) e.test.push_back({random_grid(gen, 30, 30), random_grid(gen, 30, 30)});
    const std::string text = serialize_arc_json(e);
    ASSERT_EQ(parse_arc_json(text), e);
    ASSERT_EQ(serialize_arc_json(parse_arc_json(text)), text);
    ASSERT_EQ(text.find_first_of(" \n\t"), std::string::npos);
  }
}

}  // namespace
}  // namespace tgi
