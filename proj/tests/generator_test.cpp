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

using dsl::Env;
using dsl::Scalar;

// A 3x3 family whose rule is the identity; inputs hold one random cell.
GeneratorDefinition identity_family(std::set<Shortcut> intended) {
  GeneratorDefinition d;
  d.id = "test.identity";
  d.summary = "copy the input";
  d.input_builder = [](RngStream& r, const Env&, const Env&) {
    Grid g(3, 3);
    g.set(r.uniform(0, 2), r.uniform(0, 2), Color(r.uniform(1, 9)));
    return g;
  };
  d.transform_builder = [](const Env&) { return dsl::Program{dsl::input()}; };
  d.train_count = {3, 3};
  d.intended_shortcuts = std::move(intended);
  d.input_template = {{"One colored cell."}};
  d.transform_template = {{"Copy the grid."}};
  return d;
}

// Rotation by a taskvar amount with a color taskvar used only in reasoning.
GeneratorDefinition rotate_family() {
  GeneratorDefinition d;
  d.id = "test.rotate";
  d.taskvars = {{"turns", [](RngStream& r, const SampleContext&) -> Scalar {
                   return std::int64_t{r.uniform(1, 3)};
                 }},
                {"c", [](RngStream& r, const SampleContext&) -> Scalar {
                   return Color(r.uniform(1, 9));
                 }}};
  d.gridvars = {{"h", [](RngStream& r, const SampleContext&) -> Scalar {
                   return std::int64_t{r.uniform(2, 6)};
                 }}};
  d.input_builder = [](RngStream& r, const Env& tv, const Env& gv) {
    const int h = static_cast<int>(std::get<std::int64_t>(gv.at("h")));
    Grid g(h, h + 1);
    g.set(0, r.uniform(0, h), std::get<Color>(tv.at("c")));
    g.set(h - 1, 0, Color(5));
    return g;
  };
  d.transform_builder = [](const Env&) {
    return dsl::Program{dsl::prim("rotate", {dsl::input(), dsl::var("turns")})};
  };
  d.input_template = {{"A {c:color_name} cell."}};
  d.transform_template = {{"Rotate by {turns:plural(quarter turn)}."}};
  return d;
}

TEST(CreateTask, DeterministicAndSound) {
  const auto def = rotate_family();
  const TaskSample a = create_task(def, 5);
  const TaskSample b = create_task(def, 5);
  EXPECT_EQ(serialize_arc_json(a.episode), serialize_arc_json(b.episode));
  EXPECT_EQ(render_witness_file(a), render_witness_file(b));
  EXPECT_EQ(render_reasoning_file(a), render_reasoning_file(b));
  EXPECT_EQ(a.taskvars, b.taskvars);
  EXPECT_EQ(a.gridvars, b.gridvars);
  EXPECT_EQ(a.sample_id(), "test.rotate__5");
  EXPECT_EQ(a.provenance.prng, kPrngAlgorithm);
  EXPECT_EQ(a.provenance.engine_version, kEngineVersion);
  EXPECT_GE(a.provenance.attempts, 1u);
  EXPECT_TRUE(dsl::free_vars(a.witness).empty());
  a.episode.for_each_pair([&](const Pair& p, bool, std::size_t) {
    EXPECT_EQ(dsl::eval(a.witness, p.input), p.output);
  });
  EXPECT_EQ(a.gridvars.size(), a.episode.train.size() + a.episode.test.size());
  EXPECT_NE(serialize_arc_json(create_task(def, 6).episode), serialize_arc_json(a.episode));
}

TEST(CreateTask, TaskvarsFixGridvarsVary) {
  const auto def = rotate_family();
  int varied = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const TaskSample s = create_task(def, seed);
    EXPECT_EQ(s.witness, dsl::partial_eval(def.transform_builder(s.taskvars), s.taskvars));
    EXPECT_EQ(s.transform_reasoning,
              instantiate_template(def.transform_template, s.taskvars));
    std::set<std::string> inputs;
    s.episode.for_each_pair([&](const Pair& p, bool, std::size_t) {
      inputs.insert(serialize_grid(p.input));
    });
    varied += inputs.size() > 1;
  }
  EXPECT_EQ(varied, 50);
}

TEST(CreateTask, CountsFollowTheShape) {
  auto def = rotate_family();
  def.train_count = {2, 4};
  def.test_count = {1, 2};
  std::set<std::size_t> trains, tests;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const TaskSample s = create_task(def, seed);
    trains.insert(s.episode.train.size());
    tests.insert(s.episode.test.size());
  }
  EXPECT_EQ(trains, (std::set<std::size_t>{2, 3, 4}));
  EXPECT_EQ(tests, (std::set<std::size_t>{1, 2}));
}

TEST(CreateTask, AlwaysFalseConstraintExhaustsBudget) {
  auto def = rotate_family();
  def.constraints = {EpisodeConstraint::custom("never", [](const Episode&) { return false; })};
  def.retry.episode_attempts = 7;
  def.retry.taskvar_attempts = 3;
  try {
    create_task(def, 1);
    FAIL() << "expected BudgetExhausted";
  } catch (const BudgetExhausted& e) {
    EXPECT_EQ(e.attempts(), 21u);
  }
}

TEST(CreateTask, InputAcceptUsesGridBudget) {
  auto def = rotate_family();
  def.input_accept = [](const Grid&, const Env&) { return false; };
  def.retry = {4, 2, 2};
  EXPECT_THROW(create_task(def, 1), BudgetExhausted);
}

TEST(CreateTask, ScreensUnintendedShortcuts) {
  EXPECT_THROW(create_task(identity_family({}), 3), BudgetExhausted);
  const TaskSample s = create_task(identity_family({Shortcut::identity}), 3);
  EXPECT_EQ(detect_shortcuts(s.episode), (std::set<Shortcut>{Shortcut::identity}));
}

TEST(CreateTask, TemplateErrorsSurface) {
  auto def = rotate_family();
  def.transform_template = {{"Rotate {missing} times."}};
  EXPECT_THROW(create_task(def, 1), TemplateError);
}

Episode episode_of(std::vector<std::pair<Grid, Grid>> train, std::vector<std::pair<Grid, Grid>> test) {
  Episode e;
  for (auto& [i, o] : train) e.train.push_back({i, o});
  for (auto& [i, o] : test) e.test.push_back({i, o});
  return e;
}

TEST(CheckConstraints, NoTestOnlyColors) {
  const Grid a = Grid::from_rows({{0, 1}});
  const Grid b = Grid::from_rows({{0, 6}});
  const auto bad = check_constraints(episode_of({{a, a}}, {{b, a}}),
                                     {EpisodeConstraint::no_test_only_colors()});
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_FALSE(bad[0].pass);
  EXPECT_EQ(bad[0].detail, "{color:6}");
  EXPECT_EQ(bad[0].constraint, "NoTestOnlyColors:no_test_only_colors");
  EXPECT_TRUE(all_pass(check_constraints(episode_of({{a, b}}, {{b, a}}),
                                         {EpisodeConstraint::no_test_only_colors()})));
  // Test outputs count too.
  EXPECT_FALSE(all_pass(check_constraints(episode_of({{a, a}}, {{a, b}}),
                                          {EpisodeConstraint::no_test_only_colors()})));
}

Grid with_objects(int n) {
  Grid g(3, 9);
  for (int k = 0; k < n; ++k) g.set(1, 2 * k, Color(1));
  return g;
}

TEST(CheckConstraints, TestDistinctness) {
  auto count = [](const Grid& g) { return object_count(g); };
  const auto c = EpisodeConstraint::test_distinctness("object_count", count);
  const Episode overlap = episode_of(
      {{with_objects(2), with_objects(2)}, {with_objects(3), with_objects(3)},
       {with_objects(4), with_objects(4)}},
      {{with_objects(3), with_objects(3)}});
  // Counts via object-lib extraction: train {2,3,4}, test 3.
  EXPECT_EQ(object_count(overlap.test[0].input), 3);
  EXPECT_FALSE(check_constraints(overlap, {c})[0].pass);
  const Episode distinct = episode_of(
      {{with_objects(2), with_objects(2)}, {with_objects(3), with_objects(3)}},
      {{with_objects(1), with_objects(1)}});
  EXPECT_TRUE(check_constraints(distinct, {c})[0].pass);
}

TEST(CheckConstraints, CoverageSeesTrainInputsOnly) {
  std::size_t seen = 0;
  const auto c = EpisodeConstraint::coverage("probe", [&](std::span<const Grid> inputs) {
    seen = inputs.size();
    return std::any_of(inputs.begin(), inputs.end(),
                       [](const Grid& g) { return g.at(0, 0) == Color(7); });
  });
  const Grid seven = Grid::from_rows({{7}});
  const Grid zero = Grid::from_rows({{0}});
  EXPECT_FALSE(check_constraints(episode_of({{zero, seven}, {zero, seven}}, {{seven, seven}}), {c})[0].pass);
  EXPECT_EQ(seen, 2u);
  EXPECT_TRUE(check_constraints(episode_of({{zero, zero}, {seven, zero}}, {{zero, zero}}), {c})[0].pass);
}

TEST(CheckConstraints, NoTestOnlyObjectSizes) {
  const Grid one = with_objects(1);
  Grid big(3, 9);
  big.set(0, 0, Color(1));
  big.set(0, 1, Color(1));
  const auto c = EpisodeConstraint::no_test_only_object_sizes();
  EXPECT_FALSE(check_constraints(episode_of({{one, one}}, {{big, big}}), {c})[0].pass);
  EXPECT_FALSE(check_constraints(episode_of({{big, big}}, {{one, one}}), {c})[0].pass);
  EXPECT_TRUE(check_constraints(episode_of({{big, big}, {one, one}}, {{big, big}}), {c})[0].pass);
}

TEST(Template, Examples) {
  EXPECT_EQ(instantiate_template({{"Segments stack toward the {dir}."}}, {{"dir", std::string("bottom")}}),
            std::vector<std::string>{"Segments stack toward the bottom."});
  EXPECT_EQ(instantiate_template({{"{c:color_name}"}}, {{"c", Color(2)}}),
            std::vector<std::string>{"red"});
  EXPECT_THROW(instantiate_template({{"a {missing} b"}}, {}), TemplateError);
}

TEST(Template, Formatters) {
  const Env env = {{"n", std::int64_t{1}},
                   {"m", std::int64_t{12}},
                   {"k", std::int64_t{22}},
                   {"d", dsl::Direction::down},
                   {"a", Axis::horizontal},
                   {"v", Axis::vertical}};
  EXPECT_EQ(instantiate_template({{"{n:ordinal} {m:ordinal} {k:ordinal}"}}, env)[0], "1st 12th 22nd");
  EXPECT_EQ(instantiate_template({{"{n:plural(row)}, {m:plural(row)}"}}, env)[0], "1 row, 12 rows");
  EXPECT_EQ(instantiate_template({{"{d:edge} {d}"}}, env)[0], "bottom down");
  EXPECT_EQ(instantiate_template({{"{a:half}/{a:other_half} {v:half}/{v:other_half}"}}, env)[0],
            "left/right top/bottom");
  EXPECT_EQ(instantiate_template({{"{{literal}}"}}, env)[0], "{literal}");
  EXPECT_THROW(instantiate_template({{"{n:color_name}"}}, env), TemplateError);
  EXPECT_THROW(instantiate_template({{"{n:shout}"}}, env), TemplateError);
  EXPECT_THROW(instantiate_template({{"{n"}}, env), TemplateError);
  EXPECT_THROW(instantiate_template({{"n}"}}, env), TemplateError);
  for (int v = 0; v < 10; ++v) {
    EXPECT_EQ(instantiate_template({{"{c:color_name}"}}, {{"c", Color(v)}})[0], color_name(Color(v)));
  }
}

TEST(Registry, ListsExemplars) {
  const auto entries = registry_list();
  ASSERT_GE(entries.size(), 6u);
  std::set<std::string> ids;
  for (const auto& e : entries) EXPECT_TRUE(ids.insert(e.id).second);
  EXPECT_TRUE(ids.contains("tgi.g1.stacked_segments"));
  EXPECT_TRUE(ids.contains("tgi.g6.symmetry"));
  EXPECT_THROW(default_registry().find("tgi.nope"), NotFound);
  EXPECT_EQ(registry_list()[0].id, entries[0].id);
  std::vector<GeneratorDefinition> dup = {rotate_family(), rotate_family()};
  EXPECT_THROW(Registry{dup}, PreconditionViolation);
}

TEST(Shortcuts, Detection) {
  const Grid a = Grid::from_rows({{1}});
  const Grid b = Grid::from_rows({{2}});
  EXPECT_EQ(detect_shortcuts(episode_of({{a, a}, {b, b}}, {{a, a}})),
            (std::set<Shortcut>{Shortcut::identity}));
  EXPECT_EQ(detect_shortcuts(episode_of({{a, b}, {b, b}}, {{a, b}})),
            (std::set<Shortcut>{Shortcut::constant}));
  EXPECT_TRUE(detect_shortcuts(episode_of({{a, b}, {b, a}}, {{a, b}})).empty());
}

}  // namespace
}  // namespace tgi
