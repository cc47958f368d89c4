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

#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tgi/grid.hpp"
#include "tgi/objects.hpp"

namespace tgi {

// A predicate coupling the pairs of one episode. All predicates are pure.
struct EpisodeConstraint {
  enum class Kind {
    no_test_only_colors,
    no_test_only_object_sizes,
    coverage,
    test_distinctness,
    custom,
  };

  Kind kind;
  std::string name;
  Connectivity conn = Connectivity::eight;                         // object sizes
  std::function<bool(std::span<const Grid>)> coverage_pred;        // train inputs
  std::function<int(const Grid&)> feature;                         // distinctness
  std::function<bool(const Episode&)> custom_pred;

  // Fails iff some color of a test input or output is absent from every
  // train grid.
  static EpisodeConstraint no_test_only_colors() {
    return {Kind::no_test_only_colors, "no_test_only_colors", {}, {}, {}, {}};
  }
  // Fails iff a test input holds an object size no train input holds.
  static EpisodeConstraint no_test_only_object_sizes(Connectivity conn = Connectivity::eight) {
    return {Kind::no_test_only_object_sizes, "no_test_only_object_sizes", conn, {}, {}, {}};
  }
  // Evaluated on train inputs only.
  static EpisodeConstraint coverage(std::string name,
                                    std::function<bool(std::span<const Grid>)> pred) {
    return {Kind::coverage, std::move(name), {}, std::move(pred), {}, {}};
  }
  // Each test input's feature must differ from every train input's feature.
  static EpisodeConstraint test_distinctness(std::string feature_name,
                                             std::function<int(const Grid&)> feature) {
    return {Kind::test_distinctness, std::move(feature_name), {}, {}, std::move(feature), {}};
  }
  static EpisodeConstraint custom(std::string name, std::function<bool(const Episode&)> pred) {
    return {Kind::custom, std::move(name), {}, {}, {}, std::move(pred)};
  }
};

inline std::string_view constraint_kind_name(EpisodeConstraint::Kind k) {
  switch (k) {
    case EpisodeConstraint::Kind::no_test_only_colors: return "NoTestOnlyColors";
    case EpisodeConstraint::Kind::no_test_only_object_sizes: return "NoTestOnlyObjectSizes";
    case EpisodeConstraint::Kind::coverage: return "CoveragePredicate";
    case EpisodeConstraint::Kind::test_distinctness: return "TestDistinctness";
    case EpisodeConstraint::Kind::custom: return "CustomPredicate";
  }
  return "?";
}

struct ConstraintResult {
  std::string constraint;  // "<Kind>:<name>"
  bool pass = false;
  std::string detail;
};

namespace detail {

inline std::set<int> colors_of(const Grid& g) {
  std::set<int> out;
  for (Color c : g.cells()) out.insert(c.value());
  return out;
}

inline std::set<int> object_sizes(const Grid& g, Connectivity conn) {
  std::set<int> out;
  for (const auto& o : find_connected_objects(g, conn, {ExtractionKind::same_color, kBackground})) {
    out.insert(o.size());
  }
  return out;
}

inline std::string join_ints(const std::set<int>& xs) {
  std::string out;
  for (int x : xs) {
    if (!out.empty()) out += ',';
    out += std::to_string(x);
  }
  return out;
}

inline ConstraintResult check_one(const Episode& e, const EpisodeConstraint& c) {
  ConstraintResult r{std::string(constraint_kind_name(c.kind)) + ":" + c.name, true, ""};
  switch (c.kind) {
    case EpisodeConstraint::Kind::no_test_only_colors: {
      std::set<int> seen;
      for (const auto& p : e.train) {
        seen.merge(colors_of(p.input));
        seen.merge(colors_of(p.output));
      }
      std::set<int> unseen;
      for (const auto& p : e.test) {
        for (int col : colors_of(p.input)) if (!seen.contains(col)) unseen.insert(col);
        for (int col : colors_of(p.output)) if (!seen.contains(col)) unseen.insert(col);
      }
      if (!unseen.empty()) {
        r.pass = false;
        r.detail = "{color:" + join_ints(unseen) + "}";
      }
      break;
    }
    case EpisodeConstraint::Kind::no_test_only_object_sizes: {
      std::set<int> seen;
      for (const auto& p : e.train) seen.merge(object_sizes(p.input, c.conn));
      std::set<int> unseen;
      for (const auto& p : e.test) {
        for (int s : object_sizes(p.input, c.conn)) if (!seen.contains(s)) unseen.insert(s);
      }
      if (!unseen.empty()) {
        r.pass = false;
        r.detail = "{size:" + join_ints(unseen) + "}";
      }
      break;
    }
    case EpisodeConstraint::Kind::coverage: {
      std::vector<Grid> inputs;
      for (const auto& p : e.train) inputs.push_back(p.input);
      r.pass = c.coverage_pred(inputs);
      if (!r.pass) r.detail = "train inputs lack required coverage";
      break;
    }
    case EpisodeConstraint::Kind::test_distinctness: {
      std::set<int> train_values;
      for (const auto& p : e.train) train_values.insert(c.feature(p.input));
      for (std::size_t i = 0; i < e.test.size(); ++i) {
        const int v = c.feature(e.test[i].input);
        if (train_values.contains(v)) {
          r.pass = false;
          r.detail = "test[" + std::to_string(i) + "] " + c.name + "=" + std::to_string(v) +
                     " also occurs in train {" + join_ints(train_values) + "}";
          break;
        }
      }
      break;
    }
    case EpisodeConstraint::Kind::custom:
      r.pass = c.custom_pred(e);
      if (!r.pass) r.detail = "predicate rejected the episode";
      break;
  }
  return r;
}

}  // namespace detail

inline std::vector<ConstraintResult> check_constraints(
    const Episode& e, const std::vector<EpisodeConstraint>& cs) {
  std::vector<ConstraintResult> out;
  out.reserve(cs.size());
  for (const auto& c : cs) out.push_back(detail::check_one(e, c));
  return out;
}

inline bool all_pass(const std::vector<ConstraintResult>& rs) {
  for (const auto& r : rs) {
    if (!r.pass) return false;
  }
  return true;
}

// Features shared by exemplar constraints and tests.
inline int object_count(const Grid& g, Connectivity conn = Connectivity::eight,
                        ExtractionKind kind = ExtractionKind::same_color) {
  return static_cast<int>(find_connected_objects(g, conn, {kind, kBackground}).size());
}

inline int distinct_foreground_colors(const Grid& g) {
  auto cs = detail::colors_of(g);
  cs.erase(kBackground.value());
  return static_cast<int>(cs.size());
}

}  // namespace tgi
