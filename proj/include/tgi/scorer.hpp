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
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tgi/arc_json.hpp"
#include "tgi/dataset.hpp"

// Exact-match scoring of solver predictions.
namespace tgi {

// A prediction slot that failed to parse as a grid is kept as nullopt and
// scores as wrong.
using PredictionFile = std::map<std::string, std::vector<std::optional<Grid>>, std::less<>>;

inline PredictionFile parse_predictions(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedJson(std::string("predictions: ") + e.what());
  }
  if (!j.is_object()) throw MalformedJson("predictions: top level must be an object");
  PredictionFile out;
  for (const auto& [id, list] : j.items()) {
    if (!list.is_array()) throw MalformedJson("predictions[" + id + "]: expected a list of grids");
    auto& slots = out[id];
    for (const auto& g : list) {
      try {
        slots.push_back(parse_grid_json(g));
      } catch (const Error&) {
        slots.push_back(std::nullopt);
      }
    }
  }
  return out;
}

struct GeneratorScore {
  std::size_t solved = 0;
  std::size_t total = 0;
  double accuracy() const { return total ? double(solved) / total : 0.0; }
};

struct ScoreTable {
  std::map<std::string, bool> solved;                  // by sample id
  std::map<std::string, GeneratorScore> per_generator;
  std::vector<std::string> excluded;  // over the cell limit, not scored

  std::size_t total() const { return solved.size(); }
  std::size_t solved_count() const {
    return std::count_if(solved.begin(), solved.end(), [](const auto& kv) { return kv.second; });
  }
  // Mean of per-sample indicators.
  double overall() const { return total() ? double(solved_count()) / total() : 0.0; }
  // Mean of per-generator accuracies, reported separately.
  double generator_mean() const {
    if (per_generator.empty()) return 0.0;
    double s = 0;
    for (const auto& [_, g] : per_generator) s += g.accuracy();
    return s / per_generator.size();
  }
};

struct ScoreOptions {
  bool strict_missing = false;  // missing prediction is an error
  bool strict_unknown = false;  // prediction for an unknown sample id is an error
  // Skip episodes whose grids hold more cells in total. A size proxy only;
  // it does not model any tokenizer.
  std::optional<std::size_t> max_cells;
};

struct ScoreResult {
  ScoreTable table;
  std::vector<std::string> warnings;
};

inline std::size_t episode_cells(const Episode& e) {
  std::size_t n = 0;
  e.for_each_pair([&](const Pair& p, bool, std::size_t) { n += p.input.area() + p.output.area(); });
  return n;
}

inline ScoreResult score(const std::vector<LoadedSample>& ds, const PredictionFile& preds,
                         const ScoreOptions& opt = {}) {
  ScoreResult res;
  std::set<std::string, std::less<>> known;
  for (const auto& s : ds) {
    known.insert(s.id);
    if (opt.max_cells && episode_cells(s.episode) > *opt.max_cells) {
      res.table.excluded.push_back(s.id);
      continue;
    }
    auto& gen = res.table.per_generator[s.generator_id];
    ++gen.total;
    bool ok = false;
    auto it = preds.find(s.id);
    if (it == preds.end()) {
      if (opt.strict_missing) throw NotFound("no prediction for sample " + s.id);
      res.warnings.push_back("missing prediction for " + s.id + "; counted unsolved");
    } else {
      const auto& slots = it->second;
      if (slots.size() != s.episode.test.size()) {
        throw ArityMismatch(s.id + ": " + std::to_string(slots.size()) + " predictions for " +
                            std::to_string(s.episode.test.size()) + " test pairs");
      }
      ok = true;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        ok = ok && slots[i] && *slots[i] == s.episode.test[i].output;
      }
    }
    res.table.solved[s.id] = ok;
    gen.solved += ok;
  }
  for (const auto& [id, _] : preds) {
    if (known.contains(id)) continue;
    if (opt.strict_unknown) throw UnknownSampleId("prediction for unknown sample " + id);
    res.warnings.push_back("prediction for unknown sample " + id + " ignored");
  }
  return res;
}

inline std::string render_scores_csv(const ScoreTable& t) {
  std::ostringstream out;
  out << "generator_id,solved,total,accuracy\n";
  for (const auto& [id, g] : t.per_generator) {
    out << id << ',' << g.solved << ',' << g.total << ',' << g.accuracy() << '\n';
  }
  return out.str();
}

inline std::string render_overall_json(const ScoreTable& t) {
  nlohmann::ordered_json j;
  j["solved"] = t.solved_count();
  j["total"] = t.total();
  j["overall_accuracy"] = t.overall();
  j["mean_generator_accuracy"] = t.generator_mean();
  auto& samples = j["samples"] = nlohmann::ordered_json::object();
  for (const auto& [id, ok] : t.solved) samples[id] = ok;
  if (!t.excluded.empty()) j["excluded_over_cell_limit"] = t.excluded;
  return j.dump(2) + "\n";
}

struct DifficultyMatrix {
  std::vector<std::string> models;      // rows, by mean accuracy descending
  std::vector<std::string> generators;  // columns, by reference accuracy descending
  std::vector<std::vector<double>> accuracy;
};

inline DifficultyMatrix difficulty_matrix(
    const std::vector<std::pair<std::string, ScoreTable>>& tables, std::string_view reference) {
  DifficultyMatrix m;
  if (tables.empty()) return m;
  std::set<std::string> gens;
  for (const auto& [g, _] : tables.front().second.per_generator) gens.insert(g);
  for (const auto& [label, t] : tables) {
    std::set<std::string> mine;
    for (const auto& [g, _] : t.per_generator) mine.insert(g);
    if (mine != gens) throw GeneratorSetMismatch("table '" + label + "' covers other generators");
  }
  auto ref = std::find_if(tables.begin(), tables.end(),
                          [&](const auto& t) { return t.first == reference; });
  if (ref == tables.end()) throw NotFound("reference row '" + std::string(reference) + "'");

  m.generators.assign(gens.begin(), gens.end());
  std::stable_sort(m.generators.begin(), m.generators.end(), [&](const auto& a, const auto& b) {
    return ref->second.per_generator.at(a).accuracy() > ref->second.per_generator.at(b).accuracy();
  });

  std::vector<std::size_t> order(tables.size());
  std::vector<double> mean(tables.size(), 0.0);
  for (std::size_t i = 0; i < tables.size(); ++i) {
    order[i] = i;
    for (const auto& g : m.generators) mean[i] += tables[i].second.per_generator.at(g).accuracy();
    mean[i] /= m.generators.size();
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mean[a] > mean[b]; });
  for (std::size_t i : order) {
    m.models.push_back(tables[i].first);
    auto& row = m.accuracy.emplace_back();
    for (const auto& g : m.generators) row.push_back(tables[i].second.per_generator.at(g).accuracy());
  }
  return m;
}

}  // namespace tgi
