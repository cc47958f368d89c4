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

// tgi: sample, verify, render, analyze and score grid-transformation tasks.

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "tgi/commands.hpp"

namespace {

using tgi::cli::kExitUsage;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Task generator toolkit for grid-transformation episodes", "tgi"};
  app.require_subcommand(1);

  tgi::cli::SampleArgs sample;
  auto* s = app.add_subcommand("sample", "Sample episodes from registered generators");
  s->add_option("--generator", sample.generator, "Generator id, or 'all'")->required();
  s->add_option("--count", sample.count, "Samples per generator")->required();
  s->add_option("--seed", sample.seed, "First seed; samples use seed, seed+1, ...")->required();
  s->add_option("--out", sample.out, "Output directory")->required();
  s->add_flag("--with-witness", sample.export_opts.with_witness, "Write witness sidecars");
  s->add_flag("--with-reasoning", sample.export_opts.with_reasoning, "Write reasoning sidecars");

  tgi::cli::VerifyArgs verify;
  std::string report;
  auto* v = app.add_subcommand("verify", "Re-check an exported dataset");
  v->add_option("--dataset", verify.dataset, "Dataset directory")->required();
  v->add_flag("--strict", verify.strict, "Treat flagged checks as failures");
  v->add_option("--report", report, "Report path (default: inside the dataset directory)");

  tgi::cli::RenderArgs render;
  auto* r = app.add_subcommand("render", "Render one episode file");
  r->add_option("--task", render.task, "Episode JSON file")->required();
  r->add_option("--format", render.format, "svg or ansi")
      ->required()
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, tgi::cli::RenderFormat>{{"svg", tgi::cli::RenderFormat::svg},
                                                        {"ansi", tgi::cli::RenderFormat::ansi}}));
  r->add_option("--out", render.out, "Output path, or '-' for stdout")->required();

  tgi::cli::StatsArgs stats;
  std::string heatmap, features, diversity;
  auto* st = app.add_subcommand("stats", "Grid-size heatmap, features and diversity");
  st->add_option("--dataset", stats.dataset, "Dataset directory")->required();
  st->add_option("--heatmap", heatmap, "Heatmap CSV path");
  st->add_option("--features", features, "Per-grid feature CSV path");
  st->add_option("--diversity", diversity, "Diversity JSON path");
  st->add_option("--role", stats.role, "Grids to count in the heatmap: inputs or outputs")
      ->transform(CLI::CheckedTransformer(std::map<std::string, tgi::GridRole>{
          {"inputs", tgi::GridRole::inputs}, {"outputs", tgi::GridRole::outputs}}));

  tgi::cli::ScoreArgs score;
  auto* sc = app.add_subcommand("score", "Exact-match scoring of predictions");
  sc->add_option("--dataset", score.dataset, "Dataset directory")->required();
  sc->add_option("--predictions", score.predictions, "Predictions JSON")->required();
  sc->add_option("--out", score.out, "Output directory for scores.csv and overall.json")
      ->required();
  sc->add_flag("--strict-predictions", score.options.strict_missing,
               "Missing predictions are errors");
  sc->add_flag("--strict-ids", score.options.strict_unknown,
               "Predictions for unknown sample ids are errors");
  std::size_t max_cells = 0;
  auto* max_cells_opt =
      sc->add_option("--max-cells", max_cells, "Skip episodes holding more cells than this in total")
          ->check(CLI::PositiveNumber);

  auto* l = app.add_subcommand("list", "List registered generators");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const auto& reg = tgi::default_registry();
  if (*s) return tgi::cli::cmd_sample(sample, reg, std::cout, std::cerr);
  if (*v) {
    if (!report.empty()) verify.report = report;
    return tgi::cli::cmd_verify(verify, reg, std::cout, std::cerr);
  }
  if (*r) return tgi::cli::cmd_render(render, std::cout, std::cerr);
  if (*st) {
    if (!heatmap.empty()) stats.heatmap = heatmap;
    if (!features.empty()) stats.features = features;
    if (!diversity.empty()) stats.diversity = diversity;
    return tgi::cli::cmd_stats(stats, std::cout, std::cerr);
  }
  if (*sc) {
    if (*max_cells_opt) score.options.max_cells = max_cells;
    return tgi::cli::cmd_score(score, std::cout, std::cerr);
  }
  if (*l) return tgi::cli::cmd_list(reg, std::cout);
  return kExitUsage;
}
