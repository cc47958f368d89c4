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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tgi/analysis.hpp"
#include "tgi/dataset.hpp"
#include "tgi/registry.hpp"
#include "tgi/render.hpp"
#include "tgi/scorer.hpp"
#include "tgi/verifier.hpp"

// Command bodies behind the tgi executable. Each returns a process exit code
// and writes human-readable output to the given streams.
namespace tgi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

// Maps exceptions escaping a command body onto exit codes.
inline int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << e.what() << '\n';
    return kExitFailure;
  }
}

struct SampleArgs {
  std::string generator = "all";
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  fs::path out;
  ExportOptions export_opts;
};

inline int cmd_sample(const SampleArgs& a, const Registry& reg, std::ostream& out,
                      std::ostream& err) {
  if (a.count == 0) {
    err << "usage error: --count must be at least 1\n";
    return kExitUsage;
  }
  std::vector<const GeneratorDefinition*> defs;
  if (a.generator == "all") {
    for (const auto& d : reg.definitions()) defs.push_back(&d);
  } else if (reg.contains(a.generator)) {
    defs.push_back(&reg.find(a.generator));
  } else {
    err << "usage error: unknown generator '" << a.generator << "' (see `tgi list`)\n";
    return kExitUsage;
  }
  return guarded(err, [&] {
    fs::create_directories(a.out);
    Manifest m;
    for (std::uint64_t i = 0; i < a.count; ++i) m.seeds.push_back(a.seed + i);
    for (const auto* def : defs) {
      m.generators.push_back(def->id);
      for (std::uint64_t seed : m.seeds) {
        TaskSample s;
        try {
          s = create_task(*def, seed);
        } catch (const BudgetExhausted& e) {
          err << "error: generator " << def->id << " seed " << seed << ": " << e.what() << '\n';
          return kExitFailure;
        }
        write_sample(a.out, s, a.export_opts);
        m.samples.push_back(manifest_entry(s));
      }
    }
    std::sort(m.samples.begin(), m.samples.end(),
              [](const auto& x, const auto& y) { return x.id < y.id; });
    write_file_atomic(a.out / std::string(kManifestName), render_manifest(m));
    out << "wrote " << m.samples.size() << " samples from " << defs.size() << " generator(s) to "
        << a.out.string() << '\n';
    return kExitOk;
  });
}

struct VerifyArgs {
  fs::path dataset;
  bool strict = false;
  std::optional<fs::path> report;  // defaults to <dataset>/verification_report.json
};

inline int cmd_verify(const VerifyArgs& a, const Registry& reg, std::ostream& out,
                      std::ostream& err) {
  return guarded(err, [&] {
    const DatasetReport rep = verify_dataset(a.dataset, reg, {a.strict});
    const fs::path report = a.report.value_or(a.dataset / std::string(kReportName));
    write_file_atomic(report, render_report_json(rep));
    for (const auto& s : rep.samples) {
      for (const auto& c : s.checks) {
        if (c.status == CheckStatus::pass) continue;
        (c.status == CheckStatus::fail ? err : out)
            << s.sample_id << ": " << check_status_name(c.status) << " " << check_kind_name(c.kind)
            << " " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
      }
    }
    for (const auto& id : rep.missing_samples) {
      err << id << ": listed in manifest but no episode file\n";
    }
    out << rep.passed << "/" << rep.samples.size() << " samples pass (" << rep.failed
        << " failed, " << rep.flagged << " flagged); report: " << report.string() << '\n';
    return rep.pass() ? kExitOk : kExitFailure;
  });
}

enum class RenderFormat { svg, ansi };

struct RenderArgs {
  fs::path task;
  RenderFormat format = RenderFormat::svg;
  fs::path out;
};

inline int cmd_render(const RenderArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Episode e = parse_arc_json(read_file(a.task));
    const std::string text = a.format == RenderFormat::svg ? render_svg(e) : render_ansi(e);
    if (a.out == "-") {
      out << text;
    } else {
      write_file_atomic(a.out, text);
    }
    return kExitOk;
  });
}

struct StatsArgs {
  fs::path dataset;
  GridRole role = GridRole::inputs;
  std::optional<fs::path> heatmap;
  std::optional<fs::path> features;
  std::optional<fs::path> diversity;
};

inline int cmd_stats(const StatsArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto ds = load_dataset(a.dataset);
    const SizeHeatmap h = size_heatmap(ds, a.role);
    if (a.heatmap) write_file_atomic(*a.heatmap, render_heatmap_csv(h));
    if (a.features) write_file_atomic(*a.features, render_features_csv(extract_features(ds)));
    const DiversityReport div = diversity(ds);
    if (a.diversity) write_file_atomic(*a.diversity, render_diversity_json(div));
    const double inside = h.total() ? 100.0 * h.in_window() / h.total() : 0.0;
    out << ds.size() << " samples, " << h.total() << " "
        << (a.role == GridRole::inputs ? "input" : "output") << " grids, " << h.in_window()
        << " in the 5x5..30x30 window (" << inside << "%), " << h.out_of_window << " outside\n";
    for (const auto& [id, g] : div.generators) {
      out << "  " << id << ": " << g.samples << " samples, unique episodes "
          << g.unique_episodes() << ", unique inputs " << g.unique_inputs() << '\n';
    }
    return kExitOk;
  });
}

struct ScoreArgs {
  fs::path dataset;
  fs::path predictions;
  fs::path out;
  ScoreOptions options;
};

inline int cmd_score(const ScoreArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto ds = load_dataset(a.dataset);
    const PredictionFile preds = parse_predictions(read_file(a.predictions));
    const ScoreResult r = score(ds, preds, a.options);
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    fs::create_directories(a.out);
    write_file_atomic(a.out / "scores.csv", render_scores_csv(r.table));
    write_file_atomic(a.out / "overall.json", render_overall_json(r.table));
    if (!r.table.excluded.empty()) {
      err << "note: " << r.table.excluded.size() << " sample(s) over the cell limit were not scored\n";
    }
    out << r.table.solved_count() << "/" << r.table.total() << " solved, overall accuracy "
        << r.table.overall() << '\n';
    return kExitOk;
  });
}

inline int cmd_list(const Registry& reg, std::ostream& out) {
  for (const auto& e : reg.list()) {
    out << e.id << "\t" << e.summary;
    if (!e.constraint_kinds.empty()) {
      out << "\t[";
      for (std::size_t i = 0; i < e.constraint_kinds.size(); ++i) {
        out << (i ? ", " : "") << e.constraint_kinds[i];
      }
      out << "]";
    }
    out << '\n';
  }
  return kExitOk;
}

}  // namespace tgi::cli
