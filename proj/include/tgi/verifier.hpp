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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tgi/arc_json.hpp"
#include "tgi/constraints.hpp"
#include "tgi/dataset.hpp"
#include "tgi/dsl.hpp"
#include "tgi/reasoning_template.hpp"
#include "tgi/registry.hpp"
#include "tgi/shortcuts.hpp"

// Hermetic re-checks of exported samples: reads serialized artifacts and the
// registry, never re-samples.
namespace tgi {

enum class CheckKind { witness, structural, declared_invariant, shortcut };
enum class CheckStatus { pass, fail, flagged };

inline std::string_view check_kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::witness: return "witness";
    case CheckKind::structural: return "structural";
    case CheckKind::declared_invariant: return "declared_invariant";
    case CheckKind::shortcut: return "shortcut";
  }
  return "?";
}

inline std::string_view check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::flagged: return "flagged";
  }
  return "?";
}

struct CheckResult {
  CheckKind kind;
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

struct VerificationReport {
  std::string sample_id;
  std::vector<CheckResult> checks;
  bool pass = true;

  bool has_failure(CheckKind k) const {
    for (const auto& c : checks) {
      if (c.kind == k && c.status == CheckStatus::fail) return true;
    }
    return false;
  }
  bool flagged() const {
    for (const auto& c : checks) {
      if (c.status == CheckStatus::flagged) return true;
    }
    return false;
  }
};

struct VerifyOptions {
  bool strict = false;  // flagged checks count as failures
};

// Re-runs the witness on every input and demands exact outputs.
inline CheckResult verify_witness(const Episode& e, const dsl::Program& witness) {
  CheckResult r{CheckKind::witness, "executable_witness", CheckStatus::pass, ""};
  const auto fv = dsl::free_vars(witness);
  if (!fv.empty()) {
    r.status = CheckStatus::fail;
    r.detail = "witness has free variables:";
    for (const auto& v : fv) r.detail += " " + v;
    return r;
  }
  try {
    dsl::typecheck(witness);
  } catch (const Error& err) {
    r.status = CheckStatus::fail;
    r.detail = err.what();
    return r;
  }
  e.for_each_pair([&](const Pair& p, bool is_test, std::size_t i) {
    if (r.status == CheckStatus::fail) return;
    const std::string where = std::string(is_test ? "test" : "train") + "[" + std::to_string(i) + "]";
    try {
      const Grid got = dsl::eval(witness, p.input);
      if (got.height() != p.output.height() || got.width() != p.output.width()) {
        r.status = CheckStatus::fail;
        r.detail = where + ": witness produced " + std::to_string(got.height()) + "x" +
                   std::to_string(got.width()) + ", stored output is " +
                   std::to_string(p.output.height()) + "x" + std::to_string(p.output.width());
        return;
      }
      for (int row = 0; row < got.height(); ++row) {
        for (int col = 0; col < got.width(); ++col) {
          if (got.at(row, col) != p.output.at(row, col)) {
            r.status = CheckStatus::fail;
            r.detail = where + ": first differing cell (" + std::to_string(row) + "," +
                       std::to_string(col) + ") expected " +
                       std::to_string(p.output.at(row, col).value()) + " got " +
                       std::to_string(got.at(row, col).value());
            return;
          }
        }
      }
    } catch (const Error& err) {
      r.status = CheckStatus::fail;
      r.detail = where + ": " + err.what();
    }
  });
  return r;
}

// Parses the witness sidecar and checks it against the sample it belongs to.
inline CheckResult verify_witness_file(const Episode& e, const SampleFiles& f) {
  if (!f.witness_text) {
    return {CheckKind::witness, "executable_witness", CheckStatus::flagged,
            "no witness exported"};
  }
  WitnessFile w;
  try {
    w = parse_witness_file(*f.witness_text);
  } catch (const Error& err) {
    return {CheckKind::witness, "executable_witness", CheckStatus::fail, err.what()};
  }
  if (w.dsl_version != dsl::kDslVersion) {
    return {CheckKind::witness, "executable_witness", CheckStatus::fail,
            "dsl-version " + w.dsl_version + " is not " + std::string(dsl::kDslVersion)};
  }
  if (w.generator_id != f.generator_id || (f.seed && w.seed != *f.seed)) {
    return {CheckKind::witness, "executable_witness", CheckStatus::fail,
            "witness header names " + w.generator_id + "__" + std::to_string(w.seed)};
  }
  return verify_witness(e, w.program);
}

struct ShortcutScreen {
  std::set<Shortcut> flags;
  bool pass = true;  // false iff some flag is not an intended shortcut
};

inline ShortcutScreen screen_shortcuts(const Episode& e, const std::set<Shortcut>& intended) {
  ShortcutScreen s{detect_shortcuts(e), true};
  for (Shortcut f : s.flags) s.pass = s.pass && intended.contains(f);
  return s;
}

inline CheckResult shortcut_check(const Episode& e, const std::set<Shortcut>& intended) {
  const ShortcutScreen s = screen_shortcuts(e, intended);
  CheckResult r{CheckKind::shortcut, "shortcut_screen", CheckStatus::pass, ""};
  for (Shortcut f : s.flags) {
    if (!r.detail.empty()) r.detail += ", ";
    r.detail += std::string(shortcut_name(f)) + (intended.contains(f) ? " (intended)" : "");
  }
  // Intended flags are reported and pass unless strict; others fail.
  if (!s.flags.empty()) r.status = s.pass ? CheckStatus::flagged : CheckStatus::fail;
  return r;
}

// Grid bounds, registry/manifest membership, the family's declared episode
// constraints, and reasoning slot integrity.
inline std::vector<CheckResult> verify_structural(const Episode& e, const SampleFiles& f,
                                                  const GeneratorDefinition& def) {
  std::vector<CheckResult> out;
  for (const auto& c : check_constraints(e, def.constraints)) {
    out.push_back({CheckKind::structural, c.constraint,
                   c.pass ? CheckStatus::pass : CheckStatus::fail, c.detail});
  }
  if (f.reasoning_text) {
    CheckResult r{CheckKind::structural, "reasoning_slots", CheckStatus::pass, ""};
    try {
      const ReasoningFile rf = parse_reasoning_file(*f.reasoning_text);
      if (rf.input.empty() || rf.transform.empty()) {
        r.status = CheckStatus::fail;
        r.detail = "empty reasoning section";
      }
      for (const auto* lines : {&rf.input, &rf.transform}) {
        for (const auto& l : *lines) {
          if (has_unresolved_slot(l) && r.status == CheckStatus::pass) {
            r.status = CheckStatus::fail;
            r.detail = "unresolved slot in: " + l;
          }
        }
      }
    } catch (const Error& err) {
      r.status = CheckStatus::fail;
      r.detail = err.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline VerificationReport verify_sample(const SampleFiles& f, const Registry& registry,
                                        const Manifest* manifest, const VerifyOptions& opt = {}) {
  VerificationReport rep{f.id, {}, true};
  auto finish = [&]() {
    for (auto& c : rep.checks) {
      if (opt.strict && c.status == CheckStatus::flagged) c.status = CheckStatus::fail;
      if (c.status == CheckStatus::fail) rep.pass = false;
    }
    return rep;
  };

  std::optional<Episode> episode;
  try {
    episode = parse_arc_json(f.json_text);
    rep.checks.push_back({CheckKind::structural, "well_formed_grids", CheckStatus::pass, ""});
  } catch (const Error& err) {
    rep.checks.push_back({CheckKind::structural, "well_formed_grids", CheckStatus::fail,
                          err.kind() == "GridBoundsViolation"
                              ? std::string("GridBounds: ") + err.what()
                              : std::string(err.what())});
    return finish();
  }

  const ManifestEntry* entry = manifest ? manifest->find(f.id) : nullptr;
  if (!entry) {
    rep.checks.push_back({CheckKind::structural, "manifest_entry", CheckStatus::fail,
                          "sample not listed in manifest"});
  }
  if (!registry.contains(f.generator_id)) {
    rep.checks.push_back({CheckKind::structural, "known_generator", CheckStatus::fail,
                          "unknown generator '" + f.generator_id + "'"});
    rep.checks.push_back(verify_witness_file(*episode, f));
    return finish();
  }
  const GeneratorDefinition& def = registry.find(f.generator_id);

  rep.checks.push_back(verify_witness_file(*episode, f));
  for (auto& c : verify_structural(*episode, f, def)) rep.checks.push_back(std::move(c));
  for (const auto& inv : def.declared_invariants) {
    CheckResult r{CheckKind::declared_invariant, inv.name, CheckStatus::pass, ""};
    if (!entry) {
      r.status = CheckStatus::fail;
      r.detail = "taskvars unavailable";
    } else {
      try {
        if (!inv.holds(*episode, entry->taskvars)) {
          r.status = CheckStatus::fail;
          r.detail = "invariant violated";
        }
      } catch (const std::exception& err) {
        r.status = CheckStatus::fail;
        r.detail = err.what();
      }
    }
    rep.checks.push_back(std::move(r));
  }
  rep.checks.push_back(shortcut_check(*episode, def.intended_shortcuts));
  return finish();
}

struct DatasetReport {
  bool strict = false;
  std::vector<VerificationReport> samples;  // sorted by id
  std::vector<std::string> missing_samples;  // in manifest, no episode file
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t flagged = 0;

  bool pass() const { return failed == 0 && missing_samples.empty(); }
};

inline DatasetReport verify_dataset_files(const DatasetFiles& files, const Registry& registry,
                                          const VerifyOptions& opt = {}) {
  if (!files.manifest) throw MissingManifest("dataset has no " + std::string(kManifestName));
  if (!files.orphan_sidecars.empty()) {
    std::string names;
    for (const auto& n : files.orphan_sidecars) names += " " + n;
    throw OrphanSidecar("sidecars without an episode file:" + names);
  }
  DatasetReport out;
  out.strict = opt.strict;
  for (const auto& f : files.samples) {
    VerificationReport r = verify_sample(f, registry, &*files.manifest, opt);
    (r.pass ? out.passed : out.failed) += 1;
    out.flagged += r.flagged();
    out.samples.push_back(std::move(r));
  }
  for (const auto& e : files.manifest->samples) {
    const bool present = std::any_of(files.samples.begin(), files.samples.end(),
                                     [&](const SampleFiles& f) { return f.id == e.id; });
    if (!present) out.missing_samples.push_back(e.id);
  }
  return out;
}

inline DatasetReport verify_dataset(const fs::path& dir, const Registry& registry,
                                    const VerifyOptions& opt = {}) {
  return verify_dataset_files(read_dataset_files(dir), registry, opt);
}

inline std::string render_report_json(const DatasetReport& r) {
  nlohmann::ordered_json j;
  j["strict"] = r.strict;
  j["summary"] = {{"total", r.samples.size()},
                  {"passed", r.passed},
                  {"failed", r.failed},
                  {"flagged", r.flagged},
                  {"missing", r.missing_samples.size()}};
  j["missing_samples"] = r.missing_samples;
  auto& samples = j["samples"] = nlohmann::ordered_json::array();
  for (const auto& s : r.samples) {
    nlohmann::ordered_json js;
    js["id"] = s.sample_id;
    js["pass"] = s.pass;
    auto& checks = js["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : s.checks) {
      checks.push_back({{"kind", check_kind_name(c.kind)},
                        {"name", c.name},
                        {"status", check_status_name(c.status)},
                        {"detail", c.detail}});
    }
    samples.push_back(std::move(js));
  }
  return j.dump(2) + "\n";
}

}  // namespace tgi
