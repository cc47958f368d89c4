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
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tgi/arc_json.hpp"
#include "tgi/dsl.hpp"
#include "tgi/generator.hpp"

// Dataset directory layout:
//   <generator_id>__<seed>.json            canonical ARC-JSON episode
//   <generator_id>__<seed>.witness.txt     optional closed witness program
//   <generator_id>__<seed>.reasoning.txt   optional reasoning chains
//   manifest.json                          versions, PRNG id, generators, seeds,
//                                          per-sample provenance
namespace tgi {

namespace fs = std::filesystem;

inline constexpr std::string_view kManifestName = "manifest.json";
inline constexpr std::string_view kReportName = "verification_report.json";
inline constexpr std::string_view kWitnessSuffix = ".witness.txt";
inline constexpr std::string_view kReasoningSuffix = ".reasoning.txt";

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes through a temporary file and a rename so readers never see a
// partial file.
inline void write_file_atomic(const fs::path& p, std::string_view content) {
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

struct SampleStem {
  std::string generator_id;
  std::optional<std::uint64_t> seed;
};

inline SampleStem split_stem(std::string_view stem) {
  const auto sep = stem.rfind("__");
  if (sep == std::string_view::npos) return {std::string(stem), std::nullopt};
  SampleStem out{std::string(stem.substr(0, sep)), std::nullopt};
  const std::string_view tail = stem.substr(sep + 2);
  std::uint64_t seed = 0;
  const auto [end, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), seed);
  if (ec == std::errc() && end == tail.data() + tail.size() && !tail.empty()) out.seed = seed;
  return out;
}

// ---- witness sidecar -------------------------------------------------------

struct WitnessFile {
  std::string dsl_version;
  std::string generator_id;
  std::uint64_t seed = 0;
  dsl::Program program;
};

inline std::string render_witness_file(const TaskSample& s) {
  return "dsl-version: " + std::string(dsl::kDslVersion) + "\ngenerator: " +
         s.provenance.generator_id + "\nseed: " + std::to_string(s.provenance.seed) + "\n\n" +
         dsl::render_source(s.witness) + "\n";
}

inline WitnessFile parse_witness_file(std::string_view text) {
  WitnessFile w;
  std::size_t pos = 0;
  auto next_line = [&](std::size_t line_no) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) throw ParseError(line_no, 1, "truncated witness header");
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    return line;
  };
  auto field = [&](std::size_t line_no, std::string_view key) {
    std::string_view line = next_line(line_no);
    const std::string prefix = std::string(key) + ": ";
    if (!line.starts_with(prefix)) {
      throw ParseError(line_no, 1, "expected '" + prefix + "'");
    }
    return std::string(line.substr(prefix.size()));
  };
  w.dsl_version = field(1, "dsl-version");
  w.generator_id = field(2, "generator");
  const std::string seed = field(3, "seed");
  const auto [end, ec] = std::from_chars(seed.data(), seed.data() + seed.size(), w.seed);
  if (ec != std::errc() || end != seed.data() + seed.size()) {
    throw ParseError(3, 7, "seed is not an unsigned integer");
  }
  if (!next_line(4).empty()) throw ParseError(4, 1, "expected a blank line");
  try {
    w.program = dsl::parse_source(text.substr(pos));
  } catch (const ParseError& e) {
    throw ParseError(e.line() + 4, e.col(), e.what());
  }
  return w;
}

// ---- reasoning sidecar -----------------------------------------------------

struct ReasoningFile {
  std::vector<std::string> input;
  std::vector<std::string> transform;
};

inline std::string render_reasoning_file(const TaskSample& s) {
  std::string out = "[input]\n";
  for (const auto& l : s.input_reasoning) out += l + "\n";
  out += "\n[transform]\n";
  for (const auto& l : s.transform_reasoning) out += l + "\n";
  return out;
}

inline ReasoningFile parse_reasoning_file(std::string_view text) {
  ReasoningFile r;
  std::vector<std::string>* section = nullptr;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line == "[input]") {
      section = &r.input;
    } else if (line == "[transform]") {
      section = &r.transform;
    } else if (line.empty()) {
      continue;
    } else if (!section) {
      throw ParseError(line_no, 1, "reasoning line outside a section");
    } else {
      section->emplace_back(line);
    }
  }
  return r;
}

// ---- manifest --------------------------------------------------------------

struct ManifestEntry {
  std::string id;
  std::string generator_id;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
  dsl::Env taskvars;
};

struct Manifest {
  std::string engine_version{kEngineVersion};
  std::string dsl_version{dsl::kDslVersion};
  std::string prng{kPrngAlgorithm};
  std::vector<std::string> generators;
  std::vector<std::uint64_t> seeds;
  std::vector<ManifestEntry> samples;  // sorted by id

  const ManifestEntry* find(std::string_view id) const {
    for (const auto& e : samples) {
      if (e.id == id) return &e;
    }
    return nullptr;
  }
};

inline ManifestEntry manifest_entry(const TaskSample& s) {
  return {s.sample_id(), s.provenance.generator_id, s.provenance.seed, s.provenance.attempts,
          s.taskvars};
}

// Taskvars are stored in DSL literal syntax ("#4", ":down", "3").
inline std::string render_manifest(const Manifest& m) {
  nlohmann::ordered_json j;
  j["engine_version"] = m.engine_version;
  j["dsl_version"] = m.dsl_version;
  j["prng"] = m.prng;
  j["generators"] = m.generators;
  j["seeds"] = m.seeds;
  auto& samples = j["samples"] = nlohmann::ordered_json::array();
  for (const auto& e : m.samples) {
    nlohmann::ordered_json s;
    s["id"] = e.id;
    s["generator"] = e.generator_id;
    s["seed"] = e.seed;
    s["attempts"] = e.attempts;
    auto& tv = s["taskvars"] = nlohmann::ordered_json::object();
    for (const auto& [name, value] : e.taskvars) tv[name] = dsl::render_scalar(value);
    samples.push_back(std::move(s));
  }
  return j.dump(2) + "\n";
}

inline Manifest parse_manifest(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    Manifest m;
    m.engine_version = j.at("engine_version").get<std::string>();
    m.dsl_version = j.at("dsl_version").get<std::string>();
    m.prng = j.at("prng").get<std::string>();
    m.generators = j.at("generators").get<std::vector<std::string>>();
    m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    for (const auto& s : j.at("samples")) {
      ManifestEntry e;
      e.id = s.at("id").get<std::string>();
      e.generator_id = s.at("generator").get<std::string>();
      e.seed = s.at("seed").get<std::uint64_t>();
      e.attempts = s.at("attempts").get<std::size_t>();
      for (const auto& [name, value] : s.at("taskvars").items()) {
        e.taskvars.emplace(name, dsl::parse_scalar(value.get<std::string>()));
      }
      m.samples.push_back(std::move(e));
    }
    std::sort(m.samples.begin(), m.samples.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedJson(std::string("manifest: ") + e.what());
  } catch (const ParseError& e) {
    throw MalformedJson(std::string("manifest taskvar: ") + e.what());
  }
}

// ---- writing ---------------------------------------------------------------

struct ExportOptions {
  bool with_witness = false;
  bool with_reasoning = false;
};

inline void write_sample(const fs::path& dir, const TaskSample& s, const ExportOptions& opt) {
  const std::string id = s.sample_id();
  write_file_atomic(dir / (id + ".json"), serialize_arc_json(s.episode));
  if (opt.with_witness) {
    write_file_atomic(dir / (id + std::string(kWitnessSuffix)), render_witness_file(s));
  }
  if (opt.with_reasoning) {
    write_file_atomic(dir / (id + std::string(kReasoningSuffix)), render_reasoning_file(s));
  }
}

// ---- reading ---------------------------------------------------------------

struct SampleFiles {
  std::string id;
  std::string generator_id;
  std::optional<std::uint64_t> seed;
  std::string json_text;
  std::optional<std::string> witness_text;
  std::optional<std::string> reasoning_text;
};

struct DatasetFiles {
  std::optional<Manifest> manifest;
  std::vector<SampleFiles> samples;          // sorted by id
  std::vector<std::string> orphan_sidecars;  // sidecars without an episode file
};

inline DatasetFiles read_dataset_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError(dir.string() + " is not a directory");
  DatasetFiles out;
  std::map<std::string, SampleFiles> by_id;
  std::vector<std::pair<std::string, fs::path>> witnesses, reasonings;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name == kManifestName) {
      out.manifest = parse_manifest(read_file(entry.path()));
    } else if (name == kReportName) {
      continue;
    } else if (name.ends_with(kWitnessSuffix)) {
      witnesses.emplace_back(name.substr(0, name.size() - kWitnessSuffix.size()), entry.path());
    } else if (name.ends_with(kReasoningSuffix)) {
      reasonings.emplace_back(name.substr(0, name.size() - kReasoningSuffix.size()),
                              entry.path());
    } else if (name.ends_with(".json")) {
      const std::string id = name.substr(0, name.size() - 5);
      const SampleStem stem = split_stem(id);
      by_id[id] = SampleFiles{id, stem.generator_id, stem.seed, read_file(entry.path()), {}, {}};
    }
  }
  for (const auto& [id, path] : witnesses) {
    if (auto it = by_id.find(id); it != by_id.end()) {
      it->second.witness_text = read_file(path);
    } else {
      out.orphan_sidecars.push_back(path.filename().string());
    }
  }
  for (const auto& [id, path] : reasonings) {
    if (auto it = by_id.find(id); it != by_id.end()) {
      it->second.reasoning_text = read_file(path);
    } else {
      out.orphan_sidecars.push_back(path.filename().string());
    }
  }
  std::sort(out.orphan_sidecars.begin(), out.orphan_sidecars.end());
  for (auto& [id, files] : by_id) out.samples.push_back(std::move(files));
  return out;
}

// A parsed sample for analysis and scoring.
struct LoadedSample {
  std::string id;
  std::string generator_id;
  Episode episode;
  std::optional<dsl::Env> taskvars;  // from the manifest, when present
};

inline std::vector<LoadedSample> load_dataset(const fs::path& dir) {
  DatasetFiles files = read_dataset_files(dir);
  std::vector<LoadedSample> out;
  out.reserve(files.samples.size());
  for (auto& f : files.samples) {
    LoadedSample s;
    s.id = f.id;
    s.generator_id = f.generator_id;
    try {
      s.episode = parse_arc_json(f.json_text);
    } catch (const Error& e) {
      throw MalformedJson(f.id + ".json: " + e.what());
    }
    if (files.manifest) {
      if (const auto* entry = files.manifest->find(f.id)) {
        s.generator_id = entry->generator_id;
        s.taskvars = entry->taskvars;
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace tgi
