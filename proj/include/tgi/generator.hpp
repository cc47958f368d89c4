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
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tgi/constraints.hpp"
#include "tgi/dsl.hpp"
#include "tgi/grid.hpp"
#include "tgi/reasoning_template.hpp"
#include "tgi/rng.hpp"
#include "tgi/sampler.hpp"
#include "tgi/shortcuts.hpp"

namespace tgi {

inline constexpr std::string_view kEngineVersion = "1.0.0";

// Where a grid sits in the episode being built.
struct GridSlot {
  bool is_test = false;
  std::size_t index = 0;
};

struct SampleContext {
  const dsl::Env& taskvars;
  const dsl::Env& gridvars;  // gridvars drawn so far for this slot
  GridSlot slot;
};

struct VarSpec {
  std::string name;
  std::function<dsl::Scalar(RngStream&, const SampleContext&)> sample;
};

struct DeclaredInvariant {
  std::string name;
  std::function<bool(const Episode&, const dsl::Env& taskvars)> holds;
};

struct CountRange {
  int min = 1;
  int max = 1;
};

struct RetryPolicy {
  std::size_t grid_attempts = kGridAttempts;  // per input grid
  std::size_t episode_attempts = 200;         // per taskvar draw
  std::size_t taskvar_attempts = 20;
};

// A task family. Witness and reasoning are functions of taskvars alone;
// gridvars only shape the input grids.
struct GeneratorDefinition {
  std::string id;
  std::string summary;
  std::vector<VarSpec> taskvars;
  std::vector<VarSpec> gridvars;
  std::function<Grid(RngStream&, const dsl::Env& taskvars, const dsl::Env& gridvars)>
      input_builder;
  // Optional per-grid acceptance, applied under the per-grid retry budget.
  std::function<bool(const Grid&, const dsl::Env& taskvars)> input_accept;
  std::function<dsl::Program(const dsl::Env& taskvars)> transform_builder;
  CountRange train_count{3, 5};
  CountRange test_count{1, 1};
  std::vector<EpisodeConstraint> constraints;
  ReasoningTemplate input_template;
  ReasoningTemplate transform_template;
  std::vector<DeclaredInvariant> declared_invariants;
  std::set<Shortcut> intended_shortcuts;
  RetryPolicy retry;
};

struct Provenance {
  std::string generator_id;
  std::uint64_t seed = 0;
  std::string engine_version{kEngineVersion};
  std::string prng{kPrngAlgorithm};
  std::size_t attempts = 0;  // episode draws until acceptance
};

struct TaskSample {
  Episode episode;
  dsl::Env taskvars;
  std::vector<dsl::Env> gridvars;  // train slots then test slots
  std::vector<std::string> input_reasoning;
  std::vector<std::string> transform_reasoning;
  dsl::Program witness;
  Provenance provenance;

  std::string sample_id() const {
    return provenance.generator_id + "__" + std::to_string(provenance.seed);
  }
};

namespace detail {

inline dsl::Env sample_vars(RngStream& rng, const std::vector<VarSpec>& specs,
                            const dsl::Env& taskvars, GridSlot slot) {
  dsl::Env out;
  for (const auto& spec : specs) {
    SampleContext ctx{taskvars, out, slot};
    out.insert_or_assign(spec.name, spec.sample(rng, ctx));
  }
  return out;
}

struct BuiltGrid {
  Grid input;
  dsl::Env gridvars;
};

inline BuiltGrid build_input(RngStream& rng, const GeneratorDefinition& def,
                             const dsl::Env& taskvars, GridSlot slot) {
  auto draw = [&](RngStream& r) -> std::optional<BuiltGrid> {
    dsl::Env gv = sample_vars(r, def.gridvars, taskvars, slot);
    try {
      Grid g = def.input_builder(r, taskvars, gv);
      return BuiltGrid{std::move(g), std::move(gv)};
    } catch (const BudgetExhausted&) {
      return std::nullopt;
    }
  };
  auto accept = [&](const std::optional<BuiltGrid>& b) {
    return b.has_value() && (!def.input_accept || def.input_accept(b->input, taskvars));
  };
  return std::move(*retry(rng, draw, accept, def.retry.grid_attempts,
                          def.id + ": input grid")
                        .value);
}

}  // namespace detail

// Three-stage pipeline: taskvars, closed witness, then episodes drawn until
// every constraint holds. A deterministic function of (def, seed).
inline TaskSample create_task(const GeneratorDefinition& def, std::uint64_t seed) {
  RngStream rng = RngStream::derive(seed, def.id);
  std::size_t attempts = 0;
  for (std::size_t outer = 0; outer < def.retry.taskvar_attempts; ++outer) {
    const dsl::Env taskvars = detail::sample_vars(rng, def.taskvars, {}, {});
    const dsl::Program program = def.transform_builder(taskvars);
    const dsl::Program witness = dsl::partial_eval(program, taskvars);

    for (std::size_t inner = 0; inner < def.retry.episode_attempts; ++inner) {
      ++attempts;
      const int n_train = rng.uniform(def.train_count.min, def.train_count.max);
      const int n_test = rng.uniform(def.test_count.min, def.test_count.max);
      Episode ep;
      std::vector<dsl::Env> gridvars;
      bool built = true;
      for (int i = 0; i < n_train + n_test && built; ++i) {
        const bool is_test = i >= n_train;
        const GridSlot slot{is_test, static_cast<std::size_t>(is_test ? i - n_train : i)};
        try {
          auto b = detail::build_input(rng, def, taskvars, slot);
          Grid out = dsl::eval(witness, b.input);
          (is_test ? ep.test : ep.train).push_back(Pair{std::move(b.input), std::move(out)});
          gridvars.push_back(std::move(b.gridvars));
        } catch (const BudgetExhausted&) {
          built = false;
        }
      }
      if (!built) continue;
      if (!all_pass(check_constraints(ep, def.constraints))) continue;
      bool unintended = false;
      for (Shortcut s : detect_shortcuts(ep)) {
        unintended = unintended || !def.intended_shortcuts.contains(s);
      }
      if (unintended) continue;

      TaskSample s;
      s.input_reasoning = instantiate_template(def.input_template, taskvars);
      s.transform_reasoning = instantiate_template(def.transform_template, taskvars);
      s.episode = std::move(ep);
      s.taskvars = taskvars;
      s.gridvars = std::move(gridvars);
      s.witness = witness;
      s.provenance.generator_id = def.id;
      s.provenance.seed = seed;
      s.provenance.attempts = attempts;
      return s;
    }
  }
  throw BudgetExhausted(attempts, def.id + ": episode constraints unsatisfied");
}

}  // namespace tgi
