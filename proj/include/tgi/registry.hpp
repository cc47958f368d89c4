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

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tgi/exemplars.hpp"
#include "tgi/generator.hpp"

namespace tgi {

struct RegistryEntry {
  std::string id;
  std::string summary;
  std::vector<std::string> constraint_kinds;
};

class Registry {
 public:
  explicit Registry(std::vector<GeneratorDefinition> defs) : defs_(std::move(defs)) {
    std::set<std::string> ids;
    for (const auto& d : defs_) {
      if (!ids.insert(d.id).second) throw PreconditionViolation("duplicate generator id " + d.id);
    }
  }

  const std::vector<GeneratorDefinition>& definitions() const noexcept { return defs_; }

  const GeneratorDefinition& find(std::string_view id) const {
    for (const auto& d : defs_) {
      if (d.id == id) return d;
    }
    throw NotFound("generator '" + std::string(id) + "'");
  }

  bool contains(std::string_view id) const {
    for (const auto& d : defs_) {
      if (d.id == id) return true;
    }
    return false;
  }

  std::vector<RegistryEntry> list() const {
    std::vector<RegistryEntry> out;
    for (const auto& d : defs_) {
      RegistryEntry e{d.id, d.summary, {}};
      for (const auto& c : d.constraints) {
        e.constraint_kinds.emplace_back(constraint_kind_name(c.kind));
      }
      out.push_back(std::move(e));
    }
    return out;
  }

 private:
  std::vector<GeneratorDefinition> defs_;
};

// The compiled-in exemplar catalog, in catalog order.
inline const Registry& default_registry() {
  static const Registry registry(exemplars::catalog());
  return registry;
}

inline std::vector<RegistryEntry> registry_list() { return default_registry().list(); }

}  // namespace tgi
