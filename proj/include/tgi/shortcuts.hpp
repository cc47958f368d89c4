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
#include <string_view>

#include "tgi/grid.hpp"

namespace tgi {

enum class Shortcut { identity, constant };

inline std::string_view shortcut_name(Shortcut s) {
  return s == Shortcut::identity ? "identity" : "constant";
}

// identity: every pair maps its input to itself. constant: every output of
// the episode equals every other (needs at least two pairs).
inline std::set<Shortcut> detect_shortcuts(const Episode& e) {
  std::set<Shortcut> flags;
  bool identity = true;
  const Grid* first_output = nullptr;
  bool constant = true;
  std::size_t pairs = 0;
  e.for_each_pair([&](const Pair& p, bool, std::size_t) {
    ++pairs;
    identity = identity && p.input == p.output;
    if (!first_output) {
      first_output = &p.output;
    } else {
      constant = constant && p.output == *first_output;
    }
  });
  if (pairs > 0 && identity) flags.insert(Shortcut::identity);
  if (pairs > 1 && constant) flags.insert(Shortcut::constant);
  return flags;
}

}  // namespace tgi
