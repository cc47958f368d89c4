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

#include <string>
#include <string_view>
#include <vector>

#include "tgi/dsl/source.hpp"
#include "tgi/dsl/term.hpp"
#include "tgi/grid.hpp"

namespace tgi {

// Lines with {name} and {name:formatter} slots resolved against taskvars.
// Formatters:
//   color_name     Color -> canonical palette name
//   ordinal        Int   -> 1st, 2nd, 3rd, 4th, ...
//   plural(word)   Int   -> "1 word" / "n words"
//   edge           Direction -> top, bottom, left, right
//   half           Axis  -> left (horizontal) or top (vertical)
//   other_half     Axis  -> right (horizontal) or bottom (vertical)
// "{{" and "}}" produce literal braces.
struct ReasoningTemplate {
  std::vector<std::string> lines;
};

namespace detail {

inline std::string ordinal(std::int64_t n) {
  const std::int64_t mod100 = n % 100;
  const char* suffix = "th";
  if (mod100 < 11 || mod100 > 13) {
    switch (n % 10) {
      case 1: suffix = "st"; break;
      case 2: suffix = "nd"; break;
      case 3: suffix = "rd"; break;
      default: break;
    }
  }
  return std::to_string(n) + suffix;
}

inline std::string format_slot(const dsl::Scalar& value, std::string_view formatter,
                               std::size_t line, std::string_view slot) {
  auto fail = [&](const std::string& why) -> std::string {
    throw TemplateError("line " + std::to_string(line + 1) + ", slot {" + std::string(slot) +
                        "}: " + why);
  };
  if (formatter.empty()) {
    if (const auto* s = std::get_if<std::string>(&value)) return *s;
    if (const auto* c = std::get_if<Color>(&value)) return std::to_string(c->value());
    return dsl::scalar_word(value);
  }
  if (formatter == "color_name") {
    const auto* c = std::get_if<Color>(&value);
    if (!c) return fail("color_name needs a color");
    return std::string(color_name(*c));
  }
  if (formatter == "ordinal") {
    const auto* i = std::get_if<std::int64_t>(&value);
    if (!i) return fail("ordinal needs an integer");
    return ordinal(*i);
  }
  if (formatter.starts_with("plural(") && formatter.ends_with(")")) {
    const auto* i = std::get_if<std::int64_t>(&value);
    if (!i) return fail("plural needs an integer");
    const std::string word(formatter.substr(7, formatter.size() - 8));
    return std::to_string(*i) + " " + word + (*i == 1 ? "" : "s");
  }
  if (formatter == "edge") {
    const auto* d = std::get_if<dsl::Direction>(&value);
    if (!d) return fail("edge needs a direction");
    switch (*d) {
      case dsl::Direction::up: return "top";
      case dsl::Direction::down: return "bottom";
      case dsl::Direction::left: return "left";
      case dsl::Direction::right: return "right";
    }
  }
  if (formatter == "half" || formatter == "other_half") {
    const auto* a = std::get_if<Axis>(&value);
    if (!a) return fail(std::string(formatter) + " needs an axis");
    const bool first = formatter == "half";
    if (*a == Axis::horizontal) return first ? "left" : "right";
    return first ? "top" : "bottom";
  }
  return fail("unknown formatter '" + std::string(formatter) + "'");
}

}  // namespace detail

inline std::vector<std::string> instantiate_template(const ReasoningTemplate& t,
                                                     const dsl::Env& vars) {
  std::vector<std::string> out;
  out.reserve(t.lines.size());
  for (std::size_t ln = 0; ln < t.lines.size(); ++ln) {
    const std::string& src = t.lines[ln];
    std::string line;
    for (std::size_t i = 0; i < src.size(); ++i) {
      const char c = src[i];
      if (c == '{' && i + 1 < src.size() && src[i + 1] == '{') {
        line += '{';
        ++i;
      } else if (c == '}' && i + 1 < src.size() && src[i + 1] == '}') {
        line += '}';
        ++i;
      } else if (c == '{') {
        const auto close = src.find('}', i);
        if (close == std::string::npos) {
          throw TemplateError("line " + std::to_string(ln + 1) + ": unterminated slot");
        }
        const std::string_view slot(src.data() + i + 1, close - i - 1);
        const auto colon = slot.find(':');
        const std::string_view name = slot.substr(0, colon);
        const std::string_view formatter =
            colon == std::string_view::npos ? std::string_view{} : slot.substr(colon + 1);
        const auto it = vars.find(name);
        if (it == vars.end()) {
          throw TemplateError("line " + std::to_string(ln + 1) + ", slot {" +
                              std::string(slot) + "}: unresolved");
        }
        line += detail::format_slot(it->second, formatter, ln, slot);
        i = close;
      } else if (c == '}') {
        throw TemplateError("line " + std::to_string(ln + 1) + ": stray '}'");
      } else {
        line += c;
      }
    }
    out.push_back(std::move(line));
  }
  return out;
}

// Exported reasoning never contains braces, so any brace marks a leftover slot.
inline bool has_unresolved_slot(std::string_view text) {
  return text.find('{') != std::string_view::npos || text.find('}') != std::string_view::npos;
}

}  // namespace tgi
