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

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "tgi/dsl/term.hpp"

namespace tgi::dsl {

// Canonical text form: parenthesised prefix notation. A term is written on
// one line when it fits in kRenderWidth columns; otherwise its head stays on
// the first line and each argument goes on its own line, indented two spaces.
//
//   literals:  3  -1  #4  :true  :up  :horizontal  :four  :same_color  :by_top
//   variables: bare identifiers
//   forms:     (input)  (let x B E)  (map-objects o OS E)
//              (filter-objects o OS P)  (fold-overlay OS G)  (<primitive> args...)
inline constexpr std::size_t kRenderWidth = 80;

namespace detail {

struct Keyword {
  std::string_view text;
  Scalar value;
};

inline const std::vector<Keyword>& keywords() {
  static const std::vector<Keyword> kw = {
      {"true", true},
      {"false", false},
      {"up", Direction::up},
      {"down", Direction::down},
      {"left", Direction::left},
      {"right", Direction::right},
      {"horizontal", Axis::horizontal},
      {"vertical", Axis::vertical},
      {"four", Connectivity::four},
      {"eight", Connectivity::eight},
      {"same_color", ExtractionKind::same_color},
      {"any_foreground", ExtractionKind::any_foreground},
      {"size_asc", SortKey::size_asc},
      {"size_desc", SortKey::size_desc},
      {"by_top", SortKey::top},
      {"by_left", SortKey::left},
  };
  return kw;
}

inline std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

inline std::string render_scalar(const Scalar& s) {
  if (const auto* i = std::get_if<std::int64_t>(&s)) return std::to_string(*i);
  if (const auto* c = std::get_if<Color>(&s)) return "#" + std::to_string(c->value());
  if (const auto* t = std::get_if<std::string>(&s)) return detail::quote(*t);
  for (const auto& kw : detail::keywords()) {
    if (kw.value == s) return ":" + std::string(kw.text);
  }
  return "?";
}

// Keyword spelling without the leading colon ("up", "horizontal", ...).
inline std::string scalar_word(const Scalar& s) {
  std::string r = render_scalar(s);
  return r.starts_with(':') ? r.substr(1) : r;
}

namespace detail {

inline std::string render_flat(const TermPtr& t);

inline std::string head_of(const Term& t) {
  return std::visit(
      [](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Prim>) return n.op;
        if constexpr (std::is_same_v<N, Let>) return "let " + n.name;
        if constexpr (std::is_same_v<N, MapObjects>) return "map-objects " + n.binder;
        if constexpr (std::is_same_v<N, FilterObjects>) return "filter-objects " + n.binder;
        if constexpr (std::is_same_v<N, FoldOverlay>) return "fold-overlay";
        return "";
      },
      t.node);
}

inline std::vector<TermPtr> children_of(const Term& t) {
  return std::visit(
      [](const auto& n) -> std::vector<TermPtr> {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Prim>) return n.args;
        if constexpr (std::is_same_v<N, Let>) return {n.bound, n.body};
        if constexpr (std::is_same_v<N, MapObjects>) return {n.objects, n.body};
        if constexpr (std::is_same_v<N, FilterObjects>) return {n.objects, n.predicate};
        if constexpr (std::is_same_v<N, FoldOverlay>) return {n.objects, n.canvas};
        return {};
      },
      t.node);
}

inline std::string render_flat(const TermPtr& t) {
  if (std::holds_alternative<InputRef>(t->node)) return "(input)";
  if (const auto* v = std::get_if<VarRef>(&t->node)) return v->name;
  if (const auto* l = std::get_if<Literal>(&t->node)) return render_scalar(l->value);
  std::string out = "(" + head_of(*t);
  for (const auto& c : children_of(*t)) out += " " + render_flat(c);
  return out + ")";
}

inline void render_into(const TermPtr& t, std::size_t indent, std::string& out) {
  std::string flat = render_flat(t);
  const auto children = children_of(*t);
  if (indent + flat.size() <= kRenderWidth || children.empty()) {
    out += flat;
    return;
  }
  out += "(" + head_of(*t);
  for (const auto& c : children) {
    out += "\n" + std::string(indent + 2, ' ');
    render_into(c, indent + 2, out);
  }
  out += ")";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Program parse_program() {
    skip_ws();
    TermPtr t = parse_term();
    skip_ws();
    if (pos_ < text_.size()) fail("trailing text after program");
    return Program{std::move(t)};
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  static bool atom_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ';' &&
           c != '"';
  }

  std::string read_atom() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && atom_char(text_[pos_])) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  static bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
      return false;
    }
    for (char c : s) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
  }

  static bool is_symbol(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')) return false;
    }
    return true;
  }

  TermPtr parse_atom() {
    const std::size_t line = line_, col = col_;
    if (text_[pos_] == '"') {
      advance();
      std::string s;
      while (true) {
        if (pos_ >= text_.size()) fail("unterminated string");
        char c = text_[pos_];
        if (c == '"') {
          advance();
          break;
        }
        if (c == '\\') {
          advance();
          if (pos_ >= text_.size()) fail("unterminated string");
          c = text_[pos_];
        }
        s += c;
        advance();
      }
      return lit(Scalar{std::move(s)});
    }
    const std::string a = read_atom();
    if (a.empty()) throw ParseError(line, col, "expected a term");
    if (a[0] == ':') {
      for (const auto& kw : keywords()) {
        if (a.substr(1) == kw.text) return lit(kw.value);
      }
      throw ParseError(line, col, "unknown keyword '" + a + "'");
    }
    if (a[0] == '#') {
      if (a.size() != 2 || !std::isdigit(static_cast<unsigned char>(a[1]))) {
        throw ParseError(line, col, "bad color literal '" + a + "'");
      }
      return lit_color(a[1] - '0');
    }
    if (std::isdigit(static_cast<unsigned char>(a[0])) || (a[0] == '-' && a.size() > 1)) {
      std::int64_t v = 0;
      const auto [end, ec] = std::from_chars(a.data(), a.data() + a.size(), v);
      if (ec != std::errc() || end != a.data() + a.size()) {
        throw ParseError(line, col, "bad integer '" + a + "'");
      }
      return lit_int(v);
    }
    if (!is_identifier(a)) throw ParseError(line, col, "bad identifier '" + a + "'");
    return var(a);
  }

  std::string expect_identifier(const char* what) {
    skip_ws();
    const std::size_t line = line_, col = col_;
    std::string name = read_atom();
    if (!is_identifier(name)) {
      throw ParseError(line, col, std::string("expected ") + what);
    }
    return name;
  }

  TermPtr parse_term() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == ')') fail("unexpected ')'");
    if (text_[pos_] != '(') return parse_atom();
    advance();
    skip_ws();
    const std::size_t line = line_, col = col_;
    const std::string head = read_atom();
    if (!is_symbol(head)) throw ParseError(line, col, "expected a form name after '('");

    TermPtr out;
    if (head == "input") {
      out = input();
    } else if (head == "let") {
      std::string name = expect_identifier("a let name");
      TermPtr bound = parse_term();
      TermPtr body = parse_term();
      out = let(std::move(name), std::move(bound), std::move(body));
    } else if (head == "map-objects" || head == "filter-objects") {
      std::string binder = expect_identifier("an object binder");
      TermPtr objs = parse_term();
      TermPtr body = parse_term();
      out = head == "map-objects" ? map_objects(std::move(binder), std::move(objs), std::move(body))
                                  : filter_objects(std::move(binder), std::move(objs), std::move(body));
    } else if (head == "fold-overlay") {
      TermPtr objs = parse_term();
      TermPtr canvas = parse_term();
      out = fold_overlay(std::move(objs), std::move(canvas));
    } else {
      std::vector<TermPtr> args;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size()) fail("unbalanced '(': missing ')'");
        if (text_[pos_] == ')') break;
        args.push_back(parse_term());
      }
      out = prim(head, std::move(args));
    }
    skip_ws();
    if (pos_ >= text_.size()) fail("unbalanced '(': missing ')'");
    if (text_[pos_] != ')') fail("expected ')' to close '" + head + "'");
    advance();
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace detail

inline std::string render_source(const Program& p) {
  std::string out;
  detail::render_into(p.root, 0, out);
  return out;
}

inline Program parse_source(std::string_view text) {
  return detail::Parser(text).parse_program();
}

// Parses a single scalar literal such as "#4" or ":down".
inline Scalar parse_scalar(std::string_view text) {
  Program p = parse_source(text);
  const auto* l = std::get_if<Literal>(&p.root->node);
  if (!l) throw ParseError(1, 1, "expected a literal");
  return l->value;
}

}  // namespace tgi::dsl
