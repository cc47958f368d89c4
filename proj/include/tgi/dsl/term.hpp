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
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tgi/grid.hpp"
#include "tgi/objects.hpp"

namespace tgi::dsl {

inline constexpr std::string_view kDslVersion = "1.0.0";

enum class Direction { up, down, left, right };
enum class SortKey { size_asc, size_desc, top, left };

enum class Type {
  grid,
  object,
  objects,
  integer,
  color,
  boolean,
  direction,
  axis,
  connectivity,
  mode,
  sort_key,
  text,
};

inline std::string_view type_name(Type t) {
  switch (t) {
    case Type::grid: return "Grid";
    case Type::object: return "Object";
    case Type::objects: return "Objects";
    case Type::integer: return "Int";
    case Type::color: return "Color";
    case Type::boolean: return "Bool";
    case Type::direction: return "Direction";
    case Type::axis: return "Axis";
    case Type::connectivity: return "Connectivity";
    case Type::mode: return "Mode";
    case Type::sort_key: return "SortKey";
    case Type::text: return "Text";
  }
  return "?";
}

inline bool is_scalar_type(Type t) {
  return t != Type::grid && t != Type::object && t != Type::objects;
}

// Scalar values: literals, task variables, and template arguments. Text
// exists only for template rendering and never typechecks inside a program.
using Scalar = std::variant<std::int64_t, Color, bool, Direction, Axis, Connectivity,
                            ExtractionKind, SortKey, std::string>;

inline Type scalar_type(const Scalar& s) {
  static constexpr Type kTypes[] = {Type::integer,      Type::color, Type::boolean,
                                    Type::direction,    Type::axis,  Type::connectivity,
                                    Type::mode,         Type::sort_key, Type::text};
  return kTypes[s.index()];
}

using Env = std::map<std::string, Scalar, std::less<>>;

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct InputRef {
  friend bool operator==(const InputRef&, const InputRef&) = default;
};
struct VarRef {
  std::string name;
  friend bool operator==(const VarRef&, const VarRef&) = default;
};
struct Literal {
  Scalar value;
  friend bool operator==(const Literal&, const Literal&) = default;
};
struct Prim {
  std::string op;
  std::vector<TermPtr> args;
};
struct Let {
  std::string name;
  TermPtr bound;
  TermPtr body;
};
// body maps one object (bound to binder) to an object.
struct MapObjects {
  std::string binder;
  TermPtr objects;
  TermPtr body;
};
// predicate is a Bool term over binder.
struct FilterObjects {
  std::string binder;
  TermPtr objects;
  TermPtr predicate;
};
// Overlays each object, in order, onto the canvas grid.
struct FoldOverlay {
  TermPtr objects;
  TermPtr canvas;
};

struct Term {
  std::variant<InputRef, VarRef, Literal, Prim, Let, MapObjects, FilterObjects, FoldOverlay>
      node;
};

bool operator==(const Term& a, const Term& b);

inline bool same(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

inline bool operator==(const Prim& a, const Prim& b) {
  if (a.op != b.op || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!same(a.args[i], b.args[i])) return false;
  }
  return true;
}
inline bool operator==(const Let& a, const Let& b) {
  return a.name == b.name && same(a.bound, b.bound) && same(a.body, b.body);
}
inline bool operator==(const MapObjects& a, const MapObjects& b) {
  return a.binder == b.binder && same(a.objects, b.objects) && same(a.body, b.body);
}
inline bool operator==(const FilterObjects& a, const FilterObjects& b) {
  return a.binder == b.binder && same(a.objects, b.objects) &&
         same(a.predicate, b.predicate);
}
inline bool operator==(const FoldOverlay& a, const FoldOverlay& b) {
  return same(a.objects, b.objects) && same(a.canvas, b.canvas);
}
inline bool operator==(const Term& a, const Term& b) { return a.node == b.node; }

// Term constructors, used by generator definitions and tests.
inline TermPtr input() { return std::make_shared<Term>(Term{InputRef{}}); }
inline TermPtr var(std::string name) {
  return std::make_shared<Term>(Term{VarRef{std::move(name)}});
}
inline TermPtr lit(Scalar v) { return std::make_shared<Term>(Term{Literal{std::move(v)}}); }
inline TermPtr lit_int(std::int64_t v) { return lit(Scalar{v}); }
inline TermPtr lit_color(int v) { return lit(Scalar{Color(v)}); }
inline TermPtr prim(std::string op, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Term{Prim{std::move(op), std::move(args)}});
}
inline TermPtr let(std::string name, TermPtr bound, TermPtr body) {
  return std::make_shared<Term>(Term{Let{std::move(name), std::move(bound), std::move(body)}});
}
inline TermPtr map_objects(std::string binder, TermPtr objects, TermPtr body) {
  return std::make_shared<Term>(
      Term{MapObjects{std::move(binder), std::move(objects), std::move(body)}});
}
inline TermPtr filter_objects(std::string binder, TermPtr objects, TermPtr predicate) {
  return std::make_shared<Term>(
      Term{FilterObjects{std::move(binder), std::move(objects), std::move(predicate)}});
}
inline TermPtr fold_overlay(TermPtr objects, TermPtr canvas) {
  return std::make_shared<Term>(Term{FoldOverlay{std::move(objects), std::move(canvas)}});
}

// A transformation program: a closed-or-open term whose root denotes a grid.
struct Program {
  TermPtr root;

  friend bool operator==(const Program& a, const Program& b) { return same(a.root, b.root); }
};

}  // namespace tgi::dsl
