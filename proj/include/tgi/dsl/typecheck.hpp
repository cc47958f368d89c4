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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tgi/dsl/primitives.hpp"
#include "tgi/dsl/term.hpp"

namespace tgi::dsl {

using TypeEnv = std::map<std::string, Type, std::less<>>;

// Type of every term by path ("root", "root.0", "root.0.1", ...), plus the
// types assumed or inferred for free variables.
struct TypeAssignment {
  Type root = Type::grid;
  std::vector<std::pair<std::string, Type>> terms;
  TypeEnv free_vars;
};

inline TypeEnv types_of(const Env& env) {
  TypeEnv out;
  for (const auto& [name, value] : env) out.emplace(name, scalar_type(value));
  return out;
}

namespace detail {

class TypeChecker {
 public:
  explicit TypeChecker(TypeEnv free) : free_(std::move(free)) {}

  Type check(const TermPtr& t, const std::string& path, Type expected) {
    const Type found = infer(t, path, expected);
    if (found != expected) mismatch(path, expected, found);
    return found;
  }

  Type infer(const TermPtr& t, const std::string& path, std::optional<Type> expected) {
    const Type ty = std::visit([&](const auto& node) { return visit(node, path, expected); },
                               t->node);
    out_.terms.emplace_back(path, ty);
    return ty;
  }

  TypeAssignment finish(Type root) {
    out_.root = root;
    out_.free_vars = free_;
    return std::move(out_);
  }

 private:
  [[noreturn]] static void mismatch(const std::string& path, Type expected, Type found) {
    throw TypeError("at " + path + ": expected " + std::string(type_name(expected)) +
                    ", found " + std::string(type_name(found)));
  }

  Type visit(const InputRef&, const std::string&, std::optional<Type>) { return Type::grid; }

  Type visit(const Literal& l, const std::string& path, std::optional<Type>) {
    const Type t = scalar_type(l.value);
    if (t == Type::text) throw TypeError("at " + path + ": text literal in a program");
    return t;
  }

  std::optional<Type> lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    if (auto f = free_.find(name); f != free_.end()) return f->second;
    return std::nullopt;
  }

  Type visit(const VarRef& v, const std::string& path, std::optional<Type> expected) {
    if (auto t = lookup(v.name)) {
      if (*t == Type::text) throw TypeError("at " + path + ": '" + v.name + "' is text");
      return *t;
    }
    if (!expected) {
      throw TypeError("at " + path + ": cannot infer the type of free variable '" +
                      v.name + "'");
    }
    if (!is_scalar_type(*expected)) {
      throw TypeError("at " + path + ": free variable '" + v.name +
                      "' must be a scalar, used as " + std::string(type_name(*expected)));
    }
    free_.emplace(v.name, *expected);
    return *expected;
  }

  static bool is_unresolved_var(const TermPtr& t, const TypeChecker& self) {
    const auto* v = std::get_if<VarRef>(&t->node);
    return v && !self.lookup(v->name);
  }

  Type visit(const Prim& p, const std::string& path, std::optional<Type> expected) {
    const PrimitiveSpec* spec = find_primitive(p.op);
    if (!spec) throw UnknownPrimitive("at " + path + ": '" + p.op + "'");
    auto arg_path = [&](std::size_t i) { return path + "." + std::to_string(i); };
    auto arity = [&](std::size_t n) {
      if (p.args.size() != n) {
        throw TypeError("at " + path + ": '" + p.op + "' takes " + std::to_string(n) +
                        " arguments, found " + std::to_string(p.args.size()));
      }
    };

    if (p.op == kIf) {
      arity(3);
      check(p.args[0], arg_path(0), Type::boolean);
      std::optional<Type> branch = expected;
      if (!branch && is_unresolved_var(p.args[1], *this)) {
        branch = infer(p.args[2], arg_path(2), std::nullopt);
        check(p.args[1], arg_path(1), *branch);
        return *branch;
      }
      const Type then_t = infer(p.args[1], arg_path(1), branch);
      check(p.args[2], arg_path(2), then_t);
      return then_t;
    }
    if (p.op == kEq) {
      arity(2);
      Type lhs;
      if (is_unresolved_var(p.args[0], *this)) {
        lhs = infer(p.args[1], arg_path(1), std::nullopt);
        check(p.args[0], arg_path(0), lhs);
      } else {
        lhs = infer(p.args[0], arg_path(0), std::nullopt);
        check(p.args[1], arg_path(1), lhs);
      }
      if (!is_scalar_type(lhs)) {
        throw TypeError("at " + path + ": eq compares scalars, found " +
                        std::string(type_name(lhs)));
      }
      return Type::boolean;
    }

    if (spec->color_pairs_tail) {
      const std::size_t fixed = spec->params.size();
      if (p.args.size() < fixed + 2 || (p.args.size() - fixed) % 2 != 0) {
        throw TypeError("at " + path + ": '" + p.op +
                        "' needs its fixed arguments followed by (from, to) color pairs");
      }
    } else {
      arity(spec->params.size());
    }
    for (std::size_t i = 0; i < p.args.size(); ++i) {
      const Type want = i < spec->params.size() ? spec->params[i] : Type::color;
      check(p.args[i], arg_path(i), want);
    }
    return spec->result;
  }

  Type visit(const Let& l, const std::string& path, std::optional<Type> expected) {
    const Type bound = infer(l.bound, path + ".bound", std::nullopt);
    scopes_.emplace_back(l.name, bound);
    const Type body = infer(l.body, path + ".body", expected);
    scopes_.pop_back();
    return body;
  }

  Type visit(const MapObjects& m, const std::string& path, std::optional<Type>) {
    check(m.objects, path + ".objects", Type::objects);
    scopes_.emplace_back(m.binder, Type::object);
    check(m.body, path + ".body", Type::object);
    scopes_.pop_back();
    return Type::objects;
  }

  Type visit(const FilterObjects& f, const std::string& path, std::optional<Type>) {
    check(f.objects, path + ".objects", Type::objects);
    scopes_.emplace_back(f.binder, Type::object);
    check(f.predicate, path + ".predicate", Type::boolean);
    scopes_.pop_back();
    return Type::objects;
  }

  Type visit(const FoldOverlay& f, const std::string& path, std::optional<Type>) {
    check(f.objects, path + ".objects", Type::objects);
    check(f.canvas, path + ".canvas", Type::grid);
    return Type::grid;
  }

  TypeEnv free_;
  std::vector<std::pair<std::string, Type>> scopes_;
  TypeAssignment out_;
};

}  // namespace detail

// Types every term; the root of a valid program is a Grid. Free variables
// take their type from `free` when listed, otherwise from their use site.
inline TypeAssignment typecheck(const Program& p, const TypeEnv& free = {}) {
  if (!p.root) throw TypeError("empty program");
  detail::TypeChecker checker(free);
  const Type root = checker.check(p.root, "root", Type::grid);
  return checker.finish(root);
}

}  // namespace tgi::dsl
