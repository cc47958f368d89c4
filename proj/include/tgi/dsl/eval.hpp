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
#include <utility>
#include <vector>

#include "tgi/dsl/primitives.hpp"
#include "tgi/dsl/term.hpp"
#include "tgi/dsl/typecheck.hpp"

namespace tgi::dsl {

namespace detail {

inline void collect_free(const TermPtr& t, std::vector<std::string>& bound,
                         std::set<std::string>& out) {
  auto is_bound = [&](const std::string& n) {
    return std::find(bound.begin(), bound.end(), n) != bound.end();
  };
  std::visit(
      [&](const auto& node) {
        using N = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<N, VarRef>) {
          if (!is_bound(node.name)) out.insert(node.name);
        } else if constexpr (std::is_same_v<N, Prim>) {
          for (const auto& a : node.args) collect_free(a, bound, out);
        } else if constexpr (std::is_same_v<N, Let>) {
          collect_free(node.bound, bound, out);
          bound.push_back(node.name);
          collect_free(node.body, bound, out);
          bound.pop_back();
        } else if constexpr (std::is_same_v<N, MapObjects>) {
          collect_free(node.objects, bound, out);
          bound.push_back(node.binder);
          collect_free(node.body, bound, out);
          bound.pop_back();
        } else if constexpr (std::is_same_v<N, FilterObjects>) {
          collect_free(node.objects, bound, out);
          bound.push_back(node.binder);
          collect_free(node.predicate, bound, out);
          bound.pop_back();
        } else if constexpr (std::is_same_v<N, FoldOverlay>) {
          collect_free(node.objects, bound, out);
          collect_free(node.canvas, bound, out);
        }
      },
      t->node);
}

class Evaluator {
 public:
  Evaluator(const Grid& input, const Env& env) : input_(input), env_(env) {}

  Value eval(const TermPtr& t) {
    return std::visit([&](const auto& node) { return visit(node); }, t->node);
  }

 private:
  Value visit(const InputRef&) { return input_; }
  Value visit(const Literal& l) { return l.value; }

  Value visit(const VarRef& v) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      if (it->first == v.name) return it->second;
    }
    if (auto it = env_.find(v.name); it != env_.end()) return it->second;
    throw UnboundVariable("'" + v.name + "'");
  }

  Value visit(const Prim& p) {
    if (p.op == kIf) {
      const bool cond = std::get<bool>(std::get<Scalar>(eval(p.args[0])));
      return eval(p.args[cond ? 1 : 2]);
    }
    const PrimitiveSpec* spec = find_primitive(p.op);
    if (!spec) throw UnknownPrimitive("'" + p.op + "'");
    std::vector<Value> args;
    args.reserve(p.args.size());
    for (const auto& a : p.args) args.push_back(eval(a));
    return spec->apply(args);
  }

  Value visit(const Let& l) {
    scopes_.emplace_back(l.name, eval(l.bound));
    Value out = eval(l.body);
    scopes_.pop_back();
    return out;
  }

  Value visit(const MapObjects& m) {
    GridObjects in = std::get<GridObjects>(eval(m.objects));
    GridObjects out;
    out.reserve(in.size());
    for (auto& o : in) {
      scopes_.emplace_back(m.binder, std::move(o));
      out.push_back(std::get<GridObject>(eval(m.body)));
      scopes_.pop_back();
    }
    return out;
  }

  Value visit(const FilterObjects& f) {
    GridObjects in = std::get<GridObjects>(eval(f.objects));
    GridObjects out;
    for (auto& o : in) {
      scopes_.emplace_back(f.binder, o);
      const bool keep = std::get<bool>(std::get<Scalar>(eval(f.predicate)));
      scopes_.pop_back();
      if (keep) out.push_back(std::move(o));
    }
    return out;
  }

  Value visit(const FoldOverlay& f) {
    const GridObjects objs = std::get<GridObjects>(eval(f.objects));
    Grid canvas = std::get<Grid>(eval(f.canvas));
    for (const auto& o : objs) canvas = overlay(canvas, o);
    return canvas;
  }

  const Grid& input_;
  const Env& env_;
  std::vector<std::pair<std::string, Value>> scopes_;
};

}  // namespace detail

// Names referenced but not bound by let or an object binder.
inline std::set<std::string> free_vars(const Program& p) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  if (p.root) detail::collect_free(p.root, bound, out);
  return out;
}

inline void require_bound(const Program& p, const Env& env) {
  for (const auto& name : free_vars(p)) {
    if (!env.contains(name)) throw UnboundVariable("'" + name + "'");
  }
}

// Evaluates a term that the caller has already typechecked.
inline Value eval_term(const TermPtr& t, const Grid& input, const Env& env) {
  return detail::Evaluator(input, env).eval(t);
}

inline Grid eval(const Program& p, const Grid& input, const Env& env = {}) {
  require_bound(p, env);
  typecheck(p, types_of(env));
  return std::get<Grid>(eval_term(p.root, input, env));
}

namespace detail {

// Substitutes known scalars and folds input-independent scalar sub-terms.
// scope maps a name to its literal value, or nullopt when an inner binder
// shadows it.
class PartialEvaluator {
 public:
  explicit PartialEvaluator(const Env& env) {
    for (const auto& [k, v] : env) scope_.emplace_back(k, v);
  }

  TermPtr pe(const TermPtr& t) {
    return std::visit([&](const auto& node) { return visit(t, node); }, t->node);
  }

 private:
  using Binding = std::pair<std::string, std::optional<Scalar>>;

  static const Literal* as_literal(const TermPtr& t) { return std::get_if<Literal>(&t->node); }

  TermPtr visit(const TermPtr& t, const InputRef&) { return t; }
  TermPtr visit(const TermPtr& t, const Literal&) { return t; }

  TermPtr visit(const TermPtr& t, const VarRef& v) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == v.name) return it->second ? lit(*it->second) : t;
    }
    throw UnboundVariable("'" + v.name + "'");
  }

  TermPtr visit(const TermPtr&, const Prim& p) {
    if (p.op == kIf && p.args.size() == 3) {
      TermPtr cond = pe(p.args[0]);
      if (const Literal* l = as_literal(cond)) {
        return pe(p.args[std::get<bool>(l->value) ? 1 : 2]);
      }
      return prim(p.op, {cond, pe(p.args[1]), pe(p.args[2])});
    }
    std::vector<TermPtr> args;
    args.reserve(p.args.size());
    bool all_literal = true;
    for (const auto& a : p.args) {
      args.push_back(pe(a));
      all_literal = all_literal && as_literal(args.back());
    }
    const PrimitiveSpec* spec = find_primitive(p.op);
    if (all_literal && spec && spec->apply &&
        (p.op == kEq || is_scalar_type(spec->result))) {
      std::vector<Value> vals;
      for (const auto& a : args) vals.emplace_back(as_literal(a)->value);
      return lit(std::get<Scalar>(spec->apply(vals)));
    }
    return prim(p.op, std::move(args));
  }

  TermPtr visit(const TermPtr&, const Let& l) {
    TermPtr bound = pe(l.bound);
    if (const Literal* v = as_literal(bound)) {
      scope_.emplace_back(l.name, v->value);
      TermPtr body = pe(l.body);
      scope_.pop_back();
      return body;
    }
    scope_.emplace_back(l.name, std::nullopt);
    TermPtr body = pe(l.body);
    scope_.pop_back();
    return let(l.name, std::move(bound), std::move(body));
  }

  TermPtr visit(const TermPtr&, const MapObjects& m) {
    TermPtr objs = pe(m.objects);
    scope_.emplace_back(m.binder, std::nullopt);
    TermPtr body = pe(m.body);
    scope_.pop_back();
    return map_objects(m.binder, std::move(objs), std::move(body));
  }

  TermPtr visit(const TermPtr&, const FilterObjects& f) {
    TermPtr objs = pe(f.objects);
    scope_.emplace_back(f.binder, std::nullopt);
    TermPtr pred = pe(f.predicate);
    scope_.pop_back();
    return filter_objects(f.binder, std::move(objs), std::move(pred));
  }

  TermPtr visit(const TermPtr&, const FoldOverlay& f) {
    return fold_overlay(pe(f.objects), pe(f.canvas));
  }

  std::vector<Binding> scope_;
};

}  // namespace detail

// Inlines every variable bound in env and folds constant scalar sub-terms,
// so the result depends only on the input grid.
inline Program partial_eval(const Program& p, const Env& env = {}) {
  require_bound(p, env);
  typecheck(p, types_of(env));
  Program out{detail::PartialEvaluator(env).pe(p.root)};
  typecheck(out);
  return out;
}

}  // namespace tgi::dsl
