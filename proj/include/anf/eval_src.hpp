#pragma once

// Fuel-instrumented big-step interpreter for the source language.
//
// Cost model: every rule charges exactly one unit when it fires. If the
// budget is exhausted before a rule can charge, the result is OOT with the
// whole budget consumed. Running out of fuel is not an error; reaching a
// configuration with no applicable rule raises StuckError.
//
// The interpreter runs as an explicit machine with a heap-allocated frame
// stack, so deeply recursive (or diverging) programs are bounded by fuel,
// not by the C++ call stack.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "anf/syntax.hpp"

namespace anf {

struct SrcEvaluation {
  SrcValuePtr value;  // null means out of time
  uint64_t consumed = 0;

  bool out_of_time() const { return value == nullptr; }
};

namespace detail {

struct SrcLetK { SrcEnv env; SrcExprPtr body; };
struct SrcAppFnK { SrcEnv env; SrcExprPtr arg; };
struct SrcAppArgK { SrcValuePtr fn; };
struct SrcConK {
  SrcEnv env;
  const SCon* node;
  size_t next = 0;
  std::vector<SrcValuePtr> vals;
};
struct SrcMatchK { SrcEnv env; const SMatch* node; };

using SrcFrame = std::variant<SrcLetK, SrcAppFnK, SrcAppArgK, SrcConK, SrcMatchK>;

}  // namespace detail

inline SrcEvaluation eval_src(SrcEnv env, SrcExprPtr expr, uint64_t budget,
                              const CtorTable& /*ctors*/) {
  using namespace detail;
  uint64_t fuel = budget;
  std::vector<SrcFrame> stack;
  SrcValuePtr result;
  bool returning = false;

  while (true) {
    if (!returning) {
      if (fuel == 0) return {nullptr, budget};
      --fuel;  // the rule for this node charges one unit at its root
      const SrcExpr& e = *expr;
      if (const auto* n = std::get_if<SVar>(&e.node)) {
        const SrcValuePtr* v = src_env_nth(env, n->index);
        if (v == nullptr)
          throw StuckError("unbound de Bruijn index " + std::to_string(n->index));
        result = *v;
        returning = true;
      } else if (const auto* n = std::get_if<SFun>(&e.node)) {
        result = src_closv(env, n->body);
        returning = true;
      } else if (const auto* n = std::get_if<SLet>(&e.node)) {
        stack.push_back(SrcLetK{env, n->body});
        expr = n->bound;
      } else if (const auto* n = std::get_if<SApp>(&e.node)) {
        stack.push_back(SrcAppFnK{env, n->arg});
        expr = n->fn;
      } else if (const auto* n = std::get_if<SCon>(&e.node)) {
        if (n->args.empty()) {
          result = src_conv(n->tag, {});
          returning = true;
        } else {
          SrcConK k{env, n};
          k.vals.reserve(n->args.size());
          stack.push_back(std::move(k));
          expr = n->args[0];
        }
      } else {
        const auto* n = std::get_if<SMatch>(&e.node);
        stack.push_back(SrcMatchK{env, n});
        expr = n->scrutinee;
      }
      continue;
    }

    // Deliver `result` to the innermost pending frame.
    if (stack.empty()) return {result, budget - fuel};
    SrcFrame& top = stack.back();
    if (auto* k = std::get_if<SrcLetK>(&top)) {
      env = src_env_cons(result, k->env);
      expr = k->body;
      stack.pop_back();
      returning = false;
    } else if (auto* k = std::get_if<SrcAppFnK>(&top)) {
      SrcEnv arg_env = k->env;
      SrcExprPtr arg = k->arg;
      top = SrcAppArgK{result};
      env = std::move(arg_env);
      expr = std::move(arg);
      returning = false;
    } else if (auto* k = std::get_if<SrcAppArgK>(&top)) {
      const auto* clos = std::get_if<SrcClosV>(&k->fn->v);
      if (clos == nullptr) throw StuckError("application of a non-closure value");
      env = src_env_cons(result, clos->env);
      expr = clos->body;
      stack.pop_back();
      returning = false;  // closure body evaluation is in tail position
    } else if (auto* k = std::get_if<SrcConK>(&top)) {
      k->vals.push_back(result);
      ++k->next;
      if (k->next < k->node->args.size()) {
        env = k->env;
        expr = k->node->args[k->next];
        returning = false;
      } else {
        result = src_conv(k->node->tag, std::move(k->vals));
        stack.pop_back();
      }
    } else {
      auto* k = std::get_if<SrcMatchK>(&top);
      const auto* conv = std::get_if<SrcConV>(&result->v);
      if (conv == nullptr) throw StuckError("match on a non-constructor value");
      const SrcExprPtr* body = nullptr;
      for (const auto& [tag, b] : k->node->branches)
        if (tag == conv->tag) {
          body = &b;
          break;
        }
      if (body == nullptr)
        throw StuckError("no branch matches constructor " + conv->tag);
      // Fields are pushed left to right, so the last field gets index 0.
      SrcEnv branch_env = k->env;
      for (const auto& f : conv->fields) branch_env = src_env_cons(f, branch_env);
      env = std::move(branch_env);
      expr = *body;
      stack.pop_back();
      returning = false;
    }
  }
}

inline SrcEvaluation eval_src(const std::vector<SrcValuePtr>& env, SrcExprPtr expr,
                              uint64_t budget, const CtorTable& ctors) {
  return eval_src(src_env_of(env), std::move(expr), budget, ctors);
}

}  // namespace anf
