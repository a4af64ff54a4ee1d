#pragma once

// Fuel-instrumented big-step interpreter for the ANF target language.
//
// Cost model: one unit per rule, charged when the rule fires. Variable
// lookups inside a rule are free. A non-tail call (letapp) charges its unit
// before the callee body runs, then the body's cost, then the continuation.
// Closures are recursive: the function name is rebound to the closure when
// the call enters the body.

#include <cstdint>
#include <string>
#include <vector>

#include "anf/syntax.hpp"

namespace anf {

struct AnfEvaluation {
  AnfValuePtr value;  // null means out of time
  uint64_t consumed = 0;

  bool out_of_time() const { return value == nullptr; }
};

// A configuration of the target machine: an environment paired with the
// expression it evaluates.
struct AnfConfig {
  AnfEnv env;
  AnfExprPtr expr;
};

namespace detail {

struct AnfReturnK { AnfEnv env; Var bind; AnfExprPtr cont; };

inline const AnfValuePtr& anf_lookup(const AnfEnv& env, const Var& x) {
  const AnfValuePtr* v = env_lookup(env, x);
  if (v == nullptr) throw StuckError("unbound variable " + x.name);
  return *v;
}

// Environment for entering a closure body: captured env, parameters bound
// to the argument values, then the function name rebound to the closure.
inline AnfEnv enter_closure(const AnfValuePtr& fnval, const AnfClosV& clos,
                            const std::vector<Var>& args, const AnfEnv& caller) {
  if (args.size() != clos.params.size())
    throw StuckError("arity mismatch: " + clos.fname.name + " takes " +
                     std::to_string(clos.params.size()) + " argument(s), got " +
                     std::to_string(args.size()));
  AnfEnv env = clos.env;
  for (size_t i = 0; i < args.size(); ++i)
    env = env_bind(env, clos.params[i], anf_lookup(caller, args[i]));
  return env_bind(env, clos.fname, fnval);
}

}  // namespace detail

inline AnfEvaluation eval_anf(AnfEnv env, AnfExprPtr expr, uint64_t budget) {
  using namespace detail;
  uint64_t fuel = budget;
  std::vector<AnfReturnK> stack;

  while (true) {
    if (fuel == 0) return {nullptr, budget};
    --fuel;
    const AnfExpr& e = *expr;
    if (const auto* n = std::get_if<ALetCon>(&e.node)) {
      std::vector<AnfValuePtr> fields;
      fields.reserve(n->args.size());
      for (const auto& y : n->args) fields.push_back(anf_lookup(env, y));
      env = env_bind(env, n->name, anf_conv(n->tag, std::move(fields)));
      expr = n->cont;
    } else if (const auto* n = std::get_if<AProj>(&e.node)) {
      const AnfValuePtr& v = anf_lookup(env, n->tuple);
      const auto* conv = std::get_if<AnfConV>(&v->v);
      if (conv == nullptr) throw StuckError("projection from a non-constructor value");
      if (n->index >= conv->fields.size())
        throw StuckError("projection index " + std::to_string(n->index) +
                         " out of range for " + conv->tag);
      env = env_bind(env, n->name, conv->fields[n->index]);
      expr = n->cont;
    } else if (const auto* n = std::get_if<ALetFun>(&e.node)) {
      env = env_bind(env, n->fname, anf_closv(env, n->fname, n->params, n->body));
      expr = n->cont;
    } else if (const auto* n = std::get_if<ALetApp>(&e.node)) {
      const AnfValuePtr& fnval = anf_lookup(env, n->fn);
      const auto* clos = std::get_if<AnfClosV>(&fnval->v);
      if (clos == nullptr) throw StuckError("call of non-closure " + n->fn.name);
      AnfEnv callee_env = enter_closure(fnval, *clos, n->args, env);
      stack.push_back(AnfReturnK{std::move(env), n->name, n->cont});
      env = std::move(callee_env);
      expr = clos->body;
    } else if (const auto* n = std::get_if<ACase>(&e.node)) {
      const AnfValuePtr& v = anf_lookup(env, n->scrutinee);
      const auto* conv = std::get_if<AnfConV>(&v->v);
      if (conv == nullptr) throw StuckError("case on a non-constructor value");
      const AnfExprPtr* body = nullptr;
      for (const auto& [tag, b] : n->branches)
        if (tag == conv->tag) {
          body = &b;
          break;
        }
      if (body == nullptr)
        throw StuckError("no branch matches constructor " + conv->tag);
      expr = *body;
    } else if (const auto* n = std::get_if<ATailCall>(&e.node)) {
      const AnfValuePtr& fnval = anf_lookup(env, n->fn);
      const auto* clos = std::get_if<AnfClosV>(&fnval->v);
      if (clos == nullptr) throw StuckError("call of non-closure " + n->fn.name);
      env = enter_closure(fnval, *clos, n->args, env);
      expr = clos->body;
    } else {
      const auto* n = std::get_if<AHalt>(&e.node);
      AnfValuePtr v = anf_lookup(env, n->name);
      if (stack.empty()) return {std::move(v), budget - fuel};
      AnfReturnK k = std::move(stack.back());
      stack.pop_back();
      env = env_bind(std::move(k.env), std::move(k.bind), std::move(v));
      expr = std::move(k.cont);
    }
  }
}

inline AnfEvaluation eval_anf(const AnfConfig& cfg, uint64_t budget) {
  return eval_anf(cfg.env, cfg.expr, budget);
}

}  // namespace anf
