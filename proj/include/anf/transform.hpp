#pragma once

// The ANF transformation: a deterministic pass threading an explicit fresh
// name supply, emitting a 1-hole context plus the variable that names the
// result. The whole program for e is C[halt r].
//
// Draw order is fixed so output is deterministic: a lambda draws its
// parameter before its function name; a constructor draws the bound name
// before translating its arguments; an application draws the result name
// after both subterms. The relational checker (spec_check.hpp) accepts any
// fresh choice, not just this one.
//
// Match has no 1-hole translation with holes only in continuation
// position, so it goes through a join point: the scrutinee's context is
// followed by a one-parameter join function whose body is the hole and
// whose continuation is the case dispatch; every branch projects its
// fields and tail-calls the join with the branch result.

#include <cstdint>
#include <string>
#include <vector>

#include "anf/syntax.hpp"

namespace anf {

// Result of translating one expression: S |- e, xs ~> C, r, S'.
struct AnfOutput {
  CtxPtr ctx;
  Var result;
  NameSupply supply_after;
};

struct AnfSeqOutput {
  CtxPtr ctx;
  std::vector<Var> results;
  NameSupply supply_after;
};

// Names for the de Bruijn indices of the term under translation;
// names[0] is the innermost binder.
using DbNameEnv = std::vector<Var>;

inline AnfOutput anf_exp(const SrcExprPtr& e, const DbNameEnv& xs, NameSupply s,
                         const CtorTable& ctors);

inline AnfSeqOutput anf_exps(const std::vector<SrcExprPtr>& es, const DbNameEnv& xs,
                             NameSupply s, const CtorTable& ctors) {
  CtxPtr ctx = ctx_hole();
  std::vector<Var> results;
  results.reserve(es.size());
  for (const auto& e : es) {
    AnfOutput out = anf_exp(e, xs, s, ctors);
    ctx = compose(ctx, out.ctx);
    results.push_back(out.result);
    s = out.supply_after;
  }
  return {std::move(ctx), std::move(results), s};
}

inline AnfOutput anf_exp(const SrcExprPtr& e, const DbNameEnv& xs, NameSupply s,
                         const CtorTable& ctors) {
  return std::visit(
      Overloaded{
          [&](const SVar& n) -> AnfOutput {
            if (n.index >= xs.size())
              throw TransformError("de Bruijn index " + std::to_string(n.index) +
                                   " out of range");
            return {ctx_hole(), xs[n.index], s};
          },
          [&](const SFun& n) -> AnfOutput {
            Var x1 = s.fresh();
            Var f = s.fresh();
            DbNameEnv body_xs;
            body_xs.reserve(xs.size() + 1);
            body_xs.push_back(x1);
            body_xs.insert(body_xs.end(), xs.begin(), xs.end());
            AnfOutput body = anf_exp(n.body, body_xs, s, ctors);
            AnfExprPtr fn_body = plug(body.ctx, anf_halt(body.result));
            return {ctx_letfun(f, {x1}, std::move(fn_body), ctx_hole()), f,
                    body.supply_after};
          },
          [&](const SApp& n) -> AnfOutput {
            AnfOutput fn = anf_exp(n.fn, xs, s, ctors);
            AnfOutput arg = anf_exp(n.arg, xs, fn.supply_after, ctors);
            NameSupply s3 = arg.supply_after;
            Var r = s3.fresh();
            CtxPtr call = ctx_letapp(r, fn.result, {arg.result}, ctx_hole());
            return {compose(fn.ctx, compose(arg.ctx, call)), r, s3};
          },
          [&](const SCon& n) -> AnfOutput {
            if (!ctors.known(n.tag))
              throw TransformError("unknown constructor tag: " + n.tag);
            if (*ctors.arity(n.tag) != n.args.size())
              throw TransformError("constructor " + n.tag + " arity mismatch");
            Var z = s.fresh();  // drawn before the arguments
            AnfSeqOutput args = anf_exps(n.args, xs, s, ctors);
            CtxPtr alloc = ctx_letcon(z, n.tag, args.results, ctx_hole());
            return {compose(args.ctx, alloc), z, args.supply_after};
          },
          [&](const SLet& n) -> AnfOutput {
            AnfOutput bound = anf_exp(n.bound, xs, s, ctors);
            DbNameEnv body_xs;
            body_xs.reserve(xs.size() + 1);
            body_xs.push_back(bound.result);
            body_xs.insert(body_xs.end(), xs.begin(), xs.end());
            AnfOutput body = anf_exp(n.body, body_xs, bound.supply_after, ctors);
            return {compose(bound.ctx, body.ctx), body.result, body.supply_after};
          },
          [&](const SMatch& n) -> AnfOutput {
            AnfOutput scrut = anf_exp(n.scrutinee, xs, s, ctors);
            Var y = scrut.result;
            NameSupply cur = scrut.supply_after;
            Var join = cur.fresh();
            Var xr = cur.fresh();
            std::vector<std::pair<std::string, AnfExprPtr>> branches;
            branches.reserve(n.branches.size());
            for (const auto& [tag, body] : n.branches) {
              auto arity = ctors.arity(tag);
              if (!arity) throw TransformError("unknown constructor tag: " + tag);
              std::vector<Var> fields;
              fields.reserve(*arity);
              for (uint32_t i = 0; i < *arity; ++i) fields.push_back(cur.fresh());
              // Branch scope mirrors the source semantics: the last field
              // is the innermost binder.
              DbNameEnv branch_xs;
              branch_xs.reserve(xs.size() + *arity);
              for (auto it = fields.rbegin(); it != fields.rend(); ++it)
                branch_xs.push_back(*it);
              branch_xs.insert(branch_xs.end(), xs.begin(), xs.end());
              AnfOutput tr = anf_exp(body, branch_xs, cur, ctors);
              cur = tr.supply_after;
              AnfExprPtr branch_body =
                  plug(tr.ctx, anf_tailcall(join, {tr.result}));
              for (uint32_t i = *arity; i > 0; --i)
                branch_body = anf_proj(fields[i - 1], y, i - 1, std::move(branch_body));
              branches.emplace_back(tag, std::move(branch_body));
            }
            CtxPtr join_ctx =
                ctx_joinfun(join, xr, ctx_hole(), anf_case(y, std::move(branches)));
            return {compose(scrut.ctx, join_ctx), xr, cur};
          },
      },
      e->node);
}

// Whole-program transformation of a closed term: plug halt into the hole.
inline AnfExprPtr anf_program(const SrcExprPtr& e, const CtorTable& ctors,
                              NameSupply s = NameSupply{}) {
  if (!well_formed_src(e, 0, ctors))
    throw TransformError("program is not closed and well formed");
  AnfOutput out = anf_exp(e, {}, s, ctors);
  return plug(out.ctx, anf_halt(out.result));
}

// ---------------------------------------------------------------------------
// Value and environment translation. Constructor values map structurally; a
// source closure becomes a named target closure whose environment binds one
// fresh name per captured value, with the body translated under
// parameter :: captured-names.

struct ValTranslation {
  AnfValuePtr value;
  NameSupply supply_after;
};

inline ValTranslation translate_val(const SrcValuePtr& v, NameSupply s,
                                    const CtorTable& ctors) {
  if (const auto* conv = std::get_if<SrcConV>(&v->v)) {
    if (!ctors.known(conv->tag))
      throw TransformError("unknown constructor tag: " + conv->tag);
    std::vector<AnfValuePtr> fields;
    fields.reserve(conv->fields.size());
    for (const auto& f : conv->fields) {
      ValTranslation t = translate_val(f, s, ctors);
      fields.push_back(std::move(t.value));
      s = t.supply_after;
    }
    return {anf_conv(conv->tag, std::move(fields)), s};
  }
  const auto& clos = std::get<SrcClosV>(v->v);
  std::vector<SrcValuePtr> captured = src_env_to_vector(clos.env);
  Var param = s.fresh();
  Var fname = s.fresh();
  std::vector<Var> names;
  names.reserve(captured.size());
  for (size_t i = 0; i < captured.size(); ++i) names.push_back(s.fresh());
  AnfEnv env;
  for (size_t i = 0; i < captured.size(); ++i) {
    ValTranslation t = translate_val(captured[i], s, ctors);
    env = env_bind(env, names[i], std::move(t.value));
    s = t.supply_after;
  }
  DbNameEnv body_xs;
  body_xs.reserve(names.size() + 1);
  body_xs.push_back(param);
  body_xs.insert(body_xs.end(), names.begin(), names.end());
  AnfOutput body = anf_exp(clos.body, body_xs, s, ctors);
  AnfExprPtr fn_body = plug(body.ctx, anf_halt(body.result));
  return {anf_closv(std::move(env), fname, {param}, std::move(fn_body)),
          body.supply_after};
}

struct EnvTranslation {
  AnfEnv env;
  NameSupply supply_after;
};

// Build a target environment binding xs[i] to the translation of vs[i].
// A duplicated name is accepted only when the translations it would carry
// are alpha-equivalent; the later one is kept.
inline EnvTranslation translate_env(const DbNameEnv& xs,
                                    const std::vector<SrcValuePtr>& vs, NameSupply s,
                                    const CtorTable& ctors) {
  if (xs.size() != vs.size())
    throw TransformError("environment translation: " + std::to_string(xs.size()) +
                         " names vs " + std::to_string(vs.size()) + " values");
  AnfEnv env;
  for (size_t i = 0; i < xs.size(); ++i) {
    ValTranslation t = translate_val(vs[i], s, ctors);
    s = t.supply_after;
    if (const AnfValuePtr* prev = env_lookup(env, xs[i])) {
      if (!val_alpha_eq(*prev, t.value))
        throw DuplicateNameError(xs[i].name + " bound to conflicting values");
    }
    env = env_bind(env, xs[i], std::move(t.value));
  }
  return {std::move(env), s};
}

}  // namespace anf
