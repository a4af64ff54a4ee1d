#pragma once

// Core syntax for the direct-style source language and the ANF target
// language, plus 1-hole contexts, the constructor table and the fresh-name
// supply. All values here are immutable after construction and safe to
// share between threads.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace anf {

template <class... Ts> struct Overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

// ---------------------------------------------------------------------------
// Errors

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int line_, int column_, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(column_) + ": " + msg),
        line(line_), column(column_) {}
};

// Raised when an interpreter reaches a configuration with no applicable
// rule. Deliberately distinct from running out of fuel.
struct StuckError : std::runtime_error {
  explicit StuckError(const std::string& msg)
      : std::runtime_error("stuck: " + msg) {}
};

struct TransformError : std::runtime_error {
  explicit TransformError(const std::string& msg)
      : std::runtime_error("transform error: " + msg) {}
};

struct DuplicateNameError : std::runtime_error {
  explicit DuplicateNameError(const std::string& msg)
      : std::runtime_error("duplicate name: " + msg) {}
};

// ---------------------------------------------------------------------------
// Named variables

struct Var {
  std::string name;

  Var() = default;
  explicit Var(std::string n) : name(std::move(n)) {}

  friend bool operator==(const Var& a, const Var& b) { return a.name == b.name; }
  friend bool operator!=(const Var& a, const Var& b) { return a.name != b.name; }
  friend bool operator<(const Var& a, const Var& b) { return a.name < b.name; }
};

struct VarHash {
  size_t operator()(const Var& v) const {
    return std::hash<std::string>{}(v.name);
  }
};

// Supply of fresh names backed by a counter: the represented set is
// { prefix<m> | m >= next }, so drawing a name just bumps the counter.
struct NameSupply {
  uint64_t next = 0;
  std::string prefix = "v";

  NameSupply() = default;
  explicit NameSupply(uint64_t n, std::string p = "v")
      : next(n), prefix(std::move(p)) {}

  Var fresh() { return Var(prefix + std::to_string(next++)); }

  // Draw with an alternate prefix. The counter is shared, so names stay
  // pairwise distinct across prefixes.
  Var fresh_tagged(const std::string& p) { return Var(p + std::to_string(next++)); }

  // If `v` is of the form prefix<m>, return m.
  static std::optional<uint64_t> counter_of(const Var& v, const std::string& prefix) {
    if (v.name.size() <= prefix.size() || v.name.compare(0, prefix.size(), prefix) != 0)
      return std::nullopt;
    uint64_t m = 0;
    for (size_t i = prefix.size(); i < v.name.size(); ++i) {
      char c = v.name[i];
      if (c < '0' || c > '9') return std::nullopt;
      m = m * 10 + static_cast<uint64_t>(c - '0');
    }
    return m;
  }
};

// ---------------------------------------------------------------------------
// Constructor table: tag -> arity, shared by both languages.

class CtorTable {
 public:
  void define(const std::string& tag, uint32_t arity) {
    auto [it, inserted] = entries_.emplace(tag, arity);
    if (!inserted)
      throw std::invalid_argument("constructor defined twice: " + tag);
  }

  std::optional<uint32_t> arity(const std::string& tag) const {
    auto it = entries_.find(tag);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  bool known(const std::string& tag) const { return entries_.count(tag) != 0; }

  const std::map<std::string, uint32_t>& entries() const { return entries_; }

  static CtorTable defaults() {
    CtorTable t;
    t.define("Unit", 0);
    t.define("Tt", 0);
    t.define("Ff", 0);
    t.define("Box", 1);
    t.define("Pair", 2);
    return t;
  }

 private:
  std::map<std::string, uint32_t> entries_;
};

// ---------------------------------------------------------------------------
// Source language: de Bruijn terms

struct SrcExpr;
using SrcExprPtr = std::shared_ptr<const SrcExpr>;

struct SVar { uint32_t index; };
struct SLet { SrcExprPtr bound; SrcExprPtr body; };
struct SFun { SrcExprPtr body; };
struct SApp { SrcExprPtr fn; SrcExprPtr arg; };
struct SCon { std::string tag; std::vector<SrcExprPtr> args; };
struct SMatch {
  SrcExprPtr scrutinee;
  std::vector<std::pair<std::string, SrcExprPtr>> branches;
};

struct SrcExpr {
  std::variant<SVar, SLet, SFun, SApp, SCon, SMatch> node;
};

inline SrcExprPtr mk_src(SrcExpr e) { return std::make_shared<SrcExpr>(std::move(e)); }
inline SrcExprPtr src_var(uint32_t n) { return mk_src({SVar{n}}); }
inline SrcExprPtr src_let(SrcExprPtr e1, SrcExprPtr e2) { return mk_src({SLet{std::move(e1), std::move(e2)}}); }
inline SrcExprPtr src_fun(SrcExprPtr body) { return mk_src({SFun{std::move(body)}}); }
inline SrcExprPtr src_app(SrcExprPtr f, SrcExprPtr a) { return mk_src({SApp{std::move(f), std::move(a)}}); }
inline SrcExprPtr src_con(std::string tag, std::vector<SrcExprPtr> args = {}) {
  return mk_src({SCon{std::move(tag), std::move(args)}});
}
inline SrcExprPtr src_match(SrcExprPtr scrut,
                            std::vector<std::pair<std::string, SrcExprPtr>> branches) {
  return mk_src({SMatch{std::move(scrut), std::move(branches)}});
}

// Source values: constructor values and closures over a captured value list.
// The environment is a persistent list; index 0 is the innermost binding.
struct SrcValue;
using SrcValuePtr = std::shared_ptr<const SrcValue>;

struct SrcEnvNode;
using SrcEnv = std::shared_ptr<const SrcEnvNode>;
struct SrcEnvNode {
  SrcValuePtr head;
  SrcEnv tail;
};

inline SrcEnv src_env_cons(SrcValuePtr v, SrcEnv tail) {
  return std::make_shared<SrcEnvNode>(SrcEnvNode{std::move(v), std::move(tail)});
}

inline const SrcValuePtr* src_env_nth(const SrcEnv& env, uint32_t n) {
  const SrcEnvNode* node = env.get();
  while (node != nullptr && n > 0) {
    node = node->tail.get();
    --n;
  }
  return node == nullptr ? nullptr : &node->head;
}

inline SrcEnv src_env_of(const std::vector<SrcValuePtr>& vs) {
  SrcEnv env;  // vs[0] must end up innermost
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) env = src_env_cons(*it, env);
  return env;
}

inline std::vector<SrcValuePtr> src_env_to_vector(SrcEnv env) {
  std::vector<SrcValuePtr> out;
  for (const SrcEnvNode* n = env.get(); n != nullptr; n = n->tail.get())
    out.push_back(n->head);
  return out;
}

struct SrcConV { std::string tag; std::vector<SrcValuePtr> fields; };
struct SrcClosV { SrcEnv env; SrcExprPtr body; };

struct SrcValue {
  std::variant<SrcConV, SrcClosV> v;
};

inline SrcValuePtr src_conv(std::string tag, std::vector<SrcValuePtr> fields = {}) {
  return std::make_shared<SrcValue>(SrcValue{SrcConV{std::move(tag), std::move(fields)}});
}
inline SrcValuePtr src_closv(SrcEnv env, SrcExprPtr body) {
  return std::make_shared<SrcValue>(SrcValue{SrcClosV{std::move(env), std::move(body)}});
}

// ---------------------------------------------------------------------------
// Target language: seven-form ANF terms over named variables

struct AnfExpr;
using AnfExprPtr = std::shared_ptr<const AnfExpr>;

struct ALetCon { Var name; std::string tag; std::vector<Var> args; AnfExprPtr cont; };
struct AProj { Var name; Var tuple; uint32_t index; AnfExprPtr cont; };
struct ALetFun { Var fname; std::vector<Var> params; AnfExprPtr body; AnfExprPtr cont; };
struct ALetApp { Var name; Var fn; std::vector<Var> args; AnfExprPtr cont; };
struct ACase {
  Var scrutinee;
  std::vector<std::pair<std::string, AnfExprPtr>> branches;
};
struct ATailCall { Var fn; std::vector<Var> args; };
struct AHalt { Var name; };

struct AnfExpr {
  std::variant<ALetCon, AProj, ALetFun, ALetApp, ACase, ATailCall, AHalt> node;
};

inline AnfExprPtr mk_anf(AnfExpr e) { return std::make_shared<AnfExpr>(std::move(e)); }
inline AnfExprPtr anf_letcon(Var x, std::string tag, std::vector<Var> ys, AnfExprPtr e) {
  return mk_anf({ALetCon{std::move(x), std::move(tag), std::move(ys), std::move(e)}});
}
inline AnfExprPtr anf_proj(Var x, Var y, uint32_t i, AnfExprPtr e) {
  return mk_anf({AProj{std::move(x), std::move(y), i, std::move(e)}});
}
inline AnfExprPtr anf_letfun(Var f, std::vector<Var> params, AnfExprPtr body, AnfExprPtr cont) {
  return mk_anf({ALetFun{std::move(f), std::move(params), std::move(body), std::move(cont)}});
}
inline AnfExprPtr anf_letapp(Var x, Var f, std::vector<Var> ys, AnfExprPtr e) {
  return mk_anf({ALetApp{std::move(x), std::move(f), std::move(ys), std::move(e)}});
}
inline AnfExprPtr anf_case(Var y, std::vector<std::pair<std::string, AnfExprPtr>> branches) {
  return mk_anf({ACase{std::move(y), std::move(branches)}});
}
inline AnfExprPtr anf_tailcall(Var f, std::vector<Var> ys) {
  return mk_anf({ATailCall{std::move(f), std::move(ys)}});
}
inline AnfExprPtr anf_halt(Var x) { return mk_anf({AHalt{std::move(x)}}); }

// Target values and environments. Environments are persistent association
// lists; the most recent binding for a name shadows older ones.
struct AnfValue;
using AnfValuePtr = std::shared_ptr<const AnfValue>;

struct AnfEnvNode;
using AnfEnv = std::shared_ptr<const AnfEnvNode>;
struct AnfEnvNode {
  Var name;
  AnfValuePtr value;
  AnfEnv tail;
};

inline AnfEnv env_bind(AnfEnv env, Var name, AnfValuePtr value) {
  return std::make_shared<AnfEnvNode>(
      AnfEnvNode{std::move(name), std::move(value), std::move(env)});
}

inline const AnfValuePtr* env_lookup(const AnfEnv& env, const Var& name) {
  for (const AnfEnvNode* n = env.get(); n != nullptr; n = n->tail.get())
    if (n->name == name) return &n->value;
  return nullptr;
}

struct AnfConV { std::string tag; std::vector<AnfValuePtr> fields; };
struct AnfClosV { AnfEnv env; Var fname; std::vector<Var> params; AnfExprPtr body; };

struct AnfValue {
  std::variant<AnfConV, AnfClosV> v;
};

inline AnfValuePtr anf_conv(std::string tag, std::vector<AnfValuePtr> fields = {}) {
  return std::make_shared<AnfValue>(AnfValue{AnfConV{std::move(tag), std::move(fields)}});
}
inline AnfValuePtr anf_closv(AnfEnv env, Var fname, std::vector<Var> params, AnfExprPtr body) {
  return std::make_shared<AnfValue>(
      AnfValue{AnfClosV{std::move(env), std::move(fname), std::move(params), std::move(body)}});
}

// ---------------------------------------------------------------------------
// 1-hole contexts: ANF terms with a single hole in tail position. JoinFun
// places the hole inside a one-parameter function body instead of the
// continuation, which is what the match translation needs.

struct Ctx;
using CtxPtr = std::shared_ptr<const Ctx>;

struct CHole {};
struct CLetCon { Var name; std::string tag; std::vector<Var> args; CtxPtr inner; };
struct CProj { Var name; Var tuple; uint32_t index; CtxPtr inner; };
struct CLetApp { Var name; Var fn; std::vector<Var> args; CtxPtr inner; };
struct CLetFun { Var fname; std::vector<Var> params; AnfExprPtr body; CtxPtr inner; };
struct CJoinFun { Var fname; Var param; CtxPtr body; AnfExprPtr rest; };

struct Ctx {
  std::variant<CHole, CLetCon, CProj, CLetApp, CLetFun, CJoinFun> node;
};

inline CtxPtr mk_ctx(Ctx c) { return std::make_shared<Ctx>(std::move(c)); }
inline CtxPtr ctx_hole() { return mk_ctx({CHole{}}); }
inline CtxPtr ctx_letcon(Var x, std::string tag, std::vector<Var> ys, CtxPtr inner) {
  return mk_ctx({CLetCon{std::move(x), std::move(tag), std::move(ys), std::move(inner)}});
}
inline CtxPtr ctx_proj(Var x, Var y, uint32_t i, CtxPtr inner) {
  return mk_ctx({CProj{std::move(x), std::move(y), i, std::move(inner)}});
}
inline CtxPtr ctx_letapp(Var x, Var f, std::vector<Var> ys, CtxPtr inner) {
  return mk_ctx({CLetApp{std::move(x), std::move(f), std::move(ys), std::move(inner)}});
}
inline CtxPtr ctx_letfun(Var f, std::vector<Var> params, AnfExprPtr body, CtxPtr inner) {
  return mk_ctx({CLetFun{std::move(f), std::move(params), std::move(body), std::move(inner)}});
}
inline CtxPtr ctx_joinfun(Var f, Var param, CtxPtr body, AnfExprPtr rest) {
  return mk_ctx({CJoinFun{std::move(f), std::move(param), std::move(body), std::move(rest)}});
}

// C[e]: replace the unique hole of `c` with `e`.
inline AnfExprPtr plug(const CtxPtr& c, const AnfExprPtr& e) {
  return std::visit(
      Overloaded{
          [&](const CHole&) { return e; },
          [&](const CLetCon& n) { return anf_letcon(n.name, n.tag, n.args, plug(n.inner, e)); },
          [&](const CProj& n) { return anf_proj(n.name, n.tuple, n.index, plug(n.inner, e)); },
          [&](const CLetApp& n) { return anf_letapp(n.name, n.fn, n.args, plug(n.inner, e)); },
          [&](const CLetFun& n) { return anf_letfun(n.fname, n.params, n.body, plug(n.inner, e)); },
          [&](const CJoinFun& n) {
            return anf_letfun(n.fname, {n.param}, plug(n.body, e), n.rest);
          },
      },
      c->node);
}

// C1 . C2: plug C2 into C1's hole, so plug(compose(c1,c2), e) ==
// plug(c1, plug(c2, e)).
inline CtxPtr compose(const CtxPtr& c1, const CtxPtr& c2) {
  return std::visit(
      Overloaded{
          [&](const CHole&) { return c2; },
          [&](const CLetCon& n) { return ctx_letcon(n.name, n.tag, n.args, compose(n.inner, c2)); },
          [&](const CProj& n) { return ctx_proj(n.name, n.tuple, n.index, compose(n.inner, c2)); },
          [&](const CLetApp& n) { return ctx_letapp(n.name, n.fn, n.args, compose(n.inner, c2)); },
          [&](const CLetFun& n) { return ctx_letfun(n.fname, n.params, n.body, compose(n.inner, c2)); },
          [&](const CJoinFun& n) {
            return ctx_joinfun(n.fname, n.param, compose(n.body, c2), n.rest);
          },
      },
      c1->node);
}

// ---------------------------------------------------------------------------
// Well-formedness of source terms: every de Bruijn index in range, every
// constructor fully applied with a known tag, match branch tags pairwise
// distinct.

inline bool well_formed_src(const SrcExprPtr& e, uint32_t depth, const CtorTable& ctors) {
  return std::visit(
      Overloaded{
          [&](const SVar& n) { return n.index < depth; },
          [&](const SLet& n) {
            return well_formed_src(n.bound, depth, ctors) &&
                   well_formed_src(n.body, depth + 1, ctors);
          },
          [&](const SFun& n) { return well_formed_src(n.body, depth + 1, ctors); },
          [&](const SApp& n) {
            return well_formed_src(n.fn, depth, ctors) &&
                   well_formed_src(n.arg, depth, ctors);
          },
          [&](const SCon& n) {
            auto a = ctors.arity(n.tag);
            if (!a || *a != n.args.size()) return false;
            for (const auto& arg : n.args)
              if (!well_formed_src(arg, depth, ctors)) return false;
            return true;
          },
          [&](const SMatch& n) {
            if (!well_formed_src(n.scrutinee, depth, ctors)) return false;
            std::set<std::string> seen;
            for (const auto& [tag, body] : n.branches) {
              auto a = ctors.arity(tag);
              if (!a) return false;
              if (!seen.insert(tag).second) return false;
              if (!well_formed_src(body, depth + *a, ctors)) return false;
            }
            return true;
          },
      },
      e->node);
}

// ---------------------------------------------------------------------------
// Free variables of ANF terms. LetFun's name is bound in both the function
// body and the continuation; parameters are bound in the body only.

inline void free_vars_anf_into(const AnfExprPtr& e, std::set<Var>& bound,
                               std::set<Var>& out) {
  auto add = [&](const Var& v) {
    if (bound.count(v) == 0) out.insert(v);
  };
  std::visit(
      Overloaded{
          [&](const ALetCon& n) {
            for (const auto& y : n.args) add(y);
            bool fresh = bound.insert(n.name).second;
            free_vars_anf_into(n.cont, bound, out);
            if (fresh) bound.erase(n.name);
          },
          [&](const AProj& n) {
            add(n.tuple);
            bool fresh = bound.insert(n.name).second;
            free_vars_anf_into(n.cont, bound, out);
            if (fresh) bound.erase(n.name);
          },
          [&](const ALetFun& n) {
            bool f_fresh = bound.insert(n.fname).second;
            std::vector<Var> added;
            for (const auto& p : n.params)
              if (bound.insert(p).second) added.push_back(p);
            free_vars_anf_into(n.body, bound, out);
            for (const auto& p : added) bound.erase(p);
            free_vars_anf_into(n.cont, bound, out);
            if (f_fresh) bound.erase(n.fname);
          },
          [&](const ALetApp& n) {
            add(n.fn);
            for (const auto& y : n.args) add(y);
            bool fresh = bound.insert(n.name).second;
            free_vars_anf_into(n.cont, bound, out);
            if (fresh) bound.erase(n.name);
          },
          [&](const ACase& n) {
            add(n.scrutinee);
            for (const auto& [tag, body] : n.branches)
              free_vars_anf_into(body, bound, out);
          },
          [&](const ATailCall& n) {
            add(n.fn);
            for (const auto& y : n.args) add(y);
          },
          [&](const AHalt& n) { add(n.name); },
      },
      e->node);
}

inline std::set<Var> free_vars_anf(const AnfExprPtr& e) {
  std::set<Var> bound, out;
  free_vars_anf_into(e, bound, out);
  return out;
}

// ---------------------------------------------------------------------------
// Alpha-equivalence of ANF terms: equal up to a consistent renaming of bound
// variables; free variables must coincide exactly.

namespace detail {

class AlphaMap {
 public:
  struct Undo {
    std::string a, b;
    bool had_fwd = false, had_bwd = false;
    std::string old_fwd, old_bwd;
  };

  Undo bind(const Var& a, const Var& b) {
    Undo u{a.name, b.name};
    if (auto it = fwd_.find(a.name); it != fwd_.end()) {
      u.had_fwd = true;
      u.old_fwd = it->second;
    }
    if (auto it = bwd_.find(b.name); it != bwd_.end()) {
      u.had_bwd = true;
      u.old_bwd = it->second;
    }
    fwd_[a.name] = b.name;
    bwd_[b.name] = a.name;
    return u;
  }

  void unbind(const Undo& u) {
    if (u.had_fwd) fwd_[u.a] = u.old_fwd; else fwd_.erase(u.a);
    if (u.had_bwd) bwd_[u.b] = u.old_bwd; else bwd_.erase(u.b);
  }

  enum class Kind { BothFree, BoundOk, Mismatch };

  Kind kind(const Var& a, const Var& b) const {
    auto fa = fwd_.find(a.name);
    auto fb = bwd_.find(b.name);
    if (fa == fwd_.end() && fb == bwd_.end()) return Kind::BothFree;
    if (fa == fwd_.end() || fb == bwd_.end()) return Kind::Mismatch;
    return fa->second == b.name && fb->second == a.name ? Kind::BoundOk
                                                        : Kind::Mismatch;
  }

  bool matches(const Var& a, const Var& b) const {
    switch (kind(a, b)) {
      case Kind::BoundOk: return true;
      case Kind::BothFree: return a == b;
      default: return false;
    }
  }

 private:
  std::unordered_map<std::string, std::string> fwd_, bwd_;
};

inline bool alpha_eq_rec(const AnfExprPtr& e1, const AnfExprPtr& e2, AlphaMap& m) {
  if (e1->node.index() != e2->node.index()) return false;
  auto vars_match = [&](const std::vector<Var>& a, const std::vector<Var>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (!m.matches(a[i], b[i])) return false;
    return true;
  };
  return std::visit(
      Overloaded{
          [&](const ALetCon& a) {
            const auto& b = std::get<ALetCon>(e2->node);
            if (a.tag != b.tag || !vars_match(a.args, b.args)) return false;
            auto u = m.bind(a.name, b.name);
            bool ok = alpha_eq_rec(a.cont, b.cont, m);
            m.unbind(u);
            return ok;
          },
          [&](const AProj& a) {
            const auto& b = std::get<AProj>(e2->node);
            if (a.index != b.index || !m.matches(a.tuple, b.tuple)) return false;
            auto u = m.bind(a.name, b.name);
            bool ok = alpha_eq_rec(a.cont, b.cont, m);
            m.unbind(u);
            return ok;
          },
          [&](const ALetFun& a) {
            const auto& b = std::get<ALetFun>(e2->node);
            if (a.params.size() != b.params.size()) return false;
            auto uf = m.bind(a.fname, b.fname);
            std::vector<AlphaMap::Undo> us;
            for (size_t i = 0; i < a.params.size(); ++i)
              us.push_back(m.bind(a.params[i], b.params[i]));
            bool ok = alpha_eq_rec(a.body, b.body, m);
            for (auto it = us.rbegin(); it != us.rend(); ++it) m.unbind(*it);
            ok = ok && alpha_eq_rec(a.cont, b.cont, m);
            m.unbind(uf);
            return ok;
          },
          [&](const ALetApp& a) {
            const auto& b = std::get<ALetApp>(e2->node);
            if (!m.matches(a.fn, b.fn) || !vars_match(a.args, b.args)) return false;
            auto u = m.bind(a.name, b.name);
            bool ok = alpha_eq_rec(a.cont, b.cont, m);
            m.unbind(u);
            return ok;
          },
          [&](const ACase& a) {
            const auto& b = std::get<ACase>(e2->node);
            if (!m.matches(a.scrutinee, b.scrutinee)) return false;
            if (a.branches.size() != b.branches.size()) return false;
            for (size_t i = 0; i < a.branches.size(); ++i) {
              if (a.branches[i].first != b.branches[i].first) return false;
              if (!alpha_eq_rec(a.branches[i].second, b.branches[i].second, m))
                return false;
            }
            return true;
          },
          [&](const ATailCall& a) {
            const auto& b = std::get<ATailCall>(e2->node);
            return m.matches(a.fn, b.fn) && vars_match(a.args, b.args);
          },
          [&](const AHalt& a) {
            const auto& b = std::get<AHalt>(e2->node);
            return m.matches(a.name, b.name);
          },
      },
      e1->node);
}

}  // namespace detail

inline bool alpha_eq(const AnfExprPtr& e1, const AnfExprPtr& e2) {
  detail::AlphaMap m;
  return detail::alpha_eq_rec(e1, e2, m);
}

// Alpha-equivalence of ANF values. Closure environments have no binder
// order, so free occurrences in the bodies are compared by looking the
// names up in the respective environments and comparing the values.
inline bool val_alpha_eq(const AnfValuePtr& v1, const AnfValuePtr& v2);

namespace detail {

inline bool val_alpha_eq_rec(const AnfValuePtr& v1, const AnfValuePtr& v2);

inline bool closure_body_eq(const AnfExprPtr& e1, const AnfEnv& env1,
                            const AnfExprPtr& e2, const AnfEnv& env2,
                            AlphaMap& m);

inline bool closure_body_eq(const AnfExprPtr& e1, const AnfEnv& env1,
                            const AnfExprPtr& e2, const AnfEnv& env2,
                            AlphaMap& m) {
  if (e1->node.index() != e2->node.index()) return false;
  // Bound occurrences follow the renaming map; free occurrences are
  // resolved through the captured environments and compared as values.
  auto var_eq = [&](const Var& a, const Var& b) {
    switch (m.kind(a, b)) {
      case AlphaMap::Kind::BoundOk: return true;
      case AlphaMap::Kind::Mismatch: return false;
      case AlphaMap::Kind::BothFree: break;
    }
    const AnfValuePtr* va = env_lookup(env1, a);
    const AnfValuePtr* vb = env_lookup(env2, b);
    if (va == nullptr || vb == nullptr)
      return va == nullptr && vb == nullptr && a == b;
    return val_alpha_eq_rec(*va, *vb);
  };
  auto vars_eq = [&](const std::vector<Var>& a, const std::vector<Var>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (!var_eq(a[i], b[i])) return false;
    return true;
  };
  return std::visit(
      Overloaded{
          [&](const ALetCon& a) {
            const auto& b = std::get<ALetCon>(e2->node);
            if (a.tag != b.tag || !vars_eq(a.args, b.args)) return false;
            auto u = m.bind(a.name, b.name);
            bool ok = closure_body_eq(a.cont, env1, b.cont, env2, m);
            m.unbind(u);
            return ok;
          },
          [&](const AProj& a) {
            const auto& b = std::get<AProj>(e2->node);
            if (a.index != b.index || !var_eq(a.tuple, b.tuple)) return false;
            auto u = m.bind(a.name, b.name);
            bool ok = closure_body_eq(a.cont, env1, b.cont, env2, m);
            m.unbind(u);
            return ok;
          },
          [&](const ALetFun& a) {
            const auto& b = std::get<ALetFun>(e2->node);
            if (a.params.size() != b.params.size()) return false;
            auto uf = m.bind(a.fname, b.fname);
            std::vector<AlphaMap::Undo> us;
            for (size_t i = 0; i < a.params.size(); ++i)
              us.push_back(m.bind(a.params[i], b.params[i]));
            bool ok = closure_body_eq(a.body, env1, b.body, env2, m);
            for (auto it = us.rbegin(); it != us.rend(); ++it) m.unbind(*it);
            ok = ok && closure_body_eq(a.cont, env1, b.cont, env2, m);
            m.unbind(uf);
            return ok;
          },
          [&](const ALetApp& a) {
            const auto& b = std::get<ALetApp>(e2->node);
            if (!var_eq(a.fn, b.fn) || !vars_eq(a.args, b.args)) return false;
            auto u = m.bind(a.name, b.name);
            bool ok = closure_body_eq(a.cont, env1, b.cont, env2, m);
            m.unbind(u);
            return ok;
          },
          [&](const ACase& a) {
            const auto& b = std::get<ACase>(e2->node);
            if (!var_eq(a.scrutinee, b.scrutinee)) return false;
            if (a.branches.size() != b.branches.size()) return false;
            for (size_t i = 0; i < a.branches.size(); ++i) {
              if (a.branches[i].first != b.branches[i].first) return false;
              if (!closure_body_eq(a.branches[i].second, env1,
                                   b.branches[i].second, env2, m))
                return false;
            }
            return true;
          },
          [&](const ATailCall& a) {
            const auto& b = std::get<ATailCall>(e2->node);
            return var_eq(a.fn, b.fn) && vars_eq(a.args, b.args);
          },
          [&](const AHalt& a) {
            const auto& b = std::get<AHalt>(e2->node);
            return var_eq(a.name, b.name);
          },
      },
      e1->node);
}

inline bool val_alpha_eq_rec(const AnfValuePtr& v1, const AnfValuePtr& v2) {
  if (v1->v.index() != v2->v.index()) return false;
  if (std::holds_alternative<AnfConV>(v1->v)) {
    const auto& a = std::get<AnfConV>(v1->v);
    const auto& b = std::get<AnfConV>(v2->v);
    if (a.tag != b.tag || a.fields.size() != b.fields.size()) return false;
    for (size_t i = 0; i < a.fields.size(); ++i)
      if (!val_alpha_eq_rec(a.fields[i], b.fields[i])) return false;
    return true;
  }
  const auto& a = std::get<AnfClosV>(v1->v);
  const auto& b = std::get<AnfClosV>(v2->v);
  if (a.params.size() != b.params.size()) return false;
  AlphaMap m;
  auto uf = m.bind(a.fname, b.fname);
  std::vector<AlphaMap::Undo> us;
  for (size_t i = 0; i < a.params.size(); ++i)
    us.push_back(m.bind(a.params[i], b.params[i]));
  bool ok = closure_body_eq(a.body, a.env, b.body, b.env, m);
  for (auto it = us.rbegin(); it != us.rend(); ++it) m.unbind(*it);
  m.unbind(uf);
  return ok;
}

}  // namespace detail

inline bool val_alpha_eq(const AnfValuePtr& v1, const AnfValuePtr& v2) {
  return detail::val_alpha_eq_rec(v1, v2);
}

}  // namespace anf
