#pragma once

// Textual surface format: one s-expression per program, deterministic
// single-line rendering. Parsing is checked against a constructor table so
// arity errors surface at read time with a position.
//
//   source   (var N) (lam E) (app E E) (let E E) (con TAG E...)
//            (match E (TAG E)...)
//   anf      (letcon X TAG (Y...) E) (proj X Y I E) (letfun F (X...) E E)
//            (letapp X F (Y...) E) (case Y (TAG E)...) (tailcall F Y...)
//            (halt X)
//   context  as anf, plus (hole) and (joinfun F X C E)
//   values   (conv TAG V...) (closv ENV F (X...) E) (clossrc (V...) E)
//   envs     (env (X V)...) for the target, (srcenv V...) for the source
//
// Constructor table files are plain text: one "TAG ARITY" pair per line,
// '#' starts a comment.

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "anf/syntax.hpp"

namespace anf {

// ---------------------------------------------------------------------------
// S-expression reader

struct Sexp {
  // Atom when children is empty and text non-empty; list otherwise.
  std::string text;
  std::vector<Sexp> children;
  bool is_list = false;
  int line = 1, column = 1;

  bool is_atom() const { return !is_list; }
  size_t size() const { return children.size(); }
  const Sexp& at(size_t i) const { return children[i]; }
};

namespace detail {

class SexpReader {
 public:
  explicit SexpReader(const std::string& text) : text_(text) {}

  Sexp read() {
    skip_space();
    Sexp s = read_value();
    skip_space();
    if (pos_ < text_.size())
      throw ParseError(line_, col_, "trailing input after expression");
    return s;
  }

 private:
  Sexp read_value() {
    if (pos_ >= text_.size()) throw ParseError(line_, col_, "unexpected end of input");
    if (text_[pos_] == '(') {
      Sexp list;
      list.is_list = true;
      list.line = line_;
      list.column = col_;
      advance();
      skip_space();
      while (pos_ < text_.size() && text_[pos_] != ')') {
        list.children.push_back(read_value());
        skip_space();
      }
      if (pos_ >= text_.size()) throw ParseError(line_, col_, "unterminated list");
      advance();  // ')'
      return list;
    }
    if (text_[pos_] == ')') throw ParseError(line_, col_, "unexpected ')'");
    Sexp atom;
    atom.line = line_;
    atom.column = col_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      atom.text.push_back(text_[pos_]);
      advance();
    }
    return atom;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {  // comment to end of line
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

inline const Sexp& expect_list(const Sexp& s, const char* what) {
  if (!s.is_list) throw ParseError(s.line, s.column, std::string("expected ") + what);
  return s;
}

inline std::string expect_atom(const Sexp& s, const char* what) {
  if (s.is_list || s.text.empty())
    throw ParseError(s.line, s.column, std::string("expected ") + what);
  return s.text;
}

inline std::string head_of(const Sexp& s) {
  if (!s.is_list || s.size() == 0 || !s.at(0).is_atom()) return "";
  return s.at(0).text;
}

inline void expect_arity(const Sexp& s, size_t n, const char* form) {
  if (s.size() != n)
    throw ParseError(s.line, s.column,
                     std::string("form '") + form + "' takes " +
                         std::to_string(n - 1) + " argument(s)");
}

inline uint32_t expect_nat(const Sexp& s, const char* what) {
  std::string t = expect_atom(s, what);
  uint64_t n = 0;
  for (char c : t) {
    if (c < '0' || c > '9')
      throw ParseError(s.line, s.column, std::string("expected ") + what);
    n = n * 10 + static_cast<uint64_t>(c - '0');
    if (n > 0xffffffffULL) throw ParseError(s.line, s.column, "number too large");
  }
  if (t.empty()) throw ParseError(s.line, s.column, std::string("expected ") + what);
  return static_cast<uint32_t>(n);
}

inline Var expect_var(const Sexp& s) { return Var(expect_atom(s, "variable name")); }

inline std::vector<Var> expect_var_list(const Sexp& s) {
  expect_list(s, "variable list");
  std::vector<Var> out;
  out.reserve(s.size());
  for (const auto& c : s.children) out.push_back(expect_var(c));
  return out;
}

inline void check_ctor(const Sexp& where, const CtorTable& ctors,
                       const std::string& tag, size_t used_arity) {
  auto a = ctors.arity(tag);
  if (!a)
    throw ParseError(where.line, where.column, "unknown constructor: " + tag);
  if (*a != used_arity)
    throw ParseError(where.line, where.column,
                     "constructor " + tag + " has arity " + std::to_string(*a) +
                         ", applied to " + std::to_string(used_arity));
}

}  // namespace detail

inline Sexp read_sexp(const std::string& text) {
  return detail::SexpReader(text).read();
}

// ---------------------------------------------------------------------------
// Source terms

inline SrcExprPtr parse_source_sexp(const Sexp& s, const CtorTable& ctors) {
  using namespace detail;
  expect_list(s, "source expression");
  std::string head = head_of(s);
  if (head == "var") {
    expect_arity(s, 2, "var");
    return src_var(expect_nat(s.at(1), "de Bruijn index"));
  }
  if (head == "lam") {
    expect_arity(s, 2, "lam");
    return src_fun(parse_source_sexp(s.at(1), ctors));
  }
  if (head == "app") {
    expect_arity(s, 3, "app");
    return src_app(parse_source_sexp(s.at(1), ctors), parse_source_sexp(s.at(2), ctors));
  }
  if (head == "let") {
    expect_arity(s, 3, "let");
    return src_let(parse_source_sexp(s.at(1), ctors), parse_source_sexp(s.at(2), ctors));
  }
  if (head == "con") {
    if (s.size() < 2) throw ParseError(s.line, s.column, "form 'con' needs a tag");
    std::string tag = expect_atom(s.at(1), "constructor tag");
    std::vector<SrcExprPtr> args;
    for (size_t i = 2; i < s.size(); ++i) args.push_back(parse_source_sexp(s.at(i), ctors));
    check_ctor(s, ctors, tag, args.size());
    return src_con(std::move(tag), std::move(args));
  }
  if (head == "match") {
    if (s.size() < 2) throw ParseError(s.line, s.column, "form 'match' needs a scrutinee");
    SrcExprPtr scrut = parse_source_sexp(s.at(1), ctors);
    std::vector<std::pair<std::string, SrcExprPtr>> branches;
    std::set<std::string> seen;
    for (size_t i = 2; i < s.size(); ++i) {
      const Sexp& br = expect_list(s.at(i), "match branch");
      if (br.size() != 2) throw ParseError(br.line, br.column, "branch is (TAG E)");
      std::string tag = expect_atom(br.at(0), "branch tag");
      if (!ctors.known(tag))
        throw ParseError(br.at(0).line, br.at(0).column, "unknown constructor: " + tag);
      if (!seen.insert(tag).second)
        throw ParseError(br.at(0).line, br.at(0).column, "duplicate branch tag: " + tag);
      branches.emplace_back(std::move(tag), parse_source_sexp(br.at(1), ctors));
    }
    return src_match(std::move(scrut), std::move(branches));
  }
  throw ParseError(s.line, s.column, "unknown source form: " + head);
}

inline SrcExprPtr parse_source(const std::string& text, const CtorTable& ctors) {
  return parse_source_sexp(read_sexp(text), ctors);
}

// ---------------------------------------------------------------------------
// ANF terms

inline AnfExprPtr parse_anf_sexp(const Sexp& s, const CtorTable& ctors) {
  using namespace detail;
  expect_list(s, "anf expression");
  std::string head = head_of(s);
  if (head == "letcon") {
    expect_arity(s, 5, "letcon");
    Var x = expect_var(s.at(1));
    std::string tag = expect_atom(s.at(2), "constructor tag");
    std::vector<Var> ys = expect_var_list(s.at(3));
    check_ctor(s, ctors, tag, ys.size());
    return anf_letcon(std::move(x), std::move(tag), std::move(ys),
                      parse_anf_sexp(s.at(4), ctors));
  }
  if (head == "proj") {
    expect_arity(s, 5, "proj");
    Var x = expect_var(s.at(1));
    Var y = expect_var(s.at(2));
    uint32_t i = expect_nat(s.at(3), "field index");
    return anf_proj(std::move(x), std::move(y), i, parse_anf_sexp(s.at(4), ctors));
  }
  if (head == "letfun") {
    expect_arity(s, 5, "letfun");
    return anf_letfun(expect_var(s.at(1)), expect_var_list(s.at(2)),
                      parse_anf_sexp(s.at(3), ctors), parse_anf_sexp(s.at(4), ctors));
  }
  if (head == "letapp") {
    expect_arity(s, 5, "letapp");
    return anf_letapp(expect_var(s.at(1)), expect_var(s.at(2)),
                      expect_var_list(s.at(3)), parse_anf_sexp(s.at(4), ctors));
  }
  if (head == "case") {
    if (s.size() < 2) throw ParseError(s.line, s.column, "form 'case' needs a scrutinee");
    Var y = expect_var(s.at(1));
    std::vector<std::pair<std::string, AnfExprPtr>> branches;
    std::set<std::string> seen;
    for (size_t i = 2; i < s.size(); ++i) {
      const Sexp& br = expect_list(s.at(i), "case branch");
      if (br.size() != 2) throw ParseError(br.line, br.column, "branch is (TAG E)");
      std::string tag = expect_atom(br.at(0), "branch tag");
      if (!ctors.known(tag))
        throw ParseError(br.at(0).line, br.at(0).column, "unknown constructor: " + tag);
      if (!seen.insert(tag).second)
        throw ParseError(br.at(0).line, br.at(0).column, "duplicate branch tag: " + tag);
      branches.emplace_back(std::move(tag), parse_anf_sexp(br.at(1), ctors));
    }
    return anf_case(std::move(y), std::move(branches));
  }
  if (head == "tailcall") {
    if (s.size() < 2) throw ParseError(s.line, s.column, "form 'tailcall' needs a callee");
    Var f = expect_var(s.at(1));
    std::vector<Var> ys;
    for (size_t i = 2; i < s.size(); ++i) ys.push_back(expect_var(s.at(i)));
    return anf_tailcall(std::move(f), std::move(ys));
  }
  if (head == "halt") {
    expect_arity(s, 2, "halt");
    return anf_halt(expect_var(s.at(1)));
  }
  throw ParseError(s.line, s.column, "unknown anf form: " + head);
}

inline AnfExprPtr parse_anf(const std::string& text, const CtorTable& ctors) {
  return parse_anf_sexp(read_sexp(text), ctors);
}

// ---------------------------------------------------------------------------
// Contexts

inline CtxPtr parse_ctx_sexp(const Sexp& s, const CtorTable& ctors) {
  using namespace detail;
  expect_list(s, "context");
  std::string head = head_of(s);
  if (head == "hole") {
    expect_arity(s, 1, "hole");
    return ctx_hole();
  }
  if (head == "letcon") {
    expect_arity(s, 5, "letcon");
    Var x = expect_var(s.at(1));
    std::string tag = expect_atom(s.at(2), "constructor tag");
    std::vector<Var> ys = expect_var_list(s.at(3));
    check_ctor(s, ctors, tag, ys.size());
    return ctx_letcon(std::move(x), std::move(tag), std::move(ys),
                      parse_ctx_sexp(s.at(4), ctors));
  }
  if (head == "proj") {
    expect_arity(s, 5, "proj");
    return ctx_proj(expect_var(s.at(1)), expect_var(s.at(2)),
                    expect_nat(s.at(3), "field index"), parse_ctx_sexp(s.at(4), ctors));
  }
  if (head == "letapp") {
    expect_arity(s, 5, "letapp");
    return ctx_letapp(expect_var(s.at(1)), expect_var(s.at(2)),
                      expect_var_list(s.at(3)), parse_ctx_sexp(s.at(4), ctors));
  }
  if (head == "letfun") {
    expect_arity(s, 5, "letfun");
    return ctx_letfun(expect_var(s.at(1)), expect_var_list(s.at(2)),
                      parse_anf_sexp(s.at(3), ctors), parse_ctx_sexp(s.at(4), ctors));
  }
  if (head == "joinfun") {
    expect_arity(s, 5, "joinfun");
    return ctx_joinfun(expect_var(s.at(1)), expect_var(s.at(2)),
                       parse_ctx_sexp(s.at(3), ctors), parse_anf_sexp(s.at(4), ctors));
  }
  throw ParseError(s.line, s.column, "unknown context form: " + head);
}

inline CtxPtr parse_ctx(const std::string& text, const CtorTable& ctors) {
  return parse_ctx_sexp(read_sexp(text), ctors);
}

// ---------------------------------------------------------------------------
// Values and environments

inline AnfValuePtr parse_anf_value_sexp(const Sexp& s, const CtorTable& ctors);

inline AnfEnv parse_anf_env_sexp(const Sexp& s, const CtorTable& ctors) {
  using namespace detail;
  expect_list(s, "environment");
  if (head_of(s) != "env")
    throw ParseError(s.line, s.column, "environment is (env (X VALUE)...)");
  std::vector<std::pair<Var, AnfValuePtr>> binds;
  for (size_t i = 1; i < s.size(); ++i) {
    const Sexp& b = expect_list(s.at(i), "environment binding");
    if (b.size() != 2) throw ParseError(b.line, b.column, "binding is (X VALUE)");
    binds.emplace_back(expect_var(b.at(0)), parse_anf_value_sexp(b.at(1), ctors));
  }
  // First listed binding is the innermost one, matching render order.
  AnfEnv env;
  for (auto it = binds.rbegin(); it != binds.rend(); ++it)
    env = env_bind(env, it->first, it->second);
  return env;
}

inline AnfValuePtr parse_anf_value_sexp(const Sexp& s, const CtorTable& ctors) {
  using namespace detail;
  expect_list(s, "value");
  std::string head = head_of(s);
  if (head == "conv") {
    if (s.size() < 2) throw ParseError(s.line, s.column, "form 'conv' needs a tag");
    std::string tag = expect_atom(s.at(1), "constructor tag");
    std::vector<AnfValuePtr> fields;
    for (size_t i = 2; i < s.size(); ++i)
      fields.push_back(parse_anf_value_sexp(s.at(i), ctors));
    check_ctor(s, ctors, tag, fields.size());
    return anf_conv(std::move(tag), std::move(fields));
  }
  if (head == "closv") {
    expect_arity(s, 5, "closv");
    AnfEnv env = parse_anf_env_sexp(s.at(1), ctors);
    return anf_closv(std::move(env), expect_var(s.at(2)), expect_var_list(s.at(3)),
                     parse_anf_sexp(s.at(4), ctors));
  }
  throw ParseError(s.line, s.column, "unknown value form: " + head);
}

inline SrcValuePtr parse_src_value_sexp(const Sexp& s, const CtorTable& ctors) {
  using namespace detail;
  expect_list(s, "source value");
  std::string head = head_of(s);
  if (head == "conv") {
    if (s.size() < 2) throw ParseError(s.line, s.column, "form 'conv' needs a tag");
    std::string tag = expect_atom(s.at(1), "constructor tag");
    std::vector<SrcValuePtr> fields;
    for (size_t i = 2; i < s.size(); ++i)
      fields.push_back(parse_src_value_sexp(s.at(i), ctors));
    check_ctor(s, ctors, tag, fields.size());
    return src_conv(std::move(tag), std::move(fields));
  }
  if (head == "clossrc") {
    expect_arity(s, 3, "clossrc");
    const Sexp& vs = expect_list(s.at(1), "captured value list");
    std::vector<SrcValuePtr> captured;
    for (const auto& c : vs.children) captured.push_back(parse_src_value_sexp(c, ctors));
    return src_closv(src_env_of(captured), parse_source_sexp(s.at(2), ctors));
  }
  throw ParseError(s.line, s.column, "unknown source value form: " + head);
}

// (srcenv V...): positional, index 0 first.
inline std::vector<SrcValuePtr> parse_src_env(const std::string& text,
                                              const CtorTable& ctors) {
  using namespace detail;
  Sexp s = read_sexp(text);
  expect_list(s, "source environment");
  if (head_of(s) != "srcenv")
    throw ParseError(s.line, s.column, "source environment is (srcenv VALUE...)");
  std::vector<SrcValuePtr> out;
  for (size_t i = 1; i < s.size(); ++i)
    out.push_back(parse_src_value_sexp(s.at(i), ctors));
  return out;
}

inline AnfEnv parse_anf_env(const std::string& text, const CtorTable& ctors) {
  return parse_anf_env_sexp(read_sexp(text), ctors);
}

inline AnfValuePtr parse_anf_value(const std::string& text, const CtorTable& ctors) {
  return parse_anf_value_sexp(read_sexp(text), ctors);
}

inline SrcValuePtr parse_src_value(const std::string& text, const CtorTable& ctors) {
  return parse_src_value_sexp(read_sexp(text), ctors);
}

// ---------------------------------------------------------------------------
// Constructor table files: one "TAG ARITY" per line, '#' comments.

inline CtorTable parse_ctor_table(const std::string& text) {
  CtorTable t;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank line
    long long arity = -1;
    if (!(ls >> arity) || arity < 0)
      throw ParseError(lineno, 1, "constructor table line is 'TAG ARITY'");
    std::string extra;
    if (ls >> extra) throw ParseError(lineno, 1, "trailing input after arity");
    try {
      t.define(tag, static_cast<uint32_t>(arity));
    } catch (const std::invalid_argument& ex) {
      throw ParseError(lineno, 1, ex.what());
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Rendering: deterministic, single line, parses back to the same tree.

inline void render_into(const SrcExprPtr& e, std::ostream& os);
inline void render_into(const AnfExprPtr& e, std::ostream& os);
inline void render_into(const CtxPtr& c, std::ostream& os);
inline void render_into(const SrcValuePtr& v, std::ostream& os);
inline void render_into(const AnfValuePtr& v, std::ostream& os);
inline void render_env_into(const AnfEnv& env, std::ostream& os);

namespace detail {
inline void render_vars(const std::vector<Var>& vs, std::ostream& os) {
  os << '(';
  for (size_t i = 0; i < vs.size(); ++i) {
    if (i) os << ' ';
    os << vs[i].name;
  }
  os << ')';
}
}  // namespace detail

inline void render_into(const SrcExprPtr& e, std::ostream& os) {
  std::visit(
      Overloaded{
          [&](const SVar& n) { os << "(var " << n.index << ')'; },
          [&](const SLet& n) {
            os << "(let ";
            render_into(n.bound, os);
            os << ' ';
            render_into(n.body, os);
            os << ')';
          },
          [&](const SFun& n) {
            os << "(lam ";
            render_into(n.body, os);
            os << ')';
          },
          [&](const SApp& n) {
            os << "(app ";
            render_into(n.fn, os);
            os << ' ';
            render_into(n.arg, os);
            os << ')';
          },
          [&](const SCon& n) {
            os << "(con " << n.tag;
            for (const auto& a : n.args) {
              os << ' ';
              render_into(a, os);
            }
            os << ')';
          },
          [&](const SMatch& n) {
            os << "(match ";
            render_into(n.scrutinee, os);
            for (const auto& [tag, body] : n.branches) {
              os << " (" << tag << ' ';
              render_into(body, os);
              os << ')';
            }
            os << ')';
          },
      },
      e->node);
}

inline void render_into(const AnfExprPtr& e, std::ostream& os) {
  std::visit(
      Overloaded{
          [&](const ALetCon& n) {
            os << "(letcon " << n.name.name << ' ' << n.tag << ' ';
            detail::render_vars(n.args, os);
            os << ' ';
            render_into(n.cont, os);
            os << ')';
          },
          [&](const AProj& n) {
            os << "(proj " << n.name.name << ' ' << n.tuple.name << ' ' << n.index << ' ';
            render_into(n.cont, os);
            os << ')';
          },
          [&](const ALetFun& n) {
            os << "(letfun " << n.fname.name << ' ';
            detail::render_vars(n.params, os);
            os << ' ';
            render_into(n.body, os);
            os << ' ';
            render_into(n.cont, os);
            os << ')';
          },
          [&](const ALetApp& n) {
            os << "(letapp " << n.name.name << ' ' << n.fn.name << ' ';
            detail::render_vars(n.args, os);
            os << ' ';
            render_into(n.cont, os);
            os << ')';
          },
          [&](const ACase& n) {
            os << "(case " << n.scrutinee.name;
            for (const auto& [tag, body] : n.branches) {
              os << " (" << tag << ' ';
              render_into(body, os);
              os << ')';
            }
            os << ')';
          },
          [&](const ATailCall& n) {
            os << "(tailcall " << n.fn.name;
            for (const auto& y : n.args) os << ' ' << y.name;
            os << ')';
          },
          [&](const AHalt& n) { os << "(halt " << n.name.name << ')'; },
      },
      e->node);
}

inline void render_into(const CtxPtr& c, std::ostream& os) {
  std::visit(
      Overloaded{
          [&](const CHole&) { os << "(hole)"; },
          [&](const CLetCon& n) {
            os << "(letcon " << n.name.name << ' ' << n.tag << ' ';
            detail::render_vars(n.args, os);
            os << ' ';
            render_into(n.inner, os);
            os << ')';
          },
          [&](const CProj& n) {
            os << "(proj " << n.name.name << ' ' << n.tuple.name << ' ' << n.index << ' ';
            render_into(n.inner, os);
            os << ')';
          },
          [&](const CLetApp& n) {
            os << "(letapp " << n.name.name << ' ' << n.fn.name << ' ';
            detail::render_vars(n.args, os);
            os << ' ';
            render_into(n.inner, os);
            os << ')';
          },
          [&](const CLetFun& n) {
            os << "(letfun " << n.fname.name << ' ';
            detail::render_vars(n.params, os);
            os << ' ';
            render_into(n.body, os);
            os << ' ';
            render_into(n.inner, os);
            os << ')';
          },
          [&](const CJoinFun& n) {
            os << "(joinfun " << n.fname.name << ' ' << n.param.name << ' ';
            render_into(n.body, os);
            os << ' ';
            render_into(n.rest, os);
            os << ')';
          },
      },
      c->node);
}

inline void render_env_into(const AnfEnv& env, std::ostream& os) {
  os << "(env";
  for (const AnfEnvNode* n = env.get(); n != nullptr; n = n->tail.get()) {
    os << " (" << n->name.name << ' ';
    render_into(n->value, os);
    os << ')';
  }
  os << ')';
}

inline void render_into(const AnfValuePtr& v, std::ostream& os) {
  std::visit(
      Overloaded{
          [&](const AnfConV& n) {
            os << "(conv " << n.tag;
            for (const auto& f : n.fields) {
              os << ' ';
              render_into(f, os);
            }
            os << ')';
          },
          [&](const AnfClosV& n) {
            os << "(closv ";
            render_env_into(n.env, os);
            os << ' ' << n.fname.name << ' ';
            detail::render_vars(n.params, os);
            os << ' ';
            render_into(n.body, os);
            os << ')';
          },
      },
      v->v);
}

inline void render_into(const SrcValuePtr& v, std::ostream& os) {
  std::visit(
      Overloaded{
          [&](const SrcConV& n) {
            os << "(conv " << n.tag;
            for (const auto& f : n.fields) {
              os << ' ';
              render_into(f, os);
            }
            os << ')';
          },
          [&](const SrcClosV& n) {
            os << "(clossrc (";
            bool first = true;
            for (const SrcEnvNode* en = n.env.get(); en != nullptr; en = en->tail.get()) {
              if (!first) os << ' ';
              first = false;
              render_into(en->head, os);
            }
            os << ") ";
            render_into(n.body, os);
            os << ')';
          },
      },
      v->v);
}

template <class T> std::string render(const T& x) {
  std::ostringstream os;
  render_into(x, os);
  return os.str();
}

inline std::string render_env(const AnfEnv& env) {
  std::ostringstream os;
  render_env_into(env, os);
  return os.str();
}

inline std::string render_src_env(const std::vector<SrcValuePtr>& vs) {
  std::ostringstream os;
  os << "(srcenv";
  for (const auto& v : vs) {
    os << ' ';
    render_into(v, os);
  }
  os << ')';
  return os.str();
}

}  // namespace anf
