#include "pcsf/bc.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <utility>

#include "pcsf/check.hpp"
#include "pcsf/eval.hpp"
#include "pcsf/parse.hpp"

namespace pcsf {

namespace {

enum class Tok {
  End, Ident, KwBdef, KwBdefrec, KwBase, KwStep0, KwStep1, Rec,
  LParen, RParen, Comma, Slash, Assign, Pipe,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Loc loc;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto take = [&]() {
    char c = src[i++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      take();
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') take();
      continue;
    }
    Loc at{line, col};
    auto push = [&](Tok k, std::string text = {}) {
      out.push_back(Token{k, std::move(text), at});
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string w;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        w += take();
      if (w == "bdef") push(Tok::KwBdef);
      else if (w == "bdefrec") push(Tok::KwBdefrec);
      else if (w == "base") push(Tok::KwBase);
      else if (w == "step0") push(Tok::KwStep0);
      else if (w == "step1") push(Tok::KwStep1);
      else push(Tok::Ident, std::move(w));
      continue;
    }
    if (c == '@') {
      take();
      std::string w;
      while (i < src.size() && std::isalnum(static_cast<unsigned char>(src[i])))
        w += take();
      if (w != "rec") throw parse_error("expected '@rec'", at);
      push(Tok::Rec);
      continue;
    }
    take();
    switch (c) {
      case '(': push(Tok::LParen); break;
      case ')': push(Tok::RParen); break;
      case ',': push(Tok::Comma); break;
      case '/': push(Tok::Slash); break;
      case '|': push(Tok::Pipe); break;
      case ':':
        if (i < src.size() && src[i] == '=') {
          take();
          push(Tok::Assign);
          break;
        }
        [[fallthrough]];
      default:
        throw parse_error(std::string("stray character '") + c + "'", at);
    }
  }
  out.push_back(Token{Tok::End, {}, Loc{line, col}});
  return out;
}

// Names the compiler's output claims for itself, plus the builtins and
// section keywords. Keeping them out of B programs means compiled code
// never collides with user names.
const std::set<std::string>& reserved_names() {
  static const std::set<std::string> names{
      "eps", "s0", "s1", "p", "C",
      "sing", "finunion", "is_empty", "bnot", "bor", "band", "diff",
      "subset", "eq", "kpair", "ite_rel", "pred_h", "pred_g", "pred",
      "Pred", "ParityCond", "S0", "S1", "czero", "cone", "ctwo",
      "null", "pair", "union", "cond_in", "sep", "def", "defrec", "in",
  };
  return names;
}

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;
  BProgram prog;
  const BDef* cur = nullptr;
  bool in_step = false;
  bool in_base = false;

  const Token& peek() const { return toks[pos]; }
  Token eat() { return toks[pos++]; }
  Token expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw parse_error(std::string("expected ") + what, peek().loc);
    return eat();
  }

  const BDef* find(const std::string& name) const {
    for (const BDef& d : prog.defs)
      if (d.name == name) return &d;
    return nullptr;
  }

  std::string ident(const char* what) {
    Token t = expect(Tok::Ident, what);
    if (reserved_names().count(t.text))
      throw parse_error("reserved name '" + t.text + "'", t.loc);
    return t.text;
  }

  void params(BDef& d) {
    expect(Tok::LParen, "'('");
    auto list = [&](std::vector<std::string>& into, Tok stop) {
      while (peek().kind == Tok::Ident) {
        Token t = peek();
        std::string name = ident("parameter");
        for (const std::string& other : d.normal_params)
          if (other == name)
            throw parse_error("duplicate parameter '" + name + "'", t.loc);
        for (const std::string& other : d.safe_params)
          if (other == name)
            throw parse_error("duplicate parameter '" + name + "'", t.loc);
        into.push_back(std::move(name));
        if (peek().kind != Tok::Comma) break;
        eat();
      }
      (void)stop;
    };
    list(d.normal_params, Tok::Slash);
    expect(Tok::Slash, "'/'");
    list(d.safe_params, Tok::RParen);
    expect(Tok::RParen, "')'");
  }

  enum class VarKind { Normal, Safe, RecVar };

  VarKind var_kind(const std::string& name, Loc at) const {
    for (std::size_t i = 0; i < cur->normal_params.size(); ++i)
      if (cur->normal_params[i] == name) {
        if (cur->recursive && i == 0) return VarKind::RecVar;
        return VarKind::Normal;
      }
    for (const std::string& s : cur->safe_params)
      if (s == name) return VarKind::Safe;
    throw parse_error("unknown identifier '" + name + "'", at);
  }

  // One builtin arity table keeps the messages uniform.
  static int builtin_safes(const std::string& name) {
    if (name == "eps") return 0;
    if (name == "s0" || name == "s1" || name == "p") return 1;
    if (name == "C") return 3;
    return -1;
  }

  BTerm term(bool normal_pos) {
    Token t = peek();
    if (t.kind == Tok::Rec) {
      eat();
      if (!in_step)
        throw parse_error("'@rec' outside a recursion step", t.loc);
      if (normal_pos)
        throw parse_error("'@rec' in a normal position", t.loc);
      BTerm r;
      r.kind = BTerm::Kind::Rec;
      r.loc = t.loc;
      return r;
    }
    if (t.kind != Tok::Ident)
      throw parse_error("expected a term", t.loc);
    eat();
    if (peek().kind != Tok::LParen) {
      VarKind k = var_kind(t.text, t.loc);
      if (k == VarKind::Safe && normal_pos)
        throw parse_error("safe variable '" + t.text + "' in a normal position",
                          t.loc);
      if (k == VarKind::RecVar && in_base)
        throw parse_error("unknown identifier '" + t.text + "'", t.loc);
      BTerm v;
      v.kind = BTerm::Kind::Var;
      v.loc = t.loc;
      v.name = t.text;
      return v;
    }
    eat();
    std::vector<BTerm> normals, safes;
    bool saw_slash = false;
    if (peek().kind == Tok::Slash) {
      eat();
      saw_slash = true;
    }
    auto args = [&](std::vector<BTerm>& into, bool np) {
      if (peek().kind == Tok::RParen || peek().kind == Tok::Slash) return;
      for (;;) {
        into.push_back(term(np));
        if (peek().kind != Tok::Comma) break;
        eat();
      }
    };
    if (!saw_slash) {
      args(normals, true);
      if (peek().kind == Tok::Slash) {
        eat();
        args(safes, normal_pos);
      }
    } else {
      args(safes, normal_pos);
    }
    expect(Tok::RParen, "')'");

    int bs = builtin_safes(t.text);
    if (bs >= 0) {
      if (!normals.empty() || static_cast<int>(safes.size()) != bs) {
        std::ostringstream os;
        os << "'" << t.text << "' expects (0 / " << bs << ") arguments";
        throw parse_error(os.str(), t.loc);
      }
      BTerm b;
      b.kind = t.text == "eps"  ? BTerm::Kind::Eps
               : t.text == "s0" ? BTerm::Kind::S0
               : t.text == "s1" ? BTerm::Kind::S1
               : t.text == "p"  ? BTerm::Kind::P
                                : BTerm::Kind::C;
      b.loc = t.loc;
      b.safes = std::move(safes);
      return b;
    }
    const BDef* callee = find(t.text);
    if (callee == nullptr || callee == cur)
      throw parse_error("unknown function '" + t.text + "'", t.loc);
    if (callee->normal_params.size() != normals.size() ||
        callee->safe_params.size() != safes.size()) {
      std::ostringstream os;
      os << "'" << t.text << "' expects (" << callee->normal_params.size()
         << " / " << callee->safe_params.size() << ") arguments";
      throw parse_error(os.str(), t.loc);
    }
    BTerm c;
    c.kind = BTerm::Kind::Call;
    c.loc = t.loc;
    c.name = t.text;
    c.normals = std::move(normals);
    c.safes = std::move(safes);
    return c;
  }

  BProgram run() {
    while (peek().kind != Tok::End) {
      Token kw = peek();
      bool recursive;
      if (kw.kind == Tok::KwBdef) recursive = false;
      else if (kw.kind == Tok::KwBdefrec) recursive = true;
      else throw parse_error("expected 'bdef' or 'bdefrec'", kw.loc);
      eat();

      BDef d;
      d.loc = kw.loc;
      d.recursive = recursive;
      Token nt = peek();
      d.name = ident("definition name");
      if (find(d.name))
        throw parse_error("duplicate definition of '" + d.name + "'", nt.loc);
      params(d);
      if (d.normal_params.empty() && d.safe_params.empty())
        throw parse_error("definition '" + d.name +
                              "' needs at least one parameter",
                          nt.loc);
      if (recursive && d.normal_params.empty())
        throw parse_error("recursion needs a normal parameter", nt.loc);
      expect(Tok::Assign, "':='");

      cur = &d;
      if (!recursive) {
        d.body = term(false);
      } else {
        expect(Tok::KwBase, "'base'");
        in_base = true;
        d.base = term(false);
        in_base = false;
        expect(Tok::Pipe, "'|'");
        expect(Tok::KwStep0, "'step0'");
        in_step = true;
        d.step0 = term(false);
        expect(Tok::Pipe, "'|'");
        expect(Tok::KwStep1, "'step1'");
        d.step1 = term(false);
        in_step = false;
      }
      cur = nullptr;
      prog.defs.push_back(std::move(d));
    }
    return std::move(prog);
  }
};

}  // namespace

const BDef* BProgram::find(std::string_view name) const {
  for (const BDef& d : defs)
    if (d.name == name) return &d;
  return nullptr;
}

BProgram parse_bc(std::string_view src) {
  Parser p{lex(src)};
  return p.run();
}

namespace {

struct BEnv {
  std::vector<std::pair<std::string, const std::string*>> vars;
  const std::string* rec = nullptr;

  const std::string& get(const std::string& name) const {
    for (const auto& [n, v] : vars)
      if (n == name) return *v;
    throw eval_error("unbound variable '" + name + "'");
  }
};

std::string beval(const BProgram& p, const BTerm& t, const BEnv& env);

std::string bapply(const BProgram& p, const BDef& d,
                   const std::vector<std::string>& normals,
                   const std::vector<std::string>& safes) {
  BEnv env;
  if (!d.recursive) {
    for (std::size_t i = 0; i < d.normal_params.size(); ++i)
      env.vars.emplace_back(d.normal_params[i], &normals[i]);
    for (std::size_t i = 0; i < d.safe_params.size(); ++i)
      env.vars.emplace_back(d.safe_params[i], &safes[i]);
    return beval(p, d.body, env);
  }
  const std::string& w = normals[0];
  if (w.empty()) {
    for (std::size_t i = 1; i < d.normal_params.size(); ++i)
      env.vars.emplace_back(d.normal_params[i], &normals[i]);
    for (std::size_t i = 0; i < d.safe_params.size(); ++i)
      env.vars.emplace_back(d.safe_params[i], &safes[i]);
    return beval(p, d.base, env);
  }
  char bit = w.back();
  std::vector<std::string> shorter = normals;
  shorter[0].pop_back();
  std::string prev = bapply(p, d, shorter, safes);
  env.vars.emplace_back(d.normal_params[0], &shorter[0]);
  for (std::size_t i = 1; i < d.normal_params.size(); ++i)
    env.vars.emplace_back(d.normal_params[i], &normals[i]);
  for (std::size_t i = 0; i < d.safe_params.size(); ++i)
    env.vars.emplace_back(d.safe_params[i], &safes[i]);
  env.rec = &prev;
  return beval(p, bit == '0' ? d.step0 : d.step1, env);
}

std::string beval(const BProgram& p, const BTerm& t, const BEnv& env) {
  switch (t.kind) {
    case BTerm::Kind::Var:
      return env.get(t.name);
    case BTerm::Kind::Rec:
      return *env.rec;
    case BTerm::Kind::Eps:
      return "";
    case BTerm::Kind::S0:
      return beval(p, t.safes[0], env) + '0';
    case BTerm::Kind::S1:
      return beval(p, t.safes[0], env) + '1';
    case BTerm::Kind::P: {
      std::string s = beval(p, t.safes[0], env);
      if (!s.empty()) s.pop_back();
      return s;
    }
    case BTerm::Kind::C: {
      std::string a = beval(p, t.safes[0], env);
      std::string b = beval(p, t.safes[1], env);
      std::string c = beval(p, t.safes[2], env);
      return (!a.empty() && a.back() == '1') ? b : c;
    }
    case BTerm::Kind::Call: {
      std::vector<std::string> normals, safes;
      for (const BTerm& a : t.normals) normals.push_back(beval(p, a, env));
      for (const BTerm& a : t.safes) safes.push_back(beval(p, a, env));
      return bapply(p, *p.find(t.name), normals, safes);
    }
  }
  throw eval_error("corrupt term");
}

void require_bits(const std::string& s) {
  for (char c : s)
    if (c != '0' && c != '1')
      throw eval_error("strings may only contain 0 and 1");
}

}  // namespace

std::string eval_b(const BProgram& p, std::string_view fn,
                   const std::vector<std::string>& normals,
                   const std::vector<std::string>& safes) {
  const BDef* d = p.find(fn);
  if (d == nullptr)
    throw eval_error("unknown function '" + std::string(fn) + "'");
  if (d->normal_params.size() != normals.size() ||
      d->safe_params.size() != safes.size()) {
    std::ostringstream os;
    os << "'" << fn << "' expects (" << d->normal_params.size() << " / "
       << d->safe_params.size() << ") arguments";
    throw eval_error(os.str());
  }
  for (const std::string& s : normals) require_bits(s);
  for (const std::string& s : safes) require_bits(s);
  return bapply(p, *d, normals, safes);
}

SetNode encode_nu(SetStore& store, std::string_view bits) {
  SetNode cur = store.empty();
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw eval_error("strings may only contain 0 and 1");
    cur = kpair(store, numeral(store, c == '1' ? 2u : 1u), cur);
  }
  return cur;
}

namespace {

bool is_numeral_one(const SetStore& store, SetNode t) {
  auto kids = store.children(t);
  return kids.size() == 1 && kids[0] == store.empty();
}

bool is_numeral_two(const SetStore& store, SetNode t) {
  auto kids = store.children(t);
  if (kids.size() != 2) return false;
  return (kids[0] == store.empty() && is_numeral_one(store, kids[1])) ||
         (kids[1] == store.empty() && is_numeral_one(store, kids[0]));
}

}  // namespace

std::string decode_nu(const SetStore& store, SetNode x) {
  std::string reversed;
  while (x != store.empty()) {
    auto kids = store.children(x);
    if (kids.size() != 2)
      throw not_in_image("NotInImage: node is not a coded string");
    SetNode a = kids[0], b = kids[1];
    if (store.card(a) > store.card(b)) std::swap(a, b);
    if (store.card(a) != 1 || store.card(b) != 2)
      throw not_in_image("NotInImage: node is not a coded string");
    SetNode tag = store.children(a)[0];
    auto bk = store.children(b);
    SetNode rest;
    if (bk[0] == tag) rest = bk[1];
    else if (bk[1] == tag) rest = bk[0];
    else throw not_in_image("NotInImage: node is not a coded string");
    if (is_numeral_one(store, tag)) reversed += '0';
    else if (is_numeral_two(store, tag)) reversed += '1';
    else throw not_in_image("NotInImage: node is not a coded string");
    x = rest;
  }
  return std::string(reversed.rbegin(), reversed.rend());
}

namespace {

// Everything below assembles source text and hands it to the regular
// parser and checker, so compiled output obeys exactly the rules user
// programs do.

const char* kPlainPrelude = R"(
def sing(/a) := pair(/a, a)
def finunion(/a, b) := union(/pair(/a, b))
def is_empty(/a) := cond_in(/#1, #0, #0, pair(/a, a))
def bnot(/a) := cond_in(/#0, #1, #0, a)
def bor(/a, b) := finunion(/a, b)
def band(/a, b) := cond_in(/b, #0, #0, a)
def diff(/a, b) := sep c in a : cond_in(/#0, #1, c, b)
def subset(/a, b) := is_empty(/diff(/a, b))
def eq(/a, b) := band(/subset(/a, b), subset(/b, a))
def kpair(/a, b) := pair(/sing(/a), pair(/a, b))
def ite_rel(/a, b, c) := cond_in(/a, b, #0, c)
def pred_h(/b, a) := sep c in a : eq(/a, pair(/b, c))
def pred_g(/a) := sep b in a : pred_h(/b, a)
def pred(/a) := ite_rel(/union(/a), #0, bnot(/is_empty(/pred_g(/a))))
def Pred(/a) := diff(/pred(/pred(/a)), pair(/#0, #1))
def ParityCond(/a, b, c) := cond_in(/b, c, sing(/#2), a)
def S0(/a) := kpair(/#1, a)
def S1(/a) := kpair(/#2, a)
)";

// The restricted prelude gets by without literals and without pair
// outside the blessed realizations: constants grow out of diff(/v, v)
// and ordered pairs out of singletons and two-set unions.
const char* kPrimePrelude = R"(
def sing(/a) := pair(/a, a)
def finunion(/a, b) := union(/pair(/a, b))
def diff(/a, b) := sep c in a : cond_in(/#0, #1, c, b)
def czero(/v) := diff(/v, v)
def cone(/v) := sing(/czero(/v))
def ctwo(/v) := finunion(/cone(/v), sing(/cone(/v)))
def is_empty(/a) := cond_in(/cone(/a), czero(/a), czero(/a), sing(/a))
def bnot(/a) := cond_in(/czero(/a), cone(/a), czero(/a), a)
def bor(/a, b) := finunion(/a, b)
def band(/a, b) := cond_in(/b, czero(/a), czero(/a), a)
def subset(/a, b) := is_empty(/diff(/a, b))
def eq(/a, b) := band(/subset(/a, b), subset(/b, a))
def kpair(/a, b) := finunion(/sing(/sing(/a)), sing(/finunion(/sing(/a), sing(/b))))
def ite_rel(/a, b, c) := cond_in(/a, b, czero(/c), c)
def pred_h(/b, a) := sep c in a : eq(/a, pair(/b, c))
def pred_g(/a) := sep b in a : pred_h(/b, a)
def pred(/a) := ite_rel(/union(/a), czero(/a), bnot(/is_empty(/pred_g(/a))))
def Pred(/a) := diff(/pred(/pred(/a)), ctwo(/a))
def ParityCond(/a, b, c) := cond_in(/b, c, sing(/ctwo(/a)), a)
def S0(/a) := kpair(/cone(/a), a)
def S1(/a) := kpair(/ctwo(/a), a)
)";

struct Emitter {
  CompileProfile prof;
  const BDef* def = nullptr;
  std::string seed_normal;  // first normal parameter, if any
  std::string seed_any;     // first parameter of either kind

  bool prime() const { return prof == CompileProfile::PcsfPrime; }

  std::string seed(bool normal_pos) const {
    if (!normal_pos) return seed_any;
    if (seed_normal.empty())
      throw eval_error("definition '" + def->name +
                       "' builds a constant in a normal position but has no "
                       "normal parameter");
    return seed_normal;
  }

  std::string zero(bool np) const {
    return prime() ? "czero(/" + seed(np) + ")" : "#0";
  }
  std::string one(bool np) const {
    return prime() ? "cone(/" + seed(np) + ")" : "#1";
  }
  std::string two(bool np) const {
    return prime() ? "ctwo(/" + seed(np) + ")" : "#2";
  }
  std::string tag(int i, bool np) const { return i == 0 ? one(np) : two(np); }
  std::string pair10(bool np) const {
    return prime() ? "kpair(/" + one(np) + ", " + zero(np) + ")" : "<#1, #0>";
  }

  // second component of a pair-shaped node, and the companion of a tag
  // inside an unordered pair
  std::string snd(const std::string& w, int i) const {
    if (prime())
      return "pred(/diff(/pred(/" + w + "), sing(/" + tag(i, false) + ")))";
    return "union(/diff(/union(/" + w + "), sing(/" + tag(i, false) + ")))";
  }
  std::string companion(const std::string& w, int i) const {
    if (prime())
      return "pred(/diff(/" + w + ", sing(/" + tag(i, false) + ")))";
    return "union(/diff(/" + w + ", sing(/" + tag(i, false) + ")))";
  }

  std::string trans(const BTerm& t, bool normal_pos, const std::string* s_sub,
                    const std::string* rec_sub) const {
    switch (t.kind) {
      case BTerm::Kind::Var:
        if (s_sub != nullptr && def->recursive &&
            t.name == def->normal_params[0])
          return *s_sub;
        return t.name;
      case BTerm::Kind::Rec:
        return *rec_sub;
      case BTerm::Kind::Eps:
        return zero(normal_pos);
      case BTerm::Kind::S0:
        return "S0(/" + trans(t.safes[0], normal_pos, s_sub, rec_sub) + ")";
      case BTerm::Kind::S1:
        return "S1(/" + trans(t.safes[0], normal_pos, s_sub, rec_sub) + ")";
      case BTerm::Kind::P:
        return "Pred(/" + trans(t.safes[0], normal_pos, s_sub, rec_sub) + ")";
      case BTerm::Kind::C:
        return "ParityCond(/" +
               trans(t.safes[0], normal_pos, s_sub, rec_sub) + ", " +
               trans(t.safes[1], normal_pos, s_sub, rec_sub) + ", " +
               trans(t.safes[2], normal_pos, s_sub, rec_sub) + ")";
      case BTerm::Kind::Call: {
        std::string out = t.name + "(";
        bool first = true;
        for (const BTerm& a : t.normals) {
          if (!first) out += ", ";
          first = false;
          out += trans(a, true, s_sub, rec_sub);
        }
        out += " /";
        first = true;
        for (const BTerm& a : t.safes) {
          out += first ? " " : ", ";
          first = false;
          out += trans(a, normal_pos, s_sub, rec_sub);
        }
        return out + ")";
      }
    }
    throw eval_error("corrupt term");
  }

  static std::string header(const BDef& d) {
    std::string out = d.name + "(";
    bool first = true;
    for (const std::string& n : d.normal_params) {
      if (!first) out += ", ";
      first = false;
      out += n;
    }
    out += " /";
    first = true;
    for (const std::string& s : d.safe_params) {
      out += first ? " " : ", ";
      first = false;
      out += s;
    }
    return out + ")";
  }

  static std::string ite(const std::string& then_v, const std::string& else_v,
                         const std::string& guard) {
    return "ite_rel(/" + then_v + ", " + else_v + ", " + guard + ")";
  }

};

std::string emit_def(Emitter& em, const BDef& d) {
  em.def = &d;
  em.seed_normal = d.normal_params.empty() ? "" : d.normal_params[0];
  em.seed_any =
      d.normal_params.empty() ? d.safe_params[0] : d.normal_params[0];

  if (!d.recursive)
    return "def " + Emitter::header(d) + " := " +
           em.trans(d.body, false, nullptr, nullptr) + "\n";

  const std::string& w = d.normal_params[0];
  std::string collapsed = "union(/@rec)";
  std::string base_v = em.trans(d.base, false, nullptr, nullptr);

  // the empty-string row and the one-bit row that cannot reuse the
  // collapsed collection
  std::string zero_arg = em.zero(false);
  std::string one_bit_v = em.trans(d.step0, false, &zero_arg, &base_v);

  // generic doubleton rows, one per bit
  std::string comp0 = em.companion(w, 0);
  std::string comp1 = em.companion(w, 1);
  std::string dbl0_v = em.trans(d.step0, false, &comp0, &collapsed);
  std::string dbl1_v = em.trans(d.step1, false, &comp1, &collapsed);

  std::string t_empty = "eq(/" + w + ", " + em.zero(false) + ")";
  std::string t_onebit = "eq(/" + w + ", " + em.pair10(false) + ")";
  std::string t_pair = "bor(/eq(/" + w + ", kpair(/" + em.one(false) + ", " +
                       em.snd(w, 0) + ")), eq(/" + w + ", kpair(/" +
                       em.two(false) + ", " + em.snd(w, 1) + ")))";
  std::string t_dbl0 = "band(/eq(/" + w + ", finunion(/sing(/" +
                       em.one(false) + "), sing(/" + comp0 +
                       "))), bnot(/eq(/" + w + ", " + em.two(false) + ")))";
  std::string t_dbl1 = "eq(/" + w + ", finunion(/sing(/" + em.two(false) +
                       "), sing(/" + comp1 + ")))";

  std::string body = Emitter::ite(
      base_v,
      Emitter::ite(
          one_bit_v,
          Emitter::ite(
              collapsed,
              Emitter::ite(dbl0_v,
                           Emitter::ite(dbl1_v, em.zero(false), t_dbl1),
                           t_dbl0),
              t_pair),
          t_onebit),
      t_empty);

  return "defrec " + Emitter::header(d) + " := " + body + "\n";
}

}  // namespace

std::string compile_bc_source(const BProgram& p, CompileProfile profile) {
  std::string out =
      profile == CompileProfile::PcsfPrime ? kPrimePrelude : kPlainPrelude;
  Emitter em;
  em.prof = profile;
  for (const BDef& d : p.defs) out += emit_def(em, d);
  return out;
}

PcsfProgram compile_bc(const BProgram& p, CompileProfile profile) {
  PcsfProgram out = parse_program(compile_bc_source(p, profile));
  check(out);
  return out;
}

}  // namespace pcsf
