#include "pcsf/parse.hpp"

#include <cctype>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace pcsf {

namespace {

enum class Tok {
  End, Ident, KwDef, KwDefrec, KwSep, KwIn, Rec,
  LParen, RParen, LBrace, RBrace, Lt, Gt,
  Comma, Slash, Colon, Assign, Numeral, Bits,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  unsigned long num = 0;
  Loc loc;
};

std::string fmt(const std::string& msg, Loc l) {
  std::ostringstream os;
  os << l.line << ':' << l.col << ": " << msg;
  return os.str();
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  auto take = [&]() {
    char c = src[i++];
    bump(c);
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
    auto push = [&](Tok k, std::string text = {}, unsigned long num = 0) {
      out.push_back(Token{k, std::move(text), num, at});
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string w;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        w += take();
      if (w == "def") push(Tok::KwDef);
      else if (w == "defrec") push(Tok::KwDefrec);
      else if (w == "sep") push(Tok::KwSep);
      else if (w == "in") push(Tok::KwIn);
      else push(Tok::Ident, std::move(w));
      continue;
    }
    if (c == '@') {
      take();
      std::string w;
      while (i < src.size() &&
             std::isalnum(static_cast<unsigned char>(src[i])))
        w += take();
      if (w != "rec") throw parse_error("expected '@rec'", at);
      push(Tok::Rec);
      continue;
    }
    if (c == '#') {
      take();
      if (i >= src.size() || !std::isdigit(static_cast<unsigned char>(src[i])))
        throw parse_error("'#' must be followed by digits", at);
      unsigned long v = 0;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        v = v * 10 + static_cast<unsigned long>(take() - '0');
        if (v > 100000000UL) throw parse_error("numeral out of range", at);
      }
      push(Tok::Numeral, {}, v);
      continue;
    }
    if (c == '"') {
      take();
      std::string bits;
      while (i < src.size() && src[i] != '"') {
        char b = take();
        if (b != '0' && b != '1')
          throw parse_error("string literals may only contain 0 and 1", at);
        bits += b;
      }
      if (i >= src.size()) throw parse_error("unterminated string literal", at);
      take();
      if (i >= src.size() || src[i] != 'b')
        throw parse_error("string literal needs a 'b' suffix", at);
      take();
      push(Tok::Bits, std::move(bits));
      continue;
    }
    take();
    switch (c) {
      case '(': push(Tok::LParen); break;
      case ')': push(Tok::RParen); break;
      case '{': push(Tok::LBrace); break;
      case '}': push(Tok::RBrace); break;
      case '<': push(Tok::Lt); break;
      case '>': push(Tok::Gt); break;
      case ',': push(Tok::Comma); break;
      case '/': push(Tok::Slash); break;
      case ':':
        if (i < src.size() && src[i] == '=') {
          take();
          push(Tok::Assign);
        } else {
          push(Tok::Colon);
        }
        break;
      default:
        throw parse_error(std::string("stray character '") + c + "'", at);
    }
  }
  out.push_back(Token{Tok::End, {}, 0, Loc{line, col}});
  return out;
}

// Literal expansion. Numerals share structure aggressively: #n embeds
// #(n-1) twice, so the tree is built once and referenced.

TermPtr lit_numeral(unsigned long n, Loc at) {
  TermPtr t = mk_builtin(Builtin::Null, {}, at);
  for (unsigned long k = 0; k < n; ++k) {
    TermPtr single = mk_builtin(Builtin::Pair, {t, t}, at);
    t = mk_builtin(Builtin::Union,
                   {mk_builtin(Builtin::Pair, {t, single}, at)}, at);
  }
  return t;
}

TermPtr lit_kpair(TermPtr a, TermPtr b, Loc at) {
  TermPtr fst = mk_builtin(Builtin::Pair, {a, a}, at);
  TermPtr both = mk_builtin(Builtin::Pair, {std::move(a), std::move(b)}, at);
  return mk_builtin(Builtin::Pair, {std::move(fst), std::move(both)}, at);
}

TermPtr lit_braces(std::vector<TermPtr> ts, Loc at) {
  if (ts.empty()) return mk_builtin(Builtin::Null, {}, at);
  if (ts.size() == 1) return mk_builtin(Builtin::Pair, {ts[0], ts[0]}, at);
  if (ts.size() == 2)
    return mk_builtin(Builtin::Pair, {std::move(ts[0]), std::move(ts[1])}, at);
  TermPtr head =
      mk_builtin(Builtin::Pair, {std::move(ts[0]), std::move(ts[1])}, at);
  ts.erase(ts.begin(), ts.begin() + 2);
  TermPtr rest = lit_braces(std::move(ts), at);
  return mk_builtin(
      Builtin::Union,
      {mk_builtin(Builtin::Pair, {std::move(head), std::move(rest)}, at)}, at);
}

TermPtr lit_bits(const std::string& bits, Loc at) {
  TermPtr t = mk_builtin(Builtin::Null, {}, at);
  for (char c : bits) {
    TermPtr tag = lit_numeral(c == '1' ? 2 : 1, at);
    t = lit_kpair(std::move(tag), std::move(t), at);
  }
  return t;
}

int builtin_arity(Builtin b) {
  switch (b) {
    case Builtin::Null: return 0;
    case Builtin::Pair: return 2;
    case Builtin::Union: return 1;
    case Builtin::CondIn: return 4;
  }
  return 0;
}

bool lookup_builtin(const std::string& name, Builtin& out) {
  if (name == "null") out = Builtin::Null;
  else if (name == "pair") out = Builtin::Pair;
  else if (name == "union") out = Builtin::Union;
  else if (name == "cond_in") out = Builtin::CondIn;
  else return false;
  return true;
}

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;
  PcsfProgram prog;

  enum class VarKind { Normal, Safe, SepBound };
  std::vector<std::pair<std::string, VarKind>> scope;
  bool in_recursive = false;

  // When false (set literals), every name is out of bounds and sep is
  // refused, so the result is guaranteed closed.
  bool allow_defs = true;

  const Token& cur() const { return toks[pos]; }
  Token eat() { return toks[pos++]; }

  bool at(Tok k) const { return cur().kind == k; }

  Token expect(Tok k, const char* what) {
    if (!at(k)) throw parse_error(std::string("expected ") + what, cur().loc);
    return eat();
  }

  bool find_var(const std::string& name, VarKind& out) const {
    for (std::size_t i = scope.size(); i-- > 0;) {
      if (scope[i].first == name) {
        out = scope[i].second;
        return true;
      }
    }
    return false;
  }

  std::vector<std::string> param_list(Tok stop) {
    std::vector<std::string> names;
    if (at(stop)) return names;
    for (;;) {
      Token t = expect(Tok::Ident, "a parameter name");
      names.push_back(t.text);
      if (at(Tok::Comma)) {
        eat();
        continue;
      }
      return names;
    }
  }

  PcsfDef parse_def() {
    bool recursive = at(Tok::KwDefrec);
    Loc at_kw = eat().loc;
    Token name = expect(Tok::Ident, "a definition name");
    Builtin ignored;
    if (lookup_builtin(name.text, ignored))
      throw parse_error("'" + name.text + "' is a builtin and cannot be redefined",
                        name.loc);
    if (prog.index_of(name.text) >= 0)
      throw parse_error("duplicate definition of '" + name.text + "'", name.loc);

    expect(Tok::LParen, "'('");
    std::vector<std::string> normals = param_list(Tok::Slash);
    expect(Tok::Slash, "'/' between normal and safe parameters");
    std::vector<std::string> safes = param_list(Tok::RParen);
    expect(Tok::RParen, "')'");
    expect(Tok::Assign, "':='");

    scope.clear();
    for (const std::string& p : normals) {
      VarKind k;
      if (find_var(p, k))
        throw parse_error("duplicate parameter '" + p + "'", name.loc);
      scope.emplace_back(p, VarKind::Normal);
    }
    for (const std::string& p : safes) {
      VarKind k;
      if (find_var(p, k))
        throw parse_error("duplicate parameter '" + p + "'", name.loc);
      scope.emplace_back(p, VarKind::Safe);
    }
    in_recursive = recursive;

    PcsfDef def;
    def.name = name.text;
    def.loc = at_kw;
    def.normal_params = std::move(normals);
    def.safe_params = std::move(safes);
    def.recursive = recursive;
    def.body = parse_term();
    return def;
  }

  // Fills `normals` and `safes`. Accepts "()" as fully empty.
  void parse_args(std::vector<TermPtr>& normals, std::vector<TermPtr>& safes) {
    expect(Tok::LParen, "'('");
    if (at(Tok::RParen)) {
      eat();
      return;
    }
    if (!at(Tok::Slash)) {
      for (;;) {
        normals.push_back(parse_term());
        if (at(Tok::Comma)) {
          eat();
          continue;
        }
        break;
      }
    }
    expect(Tok::Slash, "'/' between normal and safe arguments");
    if (!at(Tok::RParen)) {
      for (;;) {
        safes.push_back(parse_term());
        if (at(Tok::Comma)) {
          eat();
          continue;
        }
        break;
      }
    }
    expect(Tok::RParen, "')'");
  }

  TermPtr parse_term() {
    Token t = cur();
    switch (t.kind) {
      case Tok::Numeral:
        eat();
        return lit_numeral(t.num, t.loc);
      case Tok::Bits:
        eat();
        return lit_bits(t.text, t.loc);
      case Tok::LBrace: {
        eat();
        std::vector<TermPtr> ts;
        if (!at(Tok::RBrace)) {
          for (;;) {
            ts.push_back(parse_term());
            if (at(Tok::Comma)) {
              eat();
              continue;
            }
            break;
          }
        }
        expect(Tok::RBrace, "'}'");
        return lit_braces(std::move(ts), t.loc);
      }
      case Tok::Lt: {
        eat();
        TermPtr a = parse_term();
        expect(Tok::Comma, "',' inside a pair literal");
        TermPtr b = parse_term();
        expect(Tok::Gt, "'>'");
        return lit_kpair(std::move(a), std::move(b), t.loc);
      }
      case Tok::Rec:
        eat();
        if (!in_recursive)
          throw parse_error("'@rec' outside a recursive definition", t.loc);
        return mk_rec(t.loc);
      case Tok::KwSep: {
        eat();
        Token v = expect(Tok::Ident, "a variable after 'sep'");
        expect(Tok::KwIn, "'in'");
        TermPtr domain = parse_term();
        expect(Tok::Colon, "':' before the separation predicate");
        scope.emplace_back(v.text, VarKind::SepBound);
        TermPtr body = parse_term();
        scope.pop_back();
        return mk_sep(v.text, std::move(domain), std::move(body), t.loc);
      }
      case Tok::Ident: {
        eat();
        if (at(Tok::LParen)) {
          std::vector<TermPtr> normals, safes;
          Builtin b;
          if (lookup_builtin(t.text, b)) {
            parse_args(normals, safes);
            if (!normals.empty())
              throw parse_error("'" + t.text + "' takes no normal arguments",
                                t.loc);
            if (static_cast<int>(safes.size()) != builtin_arity(b))
              throw parse_error("'" + t.text + "' expects " +
                                    std::to_string(builtin_arity(b)) +
                                    " safe arguments",
                                t.loc);
            return mk_builtin(b, std::move(safes), t.loc);
          }
          int idx = allow_defs ? prog.index_of(t.text) : -1;
          if (idx < 0)
            throw parse_error("unknown function '" + t.text + "'", t.loc);
          const PcsfDef& callee = prog.defs[static_cast<std::size_t>(idx)];
          parse_args(normals, safes);
          if (normals.size() != callee.normal_params.size() ||
              safes.size() != callee.safe_params.size())
            throw parse_error(
                "'" + t.text + "' expects (" +
                    std::to_string(callee.normal_params.size()) + " / " +
                    std::to_string(callee.safe_params.size()) +
                    ") arguments",
                t.loc);
          return mk_call(t.text, std::move(normals), std::move(safes), t.loc);
        }
        VarKind k;
        if (!find_var(t.text, k))
          throw parse_error("unknown identifier '" + t.text + "'", t.loc);
        return mk_var(t.text, t.loc);
      }
      default:
        throw parse_error("expected a term", t.loc);
    }
  }
};

}  // namespace

parse_error::parse_error(const std::string& msg, Loc l)
    : std::runtime_error(fmt(msg, l)), loc(l) {}

PcsfProgram parse_program(const std::string& src) {
  Parser p;
  p.toks = lex(src);
  while (!p.at(Tok::End)) {
    if (!p.at(Tok::KwDef) && !p.at(Tok::KwDefrec))
      throw parse_error("expected 'def' or 'defrec'", p.cur().loc);
    p.prog.defs.push_back(p.parse_def());
  }
  return std::move(p.prog);
}

namespace {

void render(const TermPtr& t, std::ostream& os) {
  switch (t->kind) {
    case Term::Kind::Var:
      os << t->name;
      return;
    case Term::Kind::Rec:
      os << "@rec";
      return;
    case Term::Kind::Builtin: {
      os << builtin_name(t->bi) << '(';
      if (!t->safes.empty()) {
        os << '/';
        for (std::size_t i = 0; i < t->safes.size(); ++i) {
          if (i) os << ", ";
          render(t->safes[i], os);
        }
      }
      os << ')';
      return;
    }
    case Term::Kind::Call: {
      os << t->name << '(';
      for (std::size_t i = 0; i < t->normals.size(); ++i) {
        if (i) os << ", ";
        render(t->normals[i], os);
      }
      if (!t->normals.empty() || !t->safes.empty()) {
        if (!t->normals.empty()) os << ' ';
        os << '/';
        for (std::size_t i = 0; i < t->safes.size(); ++i) {
          os << (i ? ", " : " ");
          render(t->safes[i], os);
        }
      }
      os << ')';
      return;
    }
    case Term::Kind::Sep:
      os << "sep " << t->name << " in ";
      render(t->domain, os);
      os << " : ";
      render(t->body, os);
      return;
  }
}

}  // namespace

std::string pretty(const TermPtr& t) {
  std::ostringstream os;
  render(t, os);
  return os.str();
}

std::string pretty(const PcsfDef& def) {
  std::ostringstream os;
  os << (def.recursive ? "defrec " : "def ") << def.name << '(';
  for (std::size_t i = 0; i < def.normal_params.size(); ++i) {
    if (i) os << ", ";
    os << def.normal_params[i];
  }
  os << (def.normal_params.empty() ? "/" : " /");
  for (std::size_t i = 0; i < def.safe_params.size(); ++i) {
    os << (i ? ", " : " ");
    os << def.safe_params[i];
  }
  os << ") := ";
  render(def.body, os);
  return os.str();
}

std::string pretty(const PcsfProgram& prog) {
  std::ostringstream os;
  for (const PcsfDef& d : prog.defs) os << pretty(d) << '\n';
  return os.str();
}

namespace {

// Expanded literals share subterms (a numeral embeds its predecessor
// twice), so folding caches by term identity to stay linear.
SetNode fold_closed(SetStore& store, const TermPtr& t,
                    std::unordered_map<const Term*, SetNode>& seen) {
  auto it = seen.find(t.get());
  if (it != seen.end()) return it->second;
  SetNode result;
  switch (t->kind) {
    case Term::Kind::Builtin:
      switch (t->bi) {
        case Builtin::Null:
          result = store.empty();
          break;
        case Builtin::Pair: {
          SetNode a = fold_closed(store, t->safes[0], seen);
          SetNode b = fold_closed(store, t->safes[1], seen);
          result = store.intern({a, b});
          break;
        }
        case Builtin::Union:
          result = store.union_of(fold_closed(store, t->safes[0], seen));
          break;
        case Builtin::CondIn: {
          SetNode a = fold_closed(store, t->safes[0], seen);
          SetNode b = fold_closed(store, t->safes[1], seen);
          SetNode c = fold_closed(store, t->safes[2], seen);
          SetNode d = fold_closed(store, t->safes[3], seen);
          result = store.member(c, d) ? a : b;
          break;
        }
      }
      break;
    case Term::Kind::Sep:
      throw parse_error("separation is not allowed in a set literal", t->loc);
    default:
      throw parse_error("set literals must be closed", t->loc);
  }
  seen.emplace(t.get(), result);
  return result;
}

SetNode fold_closed(SetStore& store, const TermPtr& t) {
  std::unordered_map<const Term*, SetNode> seen;
  return fold_closed(store, t, seen);
}

}  // namespace

SetNode parse_set_literal(SetStore& store, const std::string& src) {
  Parser p;
  p.toks = lex(src);
  p.allow_defs = false;
  TermPtr t = p.parse_term();
  if (!p.at(Tok::End))
    throw parse_error("trailing input after the set literal", p.cur().loc);
  return fold_closed(store, t);
}

CallArgs parse_call_args(SetStore& store, const std::string& src) {
  Parser p;
  p.toks = lex(src);
  p.allow_defs = false;
  bool wrapped = p.at(Tok::LParen);
  if (wrapped) p.eat();

  CallArgs out;
  auto list = [&](std::vector<SetNode>& into, Tok stop1, Tok stop2) {
    if (p.at(stop1) || p.at(stop2)) return;
    for (;;) {
      into.push_back(fold_closed(store, p.parse_term()));
      if (p.at(Tok::Comma)) {
        p.eat();
        continue;
      }
      return;
    }
  };
  list(out.normals, Tok::Slash, wrapped ? Tok::RParen : Tok::End);
  if (p.at(Tok::Slash)) {
    p.eat();
    list(out.safes, wrapped ? Tok::RParen : Tok::End, Tok::End);
  } else if (!out.normals.empty() || (!p.at(Tok::RParen) && !p.at(Tok::End))) {
    throw parse_error("expected '/' between normal and safe arguments",
                      p.cur().loc);
  }
  if (wrapped) p.expect(Tok::RParen, "')'");
  if (!p.at(Tok::End))
    throw parse_error("trailing input after the argument list", p.cur().loc);
  return out;
}

}  // namespace pcsf
