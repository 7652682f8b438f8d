#include "pcsf/ast.hpp"

namespace pcsf {

const char* builtin_name(Builtin b) {
  switch (b) {
    case Builtin::Null: return "null";
    case Builtin::Pair: return "pair";
    case Builtin::Union: return "union";
    case Builtin::CondIn: return "cond_in";
  }
  return "?";
}

TermPtr mk_var(std::string name, Loc loc) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Var;
  t->name = std::move(name);
  t->loc = loc;
  return t;
}

TermPtr mk_rec(Loc loc) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Rec;
  t->loc = loc;
  return t;
}

TermPtr mk_builtin(Builtin b, std::vector<TermPtr> safes, Loc loc) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Builtin;
  t->bi = b;
  t->safes = std::move(safes);
  t->loc = loc;
  return t;
}

TermPtr mk_call(std::string callee, std::vector<TermPtr> normals,
                std::vector<TermPtr> safes, Loc loc) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Call;
  t->name = std::move(callee);
  t->normals = std::move(normals);
  t->safes = std::move(safes);
  t->loc = loc;
  return t;
}

TermPtr mk_sep(std::string var, TermPtr domain, TermPtr body, Loc loc) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Sep;
  t->name = std::move(var);
  t->domain = std::move(domain);
  t->body = std::move(body);
  t->loc = loc;
  return t;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Var:
      return a->name == b->name;
    case Term::Kind::Rec:
      return true;
    case Term::Kind::Builtin: {
      if (a->bi != b->bi || a->safes.size() != b->safes.size()) return false;
      for (std::size_t i = 0; i < a->safes.size(); ++i)
        if (!term_equal(a->safes[i], b->safes[i])) return false;
      return true;
    }
    case Term::Kind::Call: {
      if (a->name != b->name) return false;
      if (a->normals.size() != b->normals.size()) return false;
      if (a->safes.size() != b->safes.size()) return false;
      for (std::size_t i = 0; i < a->normals.size(); ++i)
        if (!term_equal(a->normals[i], b->normals[i])) return false;
      for (std::size_t i = 0; i < a->safes.size(); ++i)
        if (!term_equal(a->safes[i], b->safes[i])) return false;
      return true;
    }
    case Term::Kind::Sep:
      return a->name == b->name && term_equal(a->domain, b->domain) &&
             term_equal(a->body, b->body);
  }
  return false;
}

int PcsfProgram::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < defs.size(); ++i)
    if (defs[i].name == name) return static_cast<int>(i);
  return -1;
}

const PcsfDef* PcsfProgram::find(std::string_view name) const {
  int i = index_of(name);
  return i < 0 ? nullptr : &defs[static_cast<std::size_t>(i)];
}

}  // namespace pcsf
