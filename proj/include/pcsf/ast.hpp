// Term language for set functions with a normal/safe argument split.
// A definition body is a tree of variable references, builtin
// applications, calls to earlier definitions, and separation binders;
// surface literals are expanded into builtins while parsing.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace pcsf {

struct Loc {
  int line = 0, col = 0;
};

enum class Builtin { Null, Pair, Union, CondIn };

const char* builtin_name(Builtin b);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Var, Rec, Builtin, Call, Sep };

  Kind kind = Kind::Var;
  Loc loc;
  std::string name;              // Var: the variable; Call: the callee; Sep: the binder
  Builtin bi = Builtin::Null;    // Kind::Builtin only
  std::vector<TermPtr> normals;  // Kind::Call only
  std::vector<TermPtr> safes;    // Kind::Call and Kind::Builtin
  TermPtr domain, body;          // Kind::Sep
};

TermPtr mk_var(std::string name, Loc loc = {});
TermPtr mk_rec(Loc loc = {});
TermPtr mk_builtin(Builtin b, std::vector<TermPtr> safes, Loc loc = {});
TermPtr mk_call(std::string callee, std::vector<TermPtr> normals,
                std::vector<TermPtr> safes, Loc loc = {});
TermPtr mk_sep(std::string var, TermPtr domain, TermPtr body, Loc loc = {});

// Structural equality; source locations are ignored.
bool term_equal(const TermPtr& a, const TermPtr& b);

struct PcsfDef {
  std::string name;
  Loc loc;
  std::vector<std::string> normal_params;
  std::vector<std::string> safe_params;
  bool recursive = false;  // recurses over the first normal parameter
  TermPtr body;
};

struct PcsfProgram {
  std::vector<PcsfDef> defs;

  // Index of a definition, or -1. Names are unique within a program.
  int index_of(std::string_view name) const;
  const PcsfDef* find(std::string_view name) const;
};

}  // namespace pcsf
