// Programs over binary strings in the two-sorted style: a small surface
// syntax, direct string semantics, the set coding of strings, and a
// compiler into the set DSL that preserves values through the coding.
//
//   program  :=  { bdef | bdefrec }
//   bdef     :=  "bdef" name "(" params "/" params ")" ":=" term
//   bdefrec  :=  "bdefrec" name "(" params "/" params ")" ":="
//                  "base" term "|" "step0" term "|" "step1" term
//   term     :=  ident  |  "@rec"  |  name "(" [terms] "/" [terms] ")"
//             |  "eps" "(" ")"  |  "s0" "(" "/" term ")"
//             |  "s1" "(" "/" term ")"  |  "p" "(" "/" term ")"
//             |  "C" "(" "/" term "," term "," term ")"
//
// A recursive definition recurses on its first normal parameter: the
// base term covers the empty string and may not mention that parameter,
// while the step terms see it as the unconsumed prefix and "@rec" as
// the value already computed for it. Safe variables and "@rec" never
// appear in normal argument positions.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcsf/ast.hpp"
#include "pcsf/hfset.hpp"

namespace pcsf {

struct BTerm {
  enum class Kind { Var, Rec, Eps, S0, S1, P, C, Call };
  Kind kind = Kind::Var;
  Loc loc;
  std::string name;            // Var and Call
  std::vector<BTerm> normals;  // Call only
  std::vector<BTerm> safes;    // Call and the builtins
};

struct BDef {
  std::string name;
  Loc loc;
  std::vector<std::string> normal_params;
  std::vector<std::string> safe_params;
  bool recursive = false;
  BTerm body;                // plain definitions
  BTerm base, step0, step1;  // recursive definitions
};

struct BProgram {
  std::vector<BDef> defs;
  const BDef* find(std::string_view name) const;
};

// Parses and fully validates a source file: scoping, arity, the flow
// rule, recursion shape. Violations come back as parse_error.
BProgram parse_bc(std::string_view src);

// Direct string semantics over {0,1} sequences.
std::string eval_b(const BProgram& p, std::string_view fn,
                   const std::vector<std::string>& normals,
                   const std::vector<std::string>& safes);

// Thrown by decode_nu on a node outside the coding's image.
struct not_in_image : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The string coding: the empty string is 0, and appending bit i wraps
// the code in an ordered pair tagged i+1. decode_nu inverts it.
SetNode encode_nu(SetStore& store, std::string_view bits);
std::string decode_nu(const SetStore& store, SetNode x);

enum class CompileProfile { Pcsf, PcsfPrime };

// Emits a self-contained checked program with one definition per B
// definition, same names, plus a fixed prelude. The PcsfPrime profile
// keeps every emitted body inside the restricted fragment, paying with
// synthesized constants where the plain profile writes literals.
PcsfProgram compile_bc(const BProgram& p,
                       CompileProfile profile = CompileProfile::Pcsf);

// The exact source text compile_bc builds and parses.
std::string compile_bc_source(const BProgram& p,
                              CompileProfile profile = CompileProfile::Pcsf);

}  // namespace pcsf
