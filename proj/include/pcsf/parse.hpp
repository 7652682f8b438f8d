// Surface syntax.
//
//   program  :=  { def }
//   def      :=  ("def" | "defrec") name "(" params "/" params ")" ":=" term
//   term     :=  ident
//             |  "@rec"
//             |  name "(" [terms] "/" [terms] ")"
//             |  "sep" ident "in" term ":" term
//             |  "{" [terms] "}"  |  "<" term "," term ">"  |  #digits
//             |  "bits"b
//
// Comments run from "//" to the end of the line. Literals are sugar:
// braces become pair/union trees, #n is the n-th von Neumann numeral,
// <a, b> is the two-set coding of an ordered pair, and "01..."b applies
// that pair coding bit by bit to spell a binary string. Definitions may
// only call names defined earlier in the file; "@rec" stands for the
// recursively computed collection inside a defrec body.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pcsf/ast.hpp"
#include "pcsf/hfset.hpp"

namespace pcsf {

struct parse_error : std::runtime_error {
  parse_error(const std::string& msg, Loc l);
  Loc loc;
};

PcsfProgram parse_program(const std::string& src);

// Inverse of the parser up to literal expansion: parsing the rendered
// text gives back a structurally equal program.
std::string pretty(const PcsfProgram& prog);
std::string pretty(const TermPtr& t);
std::string pretty(const PcsfDef& def);

// A closed term made of literals and builtins, evaluated on the spot.
// Variables, calls and sep are rejected.
SetNode parse_set_literal(SetStore& store, const std::string& src);

// Argument vectors for invoking a definition, written the way a call
// site would: "(#2, {} / <#0, #1>)". The outer parentheses may be
// omitted.
struct CallArgs {
  std::vector<SetNode> normals, safes;
};
CallArgs parse_call_args(SetStore& store, const std::string& src);

}  // namespace pcsf
