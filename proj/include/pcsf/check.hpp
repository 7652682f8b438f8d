// Flow rules for the normal/safe split.
//
// A term sitting in a normal argument position must be built from
// normal variables (and locally bound sep variables) only: safe
// variables and @rec may not leak in. Normals may flow into safe
// positions. A separation predicate is the realm of safe-only
// functions: no normal variables, and calls restricted to definitions
// that take no normal arguments and never recurse. Recursion needs a
// first normal parameter to recurse on.
//
// Each accepted definition gets a stratum: safe-only definitions have
// no normal parameters, no recursion, and call only safe-only
// definitions; everything else is in the full class. Independently, a
// definition is tagged for the restricted fragment when its body uses
// only variables, cond_in, calls to diff / sing / pred / finunion
// (taken as that fragment's base functions by name) or to other tagged
// definitions, and mentions @rec solely as union(/@rec).
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcsf/ast.hpp"

namespace pcsf {

enum class CheckFault {
  SafeInNormalPosition,
  RecInNormalPosition,
  NormalInSeparation,
  RecursionWithoutNormal,
};

const char* check_fault_name(CheckFault f);

struct check_error : std::runtime_error {
  check_error(CheckFault f, const std::string& msg, Loc l);
  CheckFault fault;
  Loc loc;
};

enum class Stratum { SafeOnly, Full };

struct DefInfo {
  Stratum stratum = Stratum::SafeOnly;
  bool prime_compatible = false;
  std::uint64_t complexity = 1;
};

// One entry per definition, same order as the program.
struct CheckResult {
  std::vector<DefInfo> defs;
  const DefInfo& of(const PcsfProgram& p, std::string_view name) const;
};

CheckResult check(const PcsfProgram& p);

// The measure behind DefInfo::complexity. Renaming arguments is free:
// a body that applies one builtin or one call to bare variables costs
// just that function. Genuine composition costs one plus the measures
// of every part (bare arguments count as projections, measure 1).
// Separation costs a flat 1 plus its domain if composed; recursion
// adds one on top of its step body.
std::uint64_t complexity(const PcsfProgram& p, std::string_view name);

}  // namespace pcsf
