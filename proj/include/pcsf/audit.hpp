#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pcsf/ast.hpp"
#include "pcsf/hfset.hpp"

namespace pcsf {

// One measured evaluation. normal_ct sums the closure cards of the
// normal arguments, safe_union_ct is the closure card of the union of
// the safe arguments, result_ct the closure card of the value.
struct AuditSample {
  std::uint64_t normal_ct = 0;
  std::uint64_t safe_union_ct = 0;
  std::uint64_t result_ct = 0;
};

// Fixed normals, growing safes. The size bound puts coefficient one on
// the safe side, so the offset result_ct - safe_union_ct must stay
// bounded: the verdict compares its max over the late samples against
// the max over the early ones.
struct SafeExperiment {
  bool applicable = false;
  std::vector<AuditSample> samples;
  std::int64_t early_max_offset = 0;
  std::int64_t late_max_offset = 0;
  bool pass = true;
};

// Fixed safes, growing normals. The normal side may grow polynomially;
// the verdict fits a log-log slope and compares it to max_degree.
struct NormalExperiment {
  bool applicable = false;
  std::vector<AuditSample> samples;
  double fitted_degree = 0.0;
  bool pass = true;
};

struct AuditReport {
  std::string function;
  std::string generator;
  std::uint64_t seed = 0;
  double max_degree = 4.0;
  SafeExperiment safe_side;
  NormalExperiment normal_side;
  std::vector<std::string> notes;
  bool pass = true;

  std::string to_json() const;
};

struct AuditOptions {
  std::string generator = "numerals:200";
  std::uint64_t seed = 1;
  double max_degree = 4.0;
  std::size_t max_nodes = 1'000'000;
  std::uint64_t max_steps = 10'000'000;
};

// Argument family of growing closure card, described by a kind:param
// spec: numerals:N (von Neumann numerals), interval:N (the sets
// {2,...,n}), nu:L (codes of random strings up to length L), random:N
// (a seeded growth chain). Sizes follow a geometric grid up to param.
std::vector<SetNode> generator_family(SetStore& store, std::string_view spec,
                                      std::uint64_t seed);

AuditReport audit_size(const PcsfProgram& p, std::string_view fn,
                       const AuditOptions& opts = {});

}  // namespace pcsf
