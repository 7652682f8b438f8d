// Two evaluators with identical semantics.
//
// eval() runs over interned nodes. A recursive definition is computed
// bottom-up: the transitive closure of its first normal argument is
// walked children-first, the step body runs once per node, and each
// value is remembered under (definition, recursion node, remaining
// normals, safes). The memo lives for one top-level eval() call, so
// repeated calls are bit-for-bit reproducible, while nested uses of
// the same definition inside one call share work.
//
// eval_naive() is the cross-check: a direct recursive reading of the
// same schemes over plain nested sets, with no sharing and no memo.
// It is exponentially slower on purpose.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "pcsf/ast.hpp"
#include "pcsf/hfset.hpp"
#include "pcsf/nested.hpp"

namespace pcsf {

struct EvalCost {
  // Step-body runs of the definition eval() was asked for; for a
  // recursive f on argument x this is exactly tc_size(x)+1.
  std::uint64_t h_applications = 0;
  // Interning requests issued while evaluating. The store may satisfy
  // a request without allocating, so this is reproducible across
  // repeated calls even though the store only grows once.
  std::uint64_t nodes_created = 0;
  std::uint64_t memo_hits = 0;
  std::uint32_t max_recursion_rank = 0;
};

struct EvalLimits {
  std::uint64_t max_steps = 10'000'000;
  bool use_memo = true;
};

struct eval_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Step limit or store capacity exhausted.
struct resource_error : eval_error {
  using eval_error::eval_error;
};

struct EvalResult {
  SetNode value;
  EvalCost cost;
};

EvalResult eval(SetStore& store, const PcsfProgram& p, std::string_view fn,
                const std::vector<SetNode>& normals,
                const std::vector<SetNode>& safes, const EvalLimits& limits = {});

NestedSet eval_naive(const PcsfProgram& p, std::string_view fn,
                     const std::vector<NestedSet>& normals,
                     const std::vector<NestedSet>& safes,
                     std::uint64_t max_steps = 50'000'000);

}  // namespace pcsf
