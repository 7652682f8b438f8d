#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pcsf/ast.hpp"
#include "pcsf/hfset.hpp"

namespace pcsf {

// Source text of the catalog, byte for byte the shipped stdlib.pcsf.
const std::string& stdlib_source();

// The catalog, parsed and checked once and shared from then on.
const PcsfProgram& stdlib();

// One semantic property of a catalog entry. holds() quantifies the
// entry's defining equation over every argument tuple drawn from the
// universe of sets of rank at most 3 and reports any mismatch as false.
struct StdlibProperty {
  std::string name;
  std::function<bool(SetStore&)> holds;
};

// One property per catalog entry, in catalog order.
std::vector<StdlibProperty> equational_suite();

// All sets of rank at most r, in store order. Shared by the property
// sweeps and by tests that want the same enumeration.
std::vector<SetNode> small_universe(SetStore& store, int r);

}  // namespace pcsf
