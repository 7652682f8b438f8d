// Plain tree representation of hereditarily finite sets. Every set
// stores its elements directly, so equal subtrees are duplicated; the
// naive evaluator runs on this form to have something the shared-graph
// machinery can be compared against.
#pragma once

#include <vector>

#include "pcsf/hfset.hpp"

namespace pcsf {

struct NestedSet {
  std::vector<NestedSet> elems;  // canonically ordered, no duplicates
  int rnk = 0;
};

// Sorts, deduplicates, and fills in the rank.
NestedSet ns_make(std::vector<NestedSet> elems);

NestedSet ns_empty();

// Same total order the interner uses: rank, then cardinality, then the
// element sequences compared largest element first.
int ns_compare(const NestedSet& a, const NestedSet& b);
bool ns_equal(const NestedSet& a, const NestedSet& b);

bool ns_member(const NestedSet& x, const NestedSet& s);
NestedSet ns_union_of(const NestedSet& s);

NestedSet to_nested(const SetStore& store, SetNode n);
SetNode from_nested(SetStore& store, const NestedSet& s);

}  // namespace pcsf
