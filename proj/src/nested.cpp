#include "pcsf/nested.hpp"

#include <algorithm>

namespace pcsf {

int ns_compare(const NestedSet& a, const NestedSet& b) {
  if (a.rnk != b.rnk) return a.rnk < b.rnk ? -1 : 1;
  if (a.elems.size() != b.elems.size())
    return a.elems.size() < b.elems.size() ? -1 : 1;
  for (std::size_t i = a.elems.size(); i-- > 0;) {
    int c = ns_compare(a.elems[i], b.elems[i]);
    if (c != 0) return c;
  }
  return 0;
}

bool ns_equal(const NestedSet& a, const NestedSet& b) {
  return ns_compare(a, b) == 0;
}

NestedSet ns_make(std::vector<NestedSet> elems) {
  std::sort(elems.begin(), elems.end(),
            [](const NestedSet& x, const NestedSet& y) { return ns_compare(x, y) < 0; });
  elems.erase(std::unique(elems.begin(), elems.end(),
                          [](const NestedSet& x, const NestedSet& y) { return ns_compare(x, y) == 0; }),
              elems.end());
  NestedSet s;
  int r = 0;
  for (const NestedSet& e : elems) r = std::max(r, e.rnk + 1);
  s.elems = std::move(elems);
  s.rnk = r;
  return s;
}

NestedSet ns_empty() { return NestedSet{}; }

bool ns_member(const NestedSet& x, const NestedSet& s) {
  for (const NestedSet& e : s.elems)
    if (ns_compare(e, x) == 0) return true;
  return false;
}

NestedSet ns_union_of(const NestedSet& s) {
  std::vector<NestedSet> all;
  for (const NestedSet& e : s.elems)
    for (const NestedSet& ee : e.elems) all.push_back(ee);
  return ns_make(std::move(all));
}

NestedSet to_nested(const SetStore& store, SetNode n) {
  std::vector<NestedSet> kids;
  for (SetNode k : store.children(n)) kids.push_back(to_nested(store, k));
  return ns_make(std::move(kids));
}

SetNode from_nested(SetStore& store, const NestedSet& s) {
  std::vector<SetNode> kids;
  kids.reserve(s.elems.size());
  for (const NestedSet& e : s.elems) kids.push_back(from_nested(store, e));
  return store.intern(std::move(kids));
}

}  // namespace pcsf
