#include "pcsf/stdlib.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>

#include "pcsf/check.hpp"
#include "pcsf/eval.hpp"
#include "pcsf/nested.hpp"
#include "pcsf/parse.hpp"

namespace pcsf {

const std::string& stdlib_source() {
  static const std::string text =
#include "stdlib_embed.inc"
      ;
  return text;
}

const PcsfProgram& stdlib() {
  static const PcsfProgram prog = [] {
    PcsfProgram p = parse_program(stdlib_source());
    check(p);
    return p;
  }();
  return prog;
}

std::vector<SetNode> small_universe(SetStore& store, int r) {
  std::vector<SetNode> level{store.empty()};
  for (int i = 0; i < r; ++i) {
    std::vector<SetNode> next;
    std::size_t n = level.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<SetNode> elems;
      for (std::size_t j = 0; j < n; ++j)
        if (mask & (std::size_t{1} << j)) elems.push_back(level[j]);
      next.push_back(store.intern(std::move(elems)));
    }
    std::sort(next.begin(), next.end(),
              [](SetNode a, SetNode b) { return a.id < b.id; });
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  return level;
}

namespace {

// The expectation side of each property lives in the nested-tree world,
// computed by direct structural recursion with none of the evaluator's
// machinery involved.
using N = NestedSet;
using Args = std::vector<N>;

N nset(std::vector<N> v) { return ns_make(std::move(v)); }

N nsing(const N& a) { return nset({a}); }

N nun2(const N& a, const N& b) {
  std::vector<N> v = a.elems;
  v.insert(v.end(), b.elems.begin(), b.elems.end());
  return nset(std::move(v));
}

N nchi(bool b) { return b ? nsing(ns_empty()) : ns_empty(); }

N nnum(int k) {
  std::vector<N> below;
  N cur;
  for (int i = 0; i < k; ++i) {
    below.push_back(cur);
    cur = nset(below);
  }
  return cur;
}

N nkpair(const N& a, const N& b) { return nset({nsing(a), nset({a, b})}); }

bool nsubsetq(const N& a, const N& b) {
  for (const N& c : a.elems)
    if (!ns_member(c, b)) return false;
  return true;
}

N ndiff(const N& a, const N& b) {
  std::vector<N> v;
  for (const N& c : a.elems)
    if (!ns_member(c, b)) v.push_back(c);
  return nset(std::move(v));
}

N napply(const N& b, const N& c) {
  N pool = ns_union_of(ns_union_of(b));
  std::vector<N> hits;
  for (const N& d : pool.elems)
    if (ns_member(nkpair(c, d), b)) hits.push_back(d);
  return ns_union_of(nset(std::move(hits)));
}

N nfst(const N& r) {
  N pool = ns_union_of(r);
  std::vector<N> shared;
  for (const N& t : pool.elems) {
    bool in_all = true;
    for (const N& e : r.elems)
      if (!ns_member(t, e)) {
        in_all = false;
        break;
      }
    if (in_all) shared.push_back(t);
  }
  return ns_union_of(nset(std::move(shared)));
}

N nrow_sel(const N& u, const N& b) {
  std::vector<N> rows;
  for (const N& r : u.elems)
    if (ns_member(nfst(r), b)) rows.push_back(r);
  return nset(std::move(rows));
}

N sp_tc(const N& x) {
  std::vector<N> v = x.elems;
  for (const N& z : x.elems) {
    N t = sp_tc(z);
    v.insert(v.end(), t.elems.begin(), t.elems.end());
  }
  return nset(std::move(v));
}

N sp_pred_h(const N& b, const N& a) {
  std::vector<N> v;
  for (const N& c : a.elems)
    if (ns_equal(a, nset({b, c}))) v.push_back(c);
  return nset(std::move(v));
}

N sp_pred_g(const N& a) {
  std::vector<N> v;
  for (const N& b : a.elems)
    if (!sp_pred_h(b, a).elems.empty()) v.push_back(b);
  return nset(std::move(v));
}

N sp_pred(const N& a) {
  return sp_pred_g(a).elems.empty() ? ns_empty() : ns_union_of(a);
}

N sp_ppred(const N& a) {
  return ndiff(sp_pred(sp_pred(a)), nset({nnum(0), nnum(1)}));
}

N nrestrict(const N& x, const N& a) {
  std::vector<N> rows;
  for (const N& z : x.elems) rows.push_back(nkpair(z, napply(a, z)));
  return nset(std::move(rows));
}

N nimage(const N& x, const N& a) {
  std::vector<N> vals;
  for (const N& z : x.elems) vals.push_back(napply(a, z));
  return nset(std::move(vals));
}

N sp_pfr_f(const N& x) {
  std::vector<N> rows;
  for (const N& z : x.elems) rows.push_back(nkpair(z, sp_pfr_f(z)));
  return nset(std::move(rows));
}

N sp_pair_all(const N& u, const N& y) {
  std::vector<N> rows;
  for (const N& v : y.elems) rows.push_back(nkpair(u, v));
  return nset(std::move(rows));
}

N nproduct(const N& x, const N& y) {
  std::vector<N> rows;
  for (const N& u : x.elems)
    for (const N& v : y.elems) rows.push_back(nkpair(u, v));
  return nset(std::move(rows));
}

N collapse(std::vector<N> vals) { return ns_union_of(nset(std::move(vals))); }

N sp_bunion_rec(const N& u, const N& x) {
  if (ns_member(u, x)) return nun2(u, nsing(u));
  std::vector<N> vals;
  for (const N& v : u.elems) vals.push_back(sp_bunion_rec(v, x));
  return collapse(std::move(vals));
}

N sp_nonempties_h(const N& z) {
  return z.elems.empty() ? ns_empty() : nsing(z);
}

N sp_nonempties_rec(const N& u, const N& x) {
  if (ns_member(u, x)) return sp_nonempties_h(u);
  std::vector<N> vals;
  for (const N& v : u.elems) vals.push_back(sp_nonempties_rec(v, x));
  return collapse(std::move(vals));
}

N sp_nonempties(const N& x) {
  std::vector<N> v;
  for (const N& z : x.elems)
    if (!z.elems.empty()) v.push_back(z);
  return nset(std::move(v));
}

N sp_restrict_rec(const N& u, const N& x, const N& a) {
  if (ns_member(u, x)) return nsing(nkpair(u, napply(a, u)));
  std::vector<N> vals;
  for (const N& v : u.elems) vals.push_back(sp_restrict_rec(v, x, a));
  return collapse(std::move(vals));
}

N sp_image_rec(const N& u, const N& x, const N& a) {
  if (ns_member(u, x)) return nsing(napply(a, u));
  std::vector<N> vals;
  for (const N& v : u.elems) vals.push_back(sp_image_rec(v, x, a));
  return collapse(std::move(vals));
}

N sp_pfr_collect(const N& x, const N& u) {
  std::vector<N> rows;
  for (const N& z : x.elems) rows.push_back(nkpair(z, nrow_sel(u, z)));
  return nset(std::move(rows));
}

N sp_pfr_collect_rec(const N& w, const N& x, const N& u) {
  if (ns_member(w, x)) return nsing(nkpair(w, nrow_sel(u, w)));
  std::vector<N> vals;
  for (const N& v : w.elems) vals.push_back(sp_pfr_collect_rec(v, x, u));
  return collapse(std::move(vals));
}

N sp_pfr_k(const N& x) {
  std::vector<N> rows;
  for (const N& z : sp_tc(x).elems) rows.push_back(nkpair(z, sp_pfr_f(z)));
  return nset(std::move(rows));
}

N sp_uchoice_hit(const N& u, const N& x) {
  return ns_equal(u, nsing(x)) ? u : ns_empty();
}

N sp_uchoice_rec(const N& w, const N& z, const N& x) {
  if (ns_member(w, z)) return sp_uchoice_hit(w, x);
  std::vector<N> vals;
  for (const N& v : w.elems) vals.push_back(sp_uchoice_rec(v, z, x));
  return collapse(std::move(vals));
}

N sp_uchoice(const N& x, const N& z) {
  std::vector<N> vals;
  for (const N& u : z.elems) vals.push_back(sp_uchoice_hit(u, x));
  return collapse(std::move(vals));
}

N sp_prod_inner(const N& w, const N& y, const N& u) {
  if (ns_member(w, y)) return nsing(nkpair(u, w));
  std::vector<N> vals;
  for (const N& v : w.elems) vals.push_back(sp_prod_inner(v, y, u));
  return collapse(std::move(vals));
}

N sp_prod_outer(const N& w, const N& x, const N& y) {
  if (ns_member(w, x)) return sp_pair_all(w, y);
  std::vector<N> vals;
  for (const N& v : w.elems) vals.push_back(sp_prod_outer(v, x, y));
  return collapse(std::move(vals));
}

using SpecFn = N (*)(const Args&, const Args&);

// Runs one entry's equation against the evaluator over every argument
// tuple from the small universe.
bool sweep_entry(SetStore& store, const char* name, SpecFn fn) {
  const PcsfProgram& prog = stdlib();
  const PcsfDef* def = prog.find(name);
  if (def == nullptr) return false;
  std::vector<SetNode> uni = small_universe(store, 3);
  std::size_t nn = def->normal_params.size();
  std::size_t total = nn + def->safe_params.size();
  if (total == 0) return false;
  std::vector<std::size_t> idx(total, 0);
  for (;;) {
    std::vector<SetNode> normals, safes;
    Args normal_trees, safe_trees;
    for (std::size_t i = 0; i < total; ++i) {
      SetNode node = uni[idx[i]];
      if (i < nn) {
        normals.push_back(node);
        normal_trees.push_back(to_nested(store, node));
      } else {
        safes.push_back(node);
        safe_trees.push_back(to_nested(store, node));
      }
    }
    EvalResult got = eval(store, prog, name, normals, safes);
    N want = fn(normal_trees, safe_trees);
    if (!ns_equal(to_nested(store, got.value), want)) return false;
    std::size_t p = 0;
    while (p < total && ++idx[p] == uni.size()) {
      idx[p] = 0;
      ++p;
    }
    if (p == total) break;
  }
  return true;
}

const std::pair<const char*, SpecFn> kSpecs[] = {
    {"sing", +[](const Args&, const Args& s) { return nsing(s[0]); }},
    {"finunion", +[](const Args&, const Args& s) { return nun2(s[0], s[1]); }},
    {"succ_set",
     +[](const Args&, const Args& s) { return nun2(s[0], nsing(s[0])); }},
    {"is_empty",
     +[](const Args&, const Args& s) { return nchi(s[0].elems.empty()); }},
    {"bnot",
     +[](const Args&, const Args& s) {
       return nchi(!ns_member(ns_empty(), s[0]));
     }},
    {"bor", +[](const Args&, const Args& s) { return nun2(s[0], s[1]); }},
    {"band",
     +[](const Args&, const Args& s) {
       return ns_member(ns_empty(), s[0]) ? s[1] : ns_empty();
     }},
    {"mem",
     +[](const Args&, const Args& s) { return nchi(ns_member(s[0], s[1])); }},
    {"diff", +[](const Args&, const Args& s) { return ndiff(s[0], s[1]); }},
    {"subset",
     +[](const Args&, const Args& s) { return nchi(nsubsetq(s[0], s[1])); }},
    {"eq",
     +[](const Args&, const Args& s) { return nchi(ns_equal(s[0], s[1])); }},
    {"kpair", +[](const Args&, const Args& s) { return nkpair(s[0], s[1]); }},
    {"ite_rel",
     +[](const Args&, const Args& s) {
       return ns_member(ns_empty(), s[2]) ? s[0] : s[1];
     }},
    {"exists_in",
     +[](const Args&, const Args& s) {
       for (const N& d : s[0].elems)
         if (ns_member(d, s[1])) return nchi(true);
       return nchi(false);
     }},
    {"apply", +[](const Args&, const Args& s) { return napply(s[0], s[1]); }},
    {"fst", +[](const Args&, const Args& s) { return nfst(s[0]); }},
    {"row_sel",
     +[](const Args&, const Args& s) { return nrow_sel(s[0], s[1]); }},
    {"pair2",
     +[](const Args&, const Args& s) { return nset({s[0], s[1]}); }},
    {"S0",
     +[](const Args&, const Args& s) { return nkpair(nnum(1), s[0]); }},
    {"S1",
     +[](const Args&, const Args& s) { return nkpair(nnum(2), s[0]); }},
    {"pred_h",
     +[](const Args&, const Args& s) { return sp_pred_h(s[0], s[1]); }},
    {"pred_g", +[](const Args&, const Args& s) { return sp_pred_g(s[0]); }},
    {"pred", +[](const Args&, const Args& s) { return sp_pred(s[0]); }},
    {"Pred", +[](const Args&, const Args& s) { return sp_ppred(s[0]); }},
    {"ParityCond",
     +[](const Args&, const Args& s) {
       return ns_member(nsing(nnum(2)), s[0]) ? s[1] : s[2];
     }},
    {"tc", +[](const Args& n, const Args&) { return sp_tc(n[0]); }},
    {"tc_union",
     +[](const Args& n, const Args&) { return ns_union_of(sp_tc(n[0])); }},
    {"rank_succ",
     +[](const Args& n, const Args&) { return nnum(n[0].rnk + 1); }},
    {"rank", +[](const Args& n, const Args&) { return nnum(n[0].rnk); }},
    {"bunion_h",
     +[](const Args& n, const Args&) { return nun2(n[0], nsing(n[0])); }},
    {"bunion_g",
     +[](const Args& n, const Args& s) {
       return ns_member(n[0], n[1]) ? nun2(n[0], nsing(n[0])) : s[0];
     }},
    {"bunion_rec",
     +[](const Args& n, const Args&) { return sp_bunion_rec(n[0], n[1]); }},
    {"bunion",
     +[](const Args& n, const Args&) {
       return nun2(n[0], ns_union_of(n[0]));
     }},
    {"nonempties_h",
     +[](const Args& n, const Args&) { return sp_nonempties_h(n[0]); }},
    {"nonempties_g",
     +[](const Args& n, const Args& s) {
       return ns_member(n[0], n[1]) ? sp_nonempties_h(n[0]) : s[0];
     }},
    {"nonempties_rec",
     +[](const Args& n, const Args&) {
       return sp_nonempties_rec(n[0], n[1]);
     }},
    {"nonempties",
     +[](const Args& n, const Args&) { return sp_nonempties(n[0]); }},
    {"restrict_h",
     +[](const Args& n, const Args& s) {
       return nsing(nkpair(n[0], napply(s[0], n[0])));
     }},
    {"restrict_g",
     +[](const Args& n, const Args& s) {
       return ns_member(n[0], n[1]) ? nsing(nkpair(n[0], napply(s[0], n[0])))
                                    : s[1];
     }},
    {"restrict_rec",
     +[](const Args& n, const Args& s) {
       return sp_restrict_rec(n[0], n[1], s[0]);
     }},
    {"restrict",
     +[](const Args& n, const Args& s) { return nrestrict(n[0], s[0]); }},
    {"image_h",
     +[](const Args& n, const Args& s) { return nsing(napply(s[0], n[0])); }},
    {"image_g",
     +[](const Args& n, const Args& s) {
       return ns_member(n[0], n[1]) ? nsing(napply(s[0], n[0])) : s[1];
     }},
    {"image_rec",
     +[](const Args& n, const Args& s) {
       return sp_image_rec(n[0], n[1], s[0]);
     }},
    {"image",
     +[](const Args& n, const Args& s) { return nimage(n[0], s[0]); }},
    {"pfr_h",
     +[](const Args& n, const Args& s) {
       return nsing(nkpair(n[0], nrow_sel(s[0], n[0])));
     }},
    {"pfr_g",
     +[](const Args& n, const Args& s) {
       return ns_member(n[0], n[1]) ? nsing(nkpair(n[0], nrow_sel(s[0], n[0])))
                                    : s[1];
     }},
    {"pfr_collect_rec",
     +[](const Args& n, const Args& s) {
       return sp_pfr_collect_rec(n[0], n[1], s[0]);
     }},
    {"pfr_collect",
     +[](const Args& n, const Args& s) { return sp_pfr_collect(n[0], s[0]); }},
    {"pfr_k", +[](const Args& n, const Args&) { return sp_pfr_k(n[0]); }},
    {"pfr_f", +[](const Args& n, const Args&) { return sp_pfr_f(n[0]); }},
    {"uchoice_g",
     +[](const Args& n, const Args& s) {
       return ns_member(n[0], n[1]) ? sp_uchoice_hit(n[0], n[2]) : s[0];
     }},
    {"uchoice_rec",
     +[](const Args& n, const Args&) {
       return sp_uchoice_rec(n[0], n[1], n[2]);
     }},
    {"uchoice",
     +[](const Args& n, const Args&) { return sp_uchoice(n[0], n[1]); }},
    {"product_h",
     +[](const Args& n, const Args&) { return nsing(nkpair(n[1], n[0])); }},
    {"product_g",
     +[](const Args& n, const Args& s) {
       return ns_member(n[0], n[1]) ? nsing(nkpair(n[2], n[0])) : s[0];
     }},
    {"product_inner",
     +[](const Args& n, const Args&) {
       return sp_prod_inner(n[0], n[1], n[2]);
     }},
    {"pair_all",
     +[](const Args& n, const Args&) { return sp_pair_all(n[0], n[1]); }},
    {"product_og",
     +[](const Args& n, const Args& s) {
       return ns_member(n[0], n[1]) ? sp_pair_all(n[0], n[2]) : s[0];
     }},
    {"product_outer",
     +[](const Args& n, const Args&) {
       return sp_prod_outer(n[0], n[1], n[2]);
     }},
    {"product",
     +[](const Args& n, const Args&) { return nproduct(n[0], n[1]); }},
};

}  // namespace

std::vector<StdlibProperty> equational_suite() {
  std::vector<StdlibProperty> out;
  for (const auto& [name, fn] : kSpecs) {
    const char* entry = name;
    SpecFn spec = fn;
    out.push_back({entry, [entry, spec](SetStore& store) {
                     return sweep_entry(store, entry, spec);
                   }});
  }
  return out;
}

}  // namespace pcsf
