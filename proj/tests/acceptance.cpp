// Acceptance gate for the whole artifact. Each criterion prints exactly
// one verdict line; the exit status is the number of failed criteria.
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pcsf/audit.hpp"
#include "pcsf/bc.hpp"
#include "pcsf/check.hpp"
#include "pcsf/eval.hpp"
#include "pcsf/hfset.hpp"
#include "pcsf/nested.hpp"
#include "pcsf/parse.hpp"

using namespace pcsf;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

void report(int n, bool ok, const std::string& detail) {
  std::cout << "criterion " << n << ": " << (ok ? "pass" : "FAIL") << " ("
            << detail << ")\n";
  if (!ok) ++failures;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string fmt_secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", s);
  return buf;
}

// Every set of rank at most `depth`, built by iterated powerset.
std::vector<SetNode> rank_universe(SetStore& store, int depth) {
  std::vector<SetNode> uni = {store.empty()};
  for (int k = 0; k < depth; ++k) {
    std::vector<SetNode> next;
    for (std::uint32_t mask = 0; mask < (1u << uni.size()); ++mask) {
      std::vector<SetNode> kids;
      for (std::size_t i = 0; i < uni.size(); ++i)
        if (mask & (1u << i)) kids.push_back(uni[i]);
      next.push_back(store.intern(std::move(kids)));
    }
    std::set<std::uint64_t> seen;
    uni.clear();
    for (SetNode n : next)
      if (seen.insert(n.id).second) uni.push_back(n);
  }
  return uni;
}

// 1. The shared-graph evaluator and the naive nested-set oracle agree on
//    every stdlib definition over the whole rank <= 3 universe.
void criterion_oracle_equivalence(const PcsfProgram& lib) {
  auto start = clock_type::now();
  SetStore store;
  std::vector<SetNode> uni = rank_universe(store, 3);
  std::vector<NestedSet> uni_nested;
  for (SetNode n : uni) uni_nested.push_back(to_nested(store, n));

  std::uint64_t checks = 0, mismatches = 0;
  std::string first_bad;
  for (const PcsfDef& def : lib.defs) {
    std::size_t nn = def.normal_params.size(), ns = def.safe_params.size();
    std::vector<std::size_t> digit(nn + ns, 0);
    for (;;) {
      std::vector<SetNode> normals, safes;
      std::vector<NestedSet> nnormals, nsafes;
      for (std::size_t i = 0; i < nn; ++i) {
        normals.push_back(uni[digit[i]]);
        nnormals.push_back(uni_nested[digit[i]]);
      }
      for (std::size_t i = 0; i < ns; ++i) {
        safes.push_back(uni[digit[nn + i]]);
        nsafes.push_back(uni_nested[digit[nn + i]]);
      }
      EvalResult got = eval(store, lib, def.name, normals, safes);
      NestedSet want = eval_naive(lib, def.name, nnormals, nsafes);
      ++checks;
      if (!ns_equal(to_nested(store, got.value), want)) {
        ++mismatches;
        if (first_bad.empty()) first_bad = def.name;
      }
      std::size_t i = 0;
      while (i < digit.size() && ++digit[i] == uni.size()) digit[i++] = 0;
      if (i == digit.size()) break;
    }
  }
  double t = seconds_since(start);
  bool ok = mismatches == 0 && t < 60.0;
  std::string detail = std::to_string(uni.size()) +
                       " sets of rank <= 3 by enumeration, " +
                       std::to_string(lib.defs.size()) + " definitions, " +
                       std::to_string(checks) + " evaluations, " + fmt_secs(t);
  if (mismatches)
    detail += ", " + std::to_string(mismatches) + " mismatches, first in '" +
              first_bad + "'";
  report(1, ok, detail);
}

std::string bits_from(std::uint64_t v, int len) {
  std::string s;
  for (int i = 0; i < len; ++i) s.push_back((v >> i) & 1 ? '1' : '0');
  return s;
}

// 2. Compiled programs replay the string interpreter through the coding:
//    exhaustively for arguments of length <= 5, and on 500 random tuples
//    of lengths 6..8 per definition, in both profiles.
void criterion_compiled_replay(const std::string& bc_src) {
  auto start = clock_type::now();
  BProgram bprog = parse_bc(bc_src);
  PcsfProgram plain = compile_bc(bprog, CompileProfile::Pcsf);
  PcsfProgram prime = compile_bc(bprog, CompileProfile::PcsfPrime);

  SetStore store;
  std::mt19937_64 rng(20260819);
  std::uint64_t checks = 0, mismatches = 0;
  std::string first_bad;

  auto check_tuple = [&](const BDef& def, const std::vector<std::string>& nargs,
                         const std::vector<std::string>& sargs) {
    std::string want = eval_b(bprog, def.name, nargs, sargs);
    std::vector<SetNode> normals, safes;
    for (const std::string& s : nargs) normals.push_back(encode_nu(store, s));
    for (const std::string& s : sargs) safes.push_back(encode_nu(store, s));
    for (const PcsfProgram* prog : {&plain, &prime}) {
      EvalResult r = eval(store, *prog, def.name, normals, safes);
      ++checks;
      if (decode_nu(store, r.value) != want) {
        ++mismatches;
        if (first_bad.empty()) first_bad = def.name;
      }
    }
  };

  std::vector<std::string> short_strings;
  for (int len = 0; len <= 5; ++len)
    for (std::uint64_t v = 0; v < (1ull << len); ++v)
      short_strings.push_back(bits_from(v, len));

  for (const BDef& def : bprog.defs) {
    std::size_t tp = def.normal_params.size() + def.safe_params.size();
    std::vector<std::size_t> digit(tp, 0);
    for (;;) {
      std::vector<std::string> args;
      for (std::size_t i = 0; i < tp; ++i) args.push_back(short_strings[digit[i]]);
      std::vector<std::string> nargs(args.begin(),
                                     args.begin() + def.normal_params.size());
      std::vector<std::string> sargs(args.begin() + def.normal_params.size(),
                                     args.end());
      check_tuple(def, nargs, sargs);
      std::size_t i = 0;
      while (i < digit.size() && ++digit[i] == short_strings.size())
        digit[i++] = 0;
      if (i == digit.size()) break;
    }
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<std::string> args;
      for (std::size_t i = 0; i < tp; ++i) {
        int len = 6 + static_cast<int>(rng() % 3);
        args.push_back(bits_from(rng(), len));
      }
      std::vector<std::string> nargs(args.begin(),
                                     args.begin() + def.normal_params.size());
      std::vector<std::string> sargs(args.begin() + def.normal_params.size(),
                                     args.end());
      check_tuple(def, nargs, sargs);
    }
  }
  double t = seconds_since(start);
  bool ok = mismatches == 0 && t < 120.0;
  std::string detail = std::to_string(bprog.defs.size()) + " programs, " +
                       std::to_string(checks) +
                       " compiled evaluations in both profiles, " + fmt_secs(t);
  if (mismatches)
    detail += ", " + std::to_string(mismatches) + " mismatches, first in '" +
              first_bad + "'";
  report(2, ok, detail);
}

// 3. The size-bound experiments hold across the catalog: constant safe
//    offset wherever there is a safe parameter, fitted normal degree at
//    most 4 everywhere, with families reaching transitive-closure size 200.
void criterion_size_bounds(const PcsfProgram& lib) {
  auto start = clock_type::now();
  AuditOptions opts;
  opts.generator = "numerals:200";
  opts.max_steps = 1'000'000'000;
  opts.max_nodes = 4'000'000;

  std::size_t audited = 0, safe_sides = 0;
  double max_degree_seen = 0.0;
  std::vector<std::string> bad;
  for (const PcsfDef& def : lib.defs) {
    AuditReport rep = audit_size(lib, def.name, opts);
    ++audited;
    bool entry_ok = rep.pass;
    if (!def.safe_params.empty()) {
      ++safe_sides;
      entry_ok = entry_ok && rep.safe_side.applicable && rep.safe_side.pass;
    }
    if (!def.normal_params.empty()) {
      entry_ok = entry_ok && rep.normal_side.applicable && rep.normal_side.pass;
      if (rep.normal_side.applicable)
        max_degree_seen = std::max(max_degree_seen, rep.normal_side.fitted_degree);
    }
    if (!entry_ok) bad.push_back(def.name);
  }
  double t = seconds_since(start);
  bool ok = bad.empty() && t < 300.0;
  char deg[32];
  std::snprintf(deg, sizeof deg, "%.2f", max_degree_seen);
  std::string detail = std::to_string(audited) + " entries audited, " +
                       std::to_string(safe_sides) +
                       " safe-offset experiments, max fitted degree " + deg +
                       ", " + fmt_secs(t);
  if (!bad.empty()) {
    detail += ", failing: ";
    for (std::size_t i = 0; i < bad.size(); ++i)
      detail += (i ? ", " : "") + bad[i];
  }
  report(3, ok, detail);
}

// 4. The closure of a product can outgrow closure plus cardinality of
//    neither factor alone: cT({0} x a_n) >= cT(a_n) + card(a_n).
void criterion_product_growth(const PcsfProgram& lib) {
  SetStore store;
  SetNode singleton0 = store.intern({numeral(store, 0)});
  bool ok = true;
  std::string detail;
  for (unsigned n = 4; n <= 20; ++n) {
    std::vector<SetNode> kids;
    for (unsigned k = 2; k <= n; ++k) kids.push_back(numeral(store, k));
    SetNode a_n = store.intern(std::move(kids));
    EvalResult r = eval(store, lib, "product", {singleton0, a_n}, {});
    std::uint64_t lhs = store.tc_size(r.value);
    std::uint64_t rhs = store.tc_size(a_n) + store.card(a_n);
    if (lhs < rhs) {
      ok = false;
      detail = "n=" + std::to_string(n) + ": " + std::to_string(lhs) + " < " +
               std::to_string(rhs);
      break;
    }
    if (n == 20)
      detail = "n=4..20, final cT " + std::to_string(lhs) + " >= " +
               std::to_string(rhs);
  }
  report(4, ok, detail);
}

// 5. The recursion operator applies its step exactly once per node of the
//    recursion argument's transitive closure, plus once at the top.
void criterion_cost_law(const PcsfProgram& lib) {
  SetStore store;
  std::vector<SetNode> pool = rank_universe(store, 3);
  std::mt19937_64 rng(97);
  for (int i = 0; i < 48; ++i) {
    std::vector<SetNode> kids;
    std::size_t card = 1 + rng() % 4;
    for (std::size_t k = 0; k < card; ++k)
      kids.push_back(pool[rng() % pool.size()]);
    pool.push_back(store.intern(std::move(kids)));
  }

  std::uint64_t checks = 0, violations = 0;
  std::string first_bad;
  for (const PcsfDef& def : lib.defs) {
    if (!def.recursive) continue;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<SetNode> normals, safes;
      for (std::size_t k = 0; k < def.normal_params.size(); ++k)
        normals.push_back(pool[rng() % pool.size()]);
      for (std::size_t k = 0; k < def.safe_params.size(); ++k)
        safes.push_back(pool[rng() % pool.size()]);
      EvalResult r = eval(store, lib, def.name, normals, safes);
      ++checks;
      if (r.cost.h_applications != store.tc_size(normals[0]) + 1) {
        ++violations;
        if (first_bad.empty()) first_bad = def.name;
      }
    }
  }
  bool ok = violations == 0;
  std::string detail = std::to_string(checks) +
                       " runs across the recursive entries, step count = "
                       "cT(argument)+1 throughout";
  if (violations)
    detail = std::to_string(violations) + " violations, first in '" +
             first_bad + "'";
  report(5, ok, detail);
}

ExplicitDag random_dag(std::mt19937_64& rng, int max_vertices) {
  ExplicitDag g;
  std::uint64_t v = 1 + rng() % max_vertices;
  for (std::uint64_t i = 0; i < v; ++i) g.vertices.push_back(i);
  g.root = v - 1;
  std::set<std::pair<std::uint64_t, std::uint64_t>> edges;
  for (std::uint64_t c = 0; c + 1 < v; ++c)
    edges.insert({c + 1 + rng() % (v - 1 - c), c});
  std::uint64_t extra = v > 1 ? rng() % (2 * v) : 0;
  for (std::uint64_t i = 0; i < extra; ++i) {
    std::uint64_t p = 1 + rng() % (v - 1);
    edges.insert({p, rng() % p});
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

// Relabel through id -> 2*id+1, then give one vertex an even-id twin with
// the same children and the same parents. The value is unchanged.
ExplicitDag bisimilar_variant(const ExplicitDag& g, std::mt19937_64& rng) {
  ExplicitDag h;
  for (std::uint64_t v : g.vertices) h.vertices.push_back(2 * v + 1);
  for (auto [p, c] : g.edges) h.edges.push_back({2 * p + 1, 2 * c + 1});
  h.root = 2 * g.root + 1;
  if (g.vertices.size() < 2) return h;
  std::uint64_t v;
  do {
    v = g.vertices[rng() % g.vertices.size()];
  } while (v == g.root);
  h.vertices.push_back(2 * v);
  for (auto [p, c] : g.edges) {
    if (p == v) h.edges.push_back({2 * v, 2 * c + 1});
    if (c == v) h.edges.push_back({2 * p + 1, 2 * v});
  }
  return h;
}

// 6. Interning two explicit graphs yields the same node exactly when they
//    are bisimilar, and a collapsed graph has one vertex per closure node
//    plus the root.
void criterion_collapse_bisim(const PcsfProgram&) {
  SetStore store;
  std::mt19937_64 rng(4242);
  int dags = 0, pairs = 0, bisim_pairs = 0;
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 500 && ok; ++i) {
    ExplicitDag a = random_dag(rng, 40);
    ExplicitDag b = i % 2 == 0 ? bisimilar_variant(a, rng) : random_dag(rng, 40);
    validate_dag(a);
    validate_dag(b);
    SetNode na = import_dag(store, a);
    SetNode nb = import_dag(store, b);
    bool bs = bisimilar(a, b);
    ++pairs;
    if (bs) ++bisim_pairs;
    if ((na == nb) != bs) {
      ok = false;
      detail = "pair " + std::to_string(i) + ": interned " +
               (na == nb ? "equal" : "distinct") + " but bisimilar says " +
               (bs ? "yes" : "no");
      break;
    }
    for (SetNode n : {na, nb}) {
      ++dags;
      std::size_t collapsed = export_dag(store, n).vertices.size();
      if (collapsed != store.tc_size(n) + 1) {
        ok = false;
        detail = "collapsed count " + std::to_string(collapsed) +
                 " != tc+1 = " + std::to_string(store.tc_size(n) + 1);
        break;
      }
    }
  }
  if (ok)
    detail = std::to_string(dags) + " graphs in " + std::to_string(pairs) +
             " pairs (" + std::to_string(bisim_pairs) +
             " bisimilar), intern equality matched bisimilarity throughout";
  report(6, ok, detail);
}

// 7. The checker rejects each ill-formed program with the designated
//    fault and accepts the catalog plus everything the compiler emits.
void criterion_checker_suite(const PcsfProgram& lib, const std::string& bc_src) {
  struct NegCase {
    const char* src;
    CheckFault want;
  };
  const NegCase corpus[] = {
      {"def take(x/) := x\n"
       "def bad(/a) := take(a/)\n",
       CheckFault::SafeInNormalPosition},
      {"def take(x/) := x\n"
       "def bad(x/a) := take(pair(/a, a)/)\n",
       CheckFault::SafeInNormalPosition},
      {"def take(x, y/) := y\n"
       "def bad(x/b) := take(x, union(/b)/)\n",
       CheckFault::SafeInNormalPosition},
      {"def take(x/) := x\n"
       "def bad(/a) := take({a, {}}/)\n",
       CheckFault::SafeInNormalPosition},
      {"def take(x/) := x\n"
       "defrec bad(x/) := take(@rec/)\n",
       CheckFault::RecInNormalPosition},
      {"def take(x/) := x\n"
       "defrec bad(x/) := union(/take(pair(/@rec, @rec)/))\n",
       CheckFault::RecInNormalPosition},
      {"def take(x/) := x\n"
       "defrec bad(x/a) := cond_in(/a, take(@rec/), x, a)\n",
       CheckFault::RecInNormalPosition},
      {"def bad(x/a) := sep b in a : x\n", CheckFault::NormalInSeparation},
      {"def peek(x/b) := x\n"
       "def bad(x/a) := sep b in a : peek(x/b)\n",
       CheckFault::NormalInSeparation},
      {"defrec loop(x/) := union(/@rec)\n"
       "def bad(x/a) := sep b in a : loop(b/)\n",
       CheckFault::NormalInSeparation},
      {"def bad(x/a) := sep b in a : pair(/x, b)\n",
       CheckFault::NormalInSeparation},
      {"defrec bad(/a) := union(/@rec)\n", CheckFault::RecursionWithoutNormal},
      {"defrec bad(/a, b) := pair(/union(/@rec), a)\n",
       CheckFault::RecursionWithoutNormal},
  };

  int rejected = 0, wrong = 0;
  for (const NegCase& c : corpus) {
    try {
      check(parse_program(c.src));
      ++wrong;
    } catch (const check_error& e) {
      if (e.fault == c.want)
        ++rejected;
      else
        ++wrong;
    }
  }

  bool accepts = true;
  try {
    check(lib);
    BProgram bprog = parse_bc(bc_src);
    for (CompileProfile prof : {CompileProfile::Pcsf, CompileProfile::PcsfPrime}) {
      compile_bc(bprog, prof);
      check(parse_program(compile_bc_source(bprog, prof)));
    }
  } catch (const std::exception&) {
    accepts = false;
  }

  bool ok = wrong == 0 && accepts &&
            rejected == static_cast<int>(std::size(corpus));
  std::string detail = std::to_string(rejected) + "/" +
                       std::to_string(std::size(corpus)) +
                       " ill-formed programs rejected with the designated "
                       "fault; catalog and compiler output accepted";
  if (!accepts) detail += "; a well-formed program was rejected";
  report(7, ok, detail);
}

// 8. Picking by vertex label is not a set operation: on two labelings of
//    the same set it returns sets that are not even bisimilar.
void criterion_intensional_witness(const PcsfProgram&) {
  ExplicitDag a = parse_dag_text(
      "2:\n9: 2\n1:\n3: 1\n4: 3\n10: 9 4\nroot: 10\n");
  ExplicitDag b = parse_dag_text(
      "2:\n4: 2\n1:\n3: 1\n9: 3\n10: 4 9\nroot: 10\n");
  SetStore store;
  bool same_set = bisimilar(a, b) && import_dag(store, a) == import_dag(store, b);
  ExplicitDag ca = choose_max(a);
  ExplicitDag cb = choose_max(b);
  validate_dag(ca);
  validate_dag(cb);
  bool diverged = !bisimilar(ca, cb);
  report(8, same_set && diverged,
         same_set ? (diverged ? "bisimilar inputs, non-bisimilar outputs"
                              : "outputs stayed bisimilar")
                  : "fixture graphs are not bisimilar");
}

}  // namespace

int main() {
  PcsfProgram lib = parse_program(slurp(STDLIB_PCSF_PATH));
  check(lib);
  std::string bc_src = slurp(BC_EXAMPLES_PATH);

  criterion_oracle_equivalence(lib);
  criterion_compiled_replay(bc_src);
  criterion_size_bounds(lib);
  criterion_product_growth(lib);
  criterion_cost_law(lib);
  criterion_collapse_bisim(lib);
  criterion_checker_suite(lib, bc_src);
  criterion_intensional_witness(lib);

  if (failures) std::cout << failures << " criteria failed\n";
  return failures;
}
