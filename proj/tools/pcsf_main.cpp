#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcsf/audit.hpp"
#include "pcsf/bc.hpp"
#include "pcsf/check.hpp"
#include "pcsf/eval.hpp"
#include "pcsf/hfset.hpp"
#include "pcsf/parse.hpp"

using namespace pcsf;

namespace {

// exit codes: 0 pass, 1 check or verdict failure, 2 usage
constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw usage_error("cannot read '" + path + "'");
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

// Literal rendering: von Neumann numerals as #n, Kuratowski pairs in
// angle brackets, braces otherwise.
std::string show(SetStore& store, SetNode n) {
  std::size_t k = store.card(n);
  if (n == numeral(store, static_cast<unsigned>(k)))
    return "#" + std::to_string(k);
  if (k == 2) {
    auto kids = store.children(n);
    SetNode a = kids[0], b = kids[1];
    if (store.card(a) > store.card(b)) std::swap(a, b);
    if (store.card(a) == 1 && store.card(b) == 2) {
      SetNode t = store.children(a)[0];
      auto bk = store.children(b);
      if (bk[0] == t || bk[1] == t) {
        SetNode y = bk[0] == t ? bk[1] : bk[0];
        return "<" + show(store, t) + ", " + show(store, y) + ">";
      }
    }
  }
  std::string out = "{";
  bool first = true;
  for (SetNode c : store.children(n)) {
    if (!first) out += ", ";
    first = false;
    out += show(store, c);
  }
  return out + "}";
}

int cmd_check(const std::string& file) {
  PcsfProgram p = parse_program(slurp(file));
  CheckResult r = check(p);
  std::size_t safe_only = 0;
  for (const DefInfo& d : r.defs)
    if (d.stratum == Stratum::SafeOnly) ++safe_only;
  std::cout << "ok: " << p.defs.size() << " definitions, " << safe_only
            << " safe-only\n";
  return kPass;
}

int cmd_eval(const std::string& file, const std::string& fn,
             const std::string& args, std::uint64_t max_steps,
             std::size_t max_nodes) {
  PcsfProgram p = parse_program(slurp(file));
  check(p);
  SetStore store;
  store.set_node_cap(max_nodes);
  CallArgs call;
  try {
    call = parse_call_args(store, args);
  } catch (const parse_error& e) {
    throw usage_error(std::string("bad argument literal: ") + e.what());
  }
  EvalLimits lim;
  lim.max_steps = max_steps;
  EvalResult r = eval(store, p, fn, call.normals, call.safes, lim);
  std::cout << show(store, r.value) << "\n";
  return kPass;
}

int cmd_compile(const std::string& file, const std::string& profile) {
  CompileProfile prof = profile == "pcsf-prime" ? CompileProfile::PcsfPrime
                                                : CompileProfile::Pcsf;
  BProgram b = parse_bc(slurp(file));
  compile_bc(b, prof);  // parses and checks its own output
  std::cout << compile_bc_source(b, prof);
  return kPass;
}

int cmd_bisim(const std::string& file_a, const std::string& file_b) {
  ExplicitDag g = parse_dag_text(slurp(file_a));
  ExplicitDag h = parse_dag_text(slurp(file_b));
  validate_dag(g);
  validate_dag(h);
  if (bisimilar(g, h)) {
    std::cout << "bisimilar\n";
    return kPass;
  }
  std::cout << "not bisimilar\n";
  return kFail;
}

int cmd_collapse(const std::string& file) {
  ExplicitDag g = parse_dag_text(slurp(file));
  SetStore store;
  SetNode n = import_dag(store, g);
  std::cout << dag_to_text(export_dag(store, n));
  return kPass;
}

int cmd_audit(const std::string& file, const std::string& fn,
              const AuditOptions& opts, bool json) {
  PcsfProgram p = parse_program(slurp(file));
  AuditReport rep = audit_size(p, fn, opts);
  if (json) {
    std::cout << rep.to_json() << "\n";
  } else {
    std::cout << rep.function << " [" << rep.generator << ", seed "
              << rep.seed << "]\n";
    if (rep.safe_side.applicable)
      std::cout << "  safe side: max offset " << rep.safe_side.early_max_offset
                << " early, " << rep.safe_side.late_max_offset << " late -> "
                << (rep.safe_side.pass ? "pass" : "FAIL") << "\n";
    if (rep.normal_side.applicable)
      std::cout << "  normal side: fitted degree "
                << rep.normal_side.fitted_degree << " (limit "
                << rep.max_degree << ") -> "
                << (rep.normal_side.pass ? "pass" : "FAIL") << "\n";
    for (const std::string& note : rep.notes)
      std::cout << "  note: " << note << "\n";
    std::cout << (rep.pass ? "pass" : "FAIL") << "\n";
  }
  return rep.pass ? kPass : kFail;
}

int cmd_dot(const std::string& expr) {
  SetStore store;
  SetNode n;
  try {
    n = parse_set_literal(store, expr);
  } catch (const parse_error& e) {
    throw usage_error(std::string("bad set literal: ") + e.what());
  }
  std::cout << to_dot(store, n);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"predicative set functions: checker, evaluator, compiler, "
               "auditor"};
  app.require_subcommand(1);

  std::string file, fn, args, file_b, expr;
  std::string profile = "pcsf";
  bool json = false;
  AuditOptions aopts;
  std::uint64_t max_steps = 10'000'000;
  std::size_t max_nodes = 1'000'000;

  CLI::App* c_check = app.add_subcommand("check", "parse and flow-check a program");
  c_check->add_option("file", file, "program file")->required();

  CLI::App* c_eval = app.add_subcommand("eval", "evaluate FN on literal arguments");
  c_eval->add_option("file", file, "program file")->required();
  c_eval->add_option("fn", fn, "definition to call")->required();
  c_eval->add_option("args", args, "arguments, e.g. '(#3 / {#1})'")->required();
  c_eval->add_option("--max-steps", max_steps, "evaluation step cap");
  c_eval->add_option("--max-nodes", max_nodes, "interned node cap");

  CLI::App* c_compile = app.add_subcommand("compile-bc", "compile a two-sorted string program");
  c_compile->add_option("file", file, "source file")->required();
  c_compile->add_option("--profile", profile, "pcsf or pcsf-prime")
      ->check(CLI::IsMember({"pcsf", "pcsf-prime"}));

  CLI::App* c_bisim = app.add_subcommand("bisim", "compare two explicit dags");
  c_bisim->add_option("dag1", file, "first dag file")->required();
  c_bisim->add_option("dag2", file_b, "second dag file")->required();

  CLI::App* c_collapse = app.add_subcommand("collapse", "fully collapse an explicit dag");
  c_collapse->add_option("dag", file, "dag file")->required();

  CLI::App* c_audit = app.add_subcommand("audit", "run the size-bound experiments on FN");
  c_audit->add_option("file", file, "program file")->required();
  c_audit->add_option("fn", fn, "definition to audit")->required();
  c_audit->add_option("--gen", aopts.generator, "generator spec, kind:param");
  c_audit->add_option("--seed", aopts.seed, "generator seed");
  c_audit->add_option("--max-degree", aopts.max_degree, "fitted degree limit");
  c_audit->add_option("--max-steps", aopts.max_steps, "evaluation step cap");
  c_audit->add_option("--max-nodes", aopts.max_nodes, "interned node cap");
  c_audit->add_flag("--json", json, "emit the report as JSON");

  CLI::App* c_dot = app.add_subcommand("dot", "render a set literal as graphviz");
  c_dot->add_option("expr", expr, "set literal")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (app.got_subcommand(c_check)) return cmd_check(file);
    if (app.got_subcommand(c_eval))
      return cmd_eval(file, fn, args, max_steps, max_nodes);
    if (app.got_subcommand(c_compile)) return cmd_compile(file, profile);
    if (app.got_subcommand(c_bisim)) return cmd_bisim(file, file_b);
    if (app.got_subcommand(c_collapse)) return cmd_collapse(file);
    if (app.got_subcommand(c_audit)) return cmd_audit(file, fn, aopts, json);
    if (app.got_subcommand(c_dot)) return cmd_dot(expr);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
