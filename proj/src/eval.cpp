#include "pcsf/eval.hpp"

#include <algorithm>
#include <cstring>
#include <string>
#include <unordered_map>

namespace pcsf {

namespace {

int find_param(const std::vector<std::string>& params, const std::string& name) {
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i] == name) return static_cast<int>(i);
  return -1;
}

struct Evaluator {
  SetStore& store;
  const PcsfProgram& prog;
  EvalLimits limits;
  EvalCost cost;
  std::uint64_t steps = 0;
  int entry_def = -1;

  std::unordered_map<std::string, SetNode> memo;

  struct Frame {
    const PcsfDef* def;
    const std::vector<SetNode>* normals;
    const std::vector<SetNode>* safes;
    SetNode rec;
    bool has_rec = false;
    std::vector<std::pair<std::string, SetNode>> locals;
  };

  void tick() {
    if (++steps > limits.max_steps)
      throw resource_error("evaluation exceeded the step limit");
  }

  SetNode intern(std::vector<SetNode> kids) {
    ++cost.nodes_created;
    return store.intern(std::move(kids));
  }

  static std::string memo_key(int def_idx, SetNode first,
                              const std::vector<SetNode>& rest_normals,
                              const std::vector<SetNode>& safes) {
    std::string key;
    key.resize((2 + rest_normals.size() + safes.size()) * 4);
    char* out = key.data();
    auto put = [&out](std::uint32_t v) {
      std::memcpy(out, &v, 4);
      out += 4;
    };
    put(static_cast<std::uint32_t>(def_idx));
    put(first.id);
    for (SetNode n : rest_normals) put(n.id);
    for (SetNode n : safes) put(n.id);
    return key;
  }

  SetNode lookup(const Frame& f, const std::string& name) {
    for (std::size_t i = f.locals.size(); i-- > 0;)
      if (f.locals[i].first == name) return f.locals[i].second;
    if (int i = find_param(f.def->normal_params, name); i >= 0)
      return (*f.normals)[static_cast<std::size_t>(i)];
    if (int i = find_param(f.def->safe_params, name); i >= 0)
      return (*f.safes)[static_cast<std::size_t>(i)];
    throw eval_error("unbound variable '" + name + "'");
  }

  SetNode eval_term(const TermPtr& t, Frame& f) {
    tick();
    switch (t->kind) {
      case Term::Kind::Var:
        return lookup(f, t->name);
      case Term::Kind::Rec:
        return f.rec;
      case Term::Kind::Builtin:
        switch (t->bi) {
          case Builtin::Null:
            ++cost.nodes_created;
            return store.empty();
          case Builtin::Pair: {
            SetNode a = eval_term(t->safes[0], f);
            SetNode b = eval_term(t->safes[1], f);
            return intern({a, b});
          }
          case Builtin::Union: {
            ++cost.nodes_created;
            return store.union_of(eval_term(t->safes[0], f));
          }
          case Builtin::CondIn: {
            SetNode a = eval_term(t->safes[0], f);
            SetNode b = eval_term(t->safes[1], f);
            SetNode c = eval_term(t->safes[2], f);
            SetNode d = eval_term(t->safes[3], f);
            return store.member(c, d) ? a : b;
          }
        }
        throw eval_error("corrupt builtin");
      case Term::Kind::Call: {
        int idx = prog.index_of(t->name);
        std::vector<SetNode> ns, ss;
        ns.reserve(t->normals.size());
        ss.reserve(t->safes.size());
        for (const TermPtr& a : t->normals) ns.push_back(eval_term(a, f));
        for (const TermPtr& a : t->safes) ss.push_back(eval_term(a, f));
        return eval_call(idx, ns, ss);
      }
      case Term::Kind::Sep: {
        SetNode dom = eval_term(t->domain, f);
        std::vector<SetNode> kept;
        for (SetNode elem : store.children(dom)) {
          f.locals.emplace_back(t->name, elem);
          SetNode keep = eval_term(t->body, f);
          f.locals.pop_back();
          if (!(keep == store.empty())) kept.push_back(elem);
        }
        return intern(std::move(kept));
      }
    }
    throw eval_error("corrupt term");
  }

  SetNode eval_call(int idx, const std::vector<SetNode>& normals,
                    const std::vector<SetNode>& safes) {
    const PcsfDef& def = prog.defs[static_cast<std::size_t>(idx)];
    if (!def.recursive) {
      Frame f{&def, &normals, &safes, {}, false, {}};
      return eval_term(def.body, f);
    }
    cost.max_recursion_rank = std::max(
        cost.max_recursion_rank, store.rank(normals[0]));
    return limits.use_memo ? recurse_shared(idx, def, normals, safes)
                           : recurse_expanded(idx, def, normals, safes);
  }

  // Children-first order over TC(x) with x last.
  std::vector<SetNode> closure_postorder(SetNode x) {
    std::vector<SetNode> order;
    std::unordered_map<std::uint32_t, bool> done;
    std::vector<std::pair<SetNode, std::size_t>> stack{{x, 0}};
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (done.count(node.id)) {
        stack.pop_back();
        continue;
      }
      const auto& kids = store.children(node);
      if (next < kids.size()) {
        SetNode kid = kids[next++];
        if (!done.count(kid.id)) stack.emplace_back(kid, 0);
        continue;
      }
      done[node.id] = true;
      order.push_back(node);
      stack.pop_back();
    }
    return order;
  }

  SetNode recurse_shared(int idx, const PcsfDef& def,
                         const std::vector<SetNode>& normals,
                         const std::vector<SetNode>& safes) {
    std::vector<SetNode> rest(normals.begin() + 1, normals.end());
    std::string root_key = memo_key(idx, normals[0], rest, safes);
    if (auto it = memo.find(root_key); it != memo.end()) {
      ++cost.memo_hits;
      return it->second;
    }
    std::vector<SetNode> node_normals = normals;
    for (SetNode z : closure_postorder(normals[0])) {
      std::string key = memo_key(idx, z, rest, safes);
      if (memo.count(key)) {
        ++cost.memo_hits;
        continue;
      }
      std::vector<SetNode> values;
      for (SetNode kid : store.children(z))
        values.push_back(memo.at(memo_key(idx, kid, rest, safes)));
      SetNode collection = intern(std::move(values));
      node_normals[0] = z;
      Frame f{&def, &node_normals, &safes, collection, true, {}};
      if (idx == entry_def) ++cost.h_applications;
      memo.emplace(std::move(key), eval_term(def.body, f));
    }
    return memo.at(root_key);
  }

  // Memo disabled: textbook expansion, recomputing every subvalue.
  SetNode recurse_expanded(int idx, const PcsfDef& def,
                           const std::vector<SetNode>& normals,
                           const std::vector<SetNode>& safes) {
    std::vector<SetNode> values;
    std::vector<SetNode> sub = normals;
    for (SetNode z : store.children(normals[0])) {
      sub[0] = z;
      values.push_back(recurse_expanded(idx, def, sub, safes));
    }
    SetNode collection = intern(std::move(values));
    Frame f{&def, &normals, &safes, collection, true, {}};
    if (idx == entry_def) ++cost.h_applications;
    return eval_term(def.body, f);
  }
};

}  // namespace

EvalResult eval(SetStore& store, const PcsfProgram& p, std::string_view fn,
                const std::vector<SetNode>& normals,
                const std::vector<SetNode>& safes, const EvalLimits& limits) {
  int idx = p.index_of(fn);
  if (idx < 0) throw eval_error("unknown function '" + std::string(fn) + "'");
  const PcsfDef& def = p.defs[static_cast<std::size_t>(idx)];
  if (normals.size() != def.normal_params.size() ||
      safes.size() != def.safe_params.size())
    throw eval_error("'" + std::string(fn) + "' expects (" +
                     std::to_string(def.normal_params.size()) + " / " +
                     std::to_string(def.safe_params.size()) + ") arguments");

  Evaluator ev{store, p, limits};
  ev.entry_def = idx;
  EvalResult out;
  out.value = ev.eval_call(idx, normals, safes);
  out.cost = ev.cost;
  return out;
}

namespace {

struct NaiveEval {
  const PcsfProgram& prog;
  std::uint64_t max_steps;
  std::uint64_t steps = 0;

  struct Frame {
    const PcsfDef* def;
    const std::vector<NestedSet>* normals;
    const std::vector<NestedSet>* safes;
    const NestedSet* rec = nullptr;
    std::vector<std::pair<std::string, NestedSet>> locals;
  };

  void tick() {
    if (++steps > max_steps)
      throw resource_error("naive evaluation exceeded the step limit");
  }

  const NestedSet& lookup(const Frame& f, const std::string& name) {
    for (std::size_t i = f.locals.size(); i-- > 0;)
      if (f.locals[i].first == name) return f.locals[i].second;
    if (int i = find_param(f.def->normal_params, name); i >= 0)
      return (*f.normals)[static_cast<std::size_t>(i)];
    if (int i = find_param(f.def->safe_params, name); i >= 0)
      return (*f.safes)[static_cast<std::size_t>(i)];
    throw eval_error("unbound variable '" + name + "'");
  }

  NestedSet eval_term(const TermPtr& t, Frame& f) {
    tick();
    switch (t->kind) {
      case Term::Kind::Var:
        return lookup(f, t->name);
      case Term::Kind::Rec:
        return *f.rec;
      case Term::Kind::Builtin:
        switch (t->bi) {
          case Builtin::Null:
            return ns_empty();
          case Builtin::Pair: {
            NestedSet a = eval_term(t->safes[0], f);
            NestedSet b = eval_term(t->safes[1], f);
            return ns_make({std::move(a), std::move(b)});
          }
          case Builtin::Union:
            return ns_union_of(eval_term(t->safes[0], f));
          case Builtin::CondIn: {
            NestedSet a = eval_term(t->safes[0], f);
            NestedSet b = eval_term(t->safes[1], f);
            NestedSet c = eval_term(t->safes[2], f);
            NestedSet d = eval_term(t->safes[3], f);
            return ns_member(c, d) ? a : b;
          }
        }
        throw eval_error("corrupt builtin");
      case Term::Kind::Call: {
        std::vector<NestedSet> ns, ss;
        for (const TermPtr& a : t->normals) ns.push_back(eval_term(a, f));
        for (const TermPtr& a : t->safes) ss.push_back(eval_term(a, f));
        const PcsfDef& callee =
            prog.defs[static_cast<std::size_t>(prog.index_of(t->name))];
        return apply(callee, ns, ss);
      }
      case Term::Kind::Sep: {
        NestedSet dom = eval_term(t->domain, f);
        std::vector<NestedSet> kept;
        for (const NestedSet& elem : dom.elems) {
          f.locals.emplace_back(t->name, elem);
          NestedSet keep = eval_term(t->body, f);
          f.locals.pop_back();
          if (!keep.elems.empty()) kept.push_back(elem);
        }
        return ns_make(std::move(kept));
      }
    }
    throw eval_error("corrupt term");
  }

  NestedSet apply(const PcsfDef& def, const std::vector<NestedSet>& normals,
                  const std::vector<NestedSet>& safes) {
    if (!def.recursive) {
      Frame f{&def, &normals, &safes, nullptr, {}};
      return eval_term(def.body, f);
    }
    std::vector<NestedSet> values;
    std::vector<NestedSet> sub = normals;
    for (const NestedSet& z : normals[0].elems) {
      sub[0] = z;
      values.push_back(apply(def, sub, safes));
    }
    NestedSet collection = ns_make(std::move(values));
    Frame f{&def, &normals, &safes, &collection, {}};
    return eval_term(def.body, f);
  }
};

}  // namespace

NestedSet eval_naive(const PcsfProgram& p, std::string_view fn,
                     const std::vector<NestedSet>& normals,
                     const std::vector<NestedSet>& safes,
                     std::uint64_t max_steps) {
  int idx = p.index_of(fn);
  if (idx < 0) throw eval_error("unknown function '" + std::string(fn) + "'");
  const PcsfDef& def = p.defs[static_cast<std::size_t>(idx)];
  if (normals.size() != def.normal_params.size() ||
      safes.size() != def.safe_params.size())
    throw eval_error("'" + std::string(fn) + "' expects (" +
                     std::to_string(def.normal_params.size()) + " / " +
                     std::to_string(def.safe_params.size()) + ") arguments");
  NaiveEval ev{p, max_steps};
  return ev.apply(def, normals, safes);
}

}  // namespace pcsf
