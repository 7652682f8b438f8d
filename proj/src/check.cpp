#include "pcsf/check.hpp"

#include <algorithm>

namespace pcsf {

const char* check_fault_name(CheckFault f) {
  switch (f) {
    case CheckFault::SafeInNormalPosition: return "SafeInNormalPosition";
    case CheckFault::RecInNormalPosition: return "RecInNormalPosition";
    case CheckFault::NormalInSeparation: return "NormalInSeparation";
    case CheckFault::RecursionWithoutNormal: return "RecursionWithoutNormal";
  }
  return "?";
}

namespace {

std::string at(const std::string& msg, Loc l) {
  return std::to_string(l.line) + ":" + std::to_string(l.col) + ": " + msg;
}

}  // namespace

check_error::check_error(CheckFault f, const std::string& msg, Loc l)
    : std::runtime_error(at(std::string(check_fault_name(f)) + ": " + msg, l)),
      fault(f),
      loc(l) {}

namespace {

bool is_prime_base(const std::string& name) {
  return name == "diff" || name == "sing" || name == "pred" ||
         name == "finunion";
}

struct DefCheck {
  const PcsfProgram& prog;
  const std::vector<DefInfo>& earlier;
  const PcsfDef& def;
  std::vector<std::string> sep_vars;
  bool calls_full = false;

  enum class VK { Normal, Safe, SepBound };

  VK var_kind(const std::string& name) const {
    for (std::size_t i = sep_vars.size(); i-- > 0;)
      if (sep_vars[i] == name) return VK::SepBound;
    for (const std::string& p : def.normal_params)
      if (p == name) return VK::Normal;
    return VK::Safe;  // the parser only lets bound names through
  }

  const DefInfo& callee_info(const TermPtr& call) const {
    int idx = prog.index_of(call->name);
    return earlier[static_cast<std::size_t>(idx)];
  }

  // normal_pos: this subtree sits under a normal argument slot and must
  // stay closed under normal variables. in_sep: this subtree is part of
  // a separation predicate.
  void walk(const TermPtr& t, bool normal_pos, bool in_sep) {
    switch (t->kind) {
      case Term::Kind::Var: {
        VK k = var_kind(t->name);
        if (k == VK::Normal && in_sep)
          throw check_error(
              CheckFault::NormalInSeparation,
              "separation predicate uses normal variable '" + t->name + "'",
              t->loc);
        if (k == VK::Safe && normal_pos)
          throw check_error(
              CheckFault::SafeInNormalPosition,
              "safe variable '" + t->name + "' in a normal position", t->loc);
        return;
      }
      case Term::Kind::Rec:
        // The recursively computed collection is a safe value; it may
        // feed a separation predicate but never a normal slot.
        if (normal_pos)
          throw check_error(CheckFault::RecInNormalPosition,
                            "'@rec' in a normal position", t->loc);
        return;
      case Term::Kind::Builtin:
        for (const TermPtr& a : t->safes) walk(a, normal_pos, in_sep);
        return;
      case Term::Kind::Call: {
        const DefInfo& info = callee_info(t);
        if (in_sep && info.stratum != Stratum::SafeOnly)
          throw check_error(CheckFault::NormalInSeparation,
                            "separation predicate calls '" + t->name +
                                "', which is not safe-only",
                            t->loc);
        if (info.stratum == Stratum::Full) calls_full = true;
        for (const TermPtr& n : t->normals) walk(n, true, in_sep);
        for (const TermPtr& s : t->safes) walk(s, normal_pos, in_sep);
        return;
      }
      case Term::Kind::Sep:
        walk(t->domain, normal_pos, in_sep);
        sep_vars.push_back(t->name);
        walk(t->body, normal_pos, true);
        sep_vars.pop_back();
        return;
    }
  }

  bool prime(const TermPtr& t) const {
    switch (t->kind) {
      case Term::Kind::Var:
        return true;
      case Term::Kind::Rec:
        return false;  // only union(/@rec) is part of the scheme
      case Term::Kind::Builtin:
        switch (t->bi) {
          case Builtin::CondIn:
            return std::all_of(t->safes.begin(), t->safes.end(),
                               [&](const TermPtr& a) { return prime(a); });
          case Builtin::Union:
            if (t->safes[0]->kind == Term::Kind::Rec) return true;
            return false;
          case Builtin::Null:
          case Builtin::Pair:
            return false;
        }
        return false;
      case Term::Kind::Call: {
        if (!is_prime_base(t->name) && !callee_info(t).prime_compatible)
          return false;
        for (const TermPtr& n : t->normals)
          if (!prime(n)) return false;
        for (const TermPtr& s : t->safes)
          if (!prime(s)) return false;
        return true;
      }
      case Term::Kind::Sep:
        return false;
    }
    return false;
  }

  static bool bare(const TermPtr& t) {
    return t->kind == Term::Kind::Var || t->kind == Term::Kind::Rec;
  }

  std::uint64_t measure(const TermPtr& t) const {
    switch (t->kind) {
      case Term::Kind::Var:
      case Term::Kind::Rec:
        return 1;
      case Term::Kind::Builtin: {
        if (std::all_of(t->safes.begin(), t->safes.end(), bare)) return 1;
        std::uint64_t total = 1 + 1;  // the composition and the builtin
        for (const TermPtr& a : t->safes) total += measure(a);
        return total;
      }
      case Term::Kind::Call: {
        std::uint64_t own = callee_info(t).complexity;
        bool all_bare = std::all_of(t->normals.begin(), t->normals.end(), bare) &&
                        std::all_of(t->safes.begin(), t->safes.end(), bare);
        if (all_bare) return own;
        std::uint64_t total = 1 + own;
        for (const TermPtr& n : t->normals) total += measure(n);
        for (const TermPtr& s : t->safes) total += measure(s);
        return total;
      }
      case Term::Kind::Sep: {
        if (bare(t->domain)) return 1;
        return 1 + 1 + measure(t->domain);
      }
    }
    return 1;
  }

  DefInfo run() {
    if (def.recursive && def.normal_params.empty())
      throw check_error(CheckFault::RecursionWithoutNormal,
                        "'" + def.name + "' recurses but has no normal parameter",
                        def.loc);
    walk(def.body, false, false);

    DefInfo info;
    bool safe_only =
        !def.recursive && def.normal_params.empty() && !calls_full;
    info.stratum = safe_only ? Stratum::SafeOnly : Stratum::Full;
    info.prime_compatible =
        (is_prime_base(def.name) && !def.recursive &&
         def.normal_params.empty()) ||
        prime(def.body);
    info.complexity = measure(def.body) + (def.recursive ? 1 : 0);
    return info;
  }
};

}  // namespace

const DefInfo& CheckResult::of(const PcsfProgram& p,
                               std::string_view name) const {
  int idx = p.index_of(name);
  if (idx < 0) throw std::out_of_range("no definition named '" + std::string(name) + "'");
  return defs[static_cast<std::size_t>(idx)];
}

CheckResult check(const PcsfProgram& p) {
  CheckResult out;
  out.defs.reserve(p.defs.size());
  for (const PcsfDef& d : p.defs) {
    DefCheck dc{p, out.defs, d};
    out.defs.push_back(dc.run());
  }
  return out;
}

std::uint64_t complexity(const PcsfProgram& p, std::string_view name) {
  return check(p).of(p, name).complexity;
}

}  // namespace pcsf
