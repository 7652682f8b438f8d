#include "pcsf/audit.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "pcsf/bc.hpp"
#include "pcsf/check.hpp"
#include "pcsf/eval.hpp"

namespace pcsf {

namespace {

// Geometric ladder of closure-size targets, always ending at the cap.
std::vector<std::uint64_t> size_grid(std::uint64_t cap) {
  std::vector<std::uint64_t> out;
  std::uint64_t t = 1;
  while (t < cap) {
    out.push_back(t);
    t = std::max(t + 1, t * 3 / 2);
  }
  out.push_back(cap);
  return out;
}

std::pair<std::string, std::uint64_t> split_spec(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos || colon + 1 == spec.size())
    throw eval_error("generator spec must look like kind:param, got '" +
                     std::string(spec) + "'");
  std::uint64_t param = 0;
  for (char c : spec.substr(colon + 1)) {
    if (c < '0' || c > '9')
      throw eval_error("generator parameter must be a number, got '" +
                       std::string(spec) + "'");
    param = param * 10 + static_cast<std::uint64_t>(c - '0');
  }
  if (param == 0) throw eval_error("generator parameter must be positive");
  return {std::string(spec.substr(0, colon)), param};
}

}  // namespace

std::vector<SetNode> generator_family(SetStore& store, std::string_view spec,
                                      std::uint64_t seed) {
  auto [kind, param] = split_spec(spec);
  std::vector<SetNode> out;

  if (kind == "numerals") {
    for (std::uint64_t t : size_grid(param))
      out.push_back(numeral(store, static_cast<unsigned>(t)));
    return out;
  }

  if (kind == "interval") {
    // {2,...,n}; closure card n+1
    for (std::uint64_t t : size_grid(param)) {
      std::uint64_t n = std::max<std::uint64_t>(t, 2);
      std::vector<SetNode> kids;
      for (std::uint64_t k = 2; k <= n; ++k)
        kids.push_back(numeral(store, static_cast<unsigned>(k)));
      out.push_back(store.intern(std::move(kids)));
    }
    return out;
  }

  if (kind == "nu") {
    std::mt19937_64 rng(seed);
    std::uint64_t step = std::max<std::uint64_t>(1, param / 12);
    for (std::uint64_t len = 1; len <= param; len += step) {
      std::string bits;
      for (std::uint64_t i = 0; i < len; ++i)
        bits += (rng() & 1) ? '1' : '0';
      out.push_back(encode_nu(store, bits));
    }
    return out;
  }

  if (kind == "random") {
    // a chain where each link contains the previous one, so the closure
    // grows by at least one node per step
    std::mt19937_64 rng(seed);
    std::vector<SetNode> pool{store.empty()};
    SetNode cur = store.empty();
    for (std::uint64_t target : size_grid(param)) {
      while (store.tc_size(cur) < target) {
        std::vector<SetNode> kids{cur};
        std::uint64_t extra = rng() % 3;
        for (std::uint64_t i = 0; i < extra; ++i)
          kids.push_back(pool[rng() % pool.size()]);
        cur = store.intern(std::move(kids));
        pool.push_back(cur);
      }
      out.push_back(cur);
    }
    return out;
  }

  throw eval_error("unknown generator kind '" + kind + "'");
}

namespace {

AuditSample measure(SetStore& store, const PcsfProgram& p,
                    std::string_view fn, const std::vector<SetNode>& normals,
                    const std::vector<SetNode>& safes,
                    const AuditOptions& opts) {
  EvalLimits lim;
  lim.max_steps = opts.max_steps;
  EvalResult r = eval(store, p, fn, normals, safes, lim);

  AuditSample s;
  for (SetNode n : normals) s.normal_ct += store.tc_size(n);
  SetNode u = store.empty();
  for (SetNode a : safes) u = store.union_of(store.intern({u, a}));
  s.safe_union_ct = store.tc_size(u);
  s.result_ct = store.tc_size(r.value);
  return s;
}

double fit_loglog_slope(const std::vector<AuditSample>& samples) {
  std::vector<double> xs, ys;
  for (const AuditSample& s : samples) {
    xs.push_back(std::log(static_cast<double>(std::max<std::uint64_t>(
        s.normal_ct, 1))));
    ys.push_back(std::log(static_cast<double>(std::max<std::uint64_t>(
        s.result_ct, 1))));
  }
  double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double cov = 0, var = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cov += (xs[i] - mx) * (ys[i] - my);
    var += (xs[i] - mx) * (xs[i] - mx);
  }
  if (var == 0) return 0.0;
  return cov / var;
}

}  // namespace

AuditReport audit_size(const PcsfProgram& p, std::string_view fn,
                       const AuditOptions& opts) {
  const PcsfDef* d = p.find(fn);
  if (d == nullptr)
    throw eval_error("unknown function '" + std::string(fn) + "'");
  check(p);

  AuditReport rep;
  rep.function = fn;
  rep.generator = opts.generator;
  rep.seed = opts.seed;
  rep.max_degree = opts.max_degree;

  if (d->safe_params.empty()) {
    rep.notes.push_back("no safe parameters; safe experiment vacuous");
  } else {
    rep.safe_side.applicable = true;
    SetStore store;
    store.set_node_cap(opts.max_nodes);
    std::vector<SetNode> family =
        generator_family(store, opts.generator, opts.seed);
    SetNode xfix = numeral(store, 2);
    for (SetNode g : family) {
      std::vector<SetNode> normals(d->normal_params.size(), xfix);
      std::vector<SetNode> safes(d->safe_params.size(), g);
      rep.safe_side.samples.push_back(
          measure(store, p, fn, normals, safes, opts));
    }
    const auto& ss = rep.safe_side.samples;
    if (ss.size() < 2) {
      rep.notes.push_back("family too small for a verdict");
    } else {
      auto offset = [](const AuditSample& s) {
        return static_cast<std::int64_t>(s.result_ct) -
               static_cast<std::int64_t>(s.safe_union_ct);
      };
      std::size_t half = ss.size() / 2;
      std::int64_t early = offset(ss[0]), late = offset(ss[half]);
      for (std::size_t i = 0; i < half; ++i)
        early = std::max(early, offset(ss[i]));
      for (std::size_t i = half; i < ss.size(); ++i)
        late = std::max(late, offset(ss[i]));
      rep.safe_side.early_max_offset = early;
      rep.safe_side.late_max_offset = late;
      rep.safe_side.pass = late <= early;
    }
  }

  if (d->normal_params.empty()) {
    rep.notes.push_back("no normal parameters; normal experiment vacuous");
  } else {
    rep.normal_side.applicable = true;
    SetStore store;
    store.set_node_cap(opts.max_nodes);
    std::vector<SetNode> family =
        generator_family(store, opts.generator, opts.seed);
    SetNode afix = numeral(store, 1);
    for (SetNode g : family) {
      std::vector<SetNode> normals(d->normal_params.size(), g);
      std::vector<SetNode> safes(d->safe_params.size(), afix);
      rep.normal_side.samples.push_back(
          measure(store, p, fn, normals, safes, opts));
    }
    rep.normal_side.fitted_degree = fit_loglog_slope(rep.normal_side.samples);
    rep.normal_side.pass = rep.normal_side.fitted_degree <= opts.max_degree;
  }

  rep.pass = rep.safe_side.pass && rep.normal_side.pass;
  return rep;
}

std::string AuditReport::to_json() const {
  nlohmann::json j;
  j["function"] = function;
  j["generator"] = generator;
  j["seed"] = seed;
  j["max_degree"] = max_degree;

  auto samples_json = [](const std::vector<AuditSample>& ss) {
    nlohmann::json arr = nlohmann::json::array();
    for (const AuditSample& s : ss)
      arr.push_back({{"normal_ct", s.normal_ct},
                     {"safe_union_ct", s.safe_union_ct},
                     {"result_ct", s.result_ct}});
    return arr;
  };

  j["safe_experiment"] = {
      {"applicable", safe_side.applicable},
      {"samples", samples_json(safe_side.samples)},
      {"early_max_offset", safe_side.early_max_offset},
      {"late_max_offset", safe_side.late_max_offset},
      {"pass", safe_side.pass},
  };
  j["normal_experiment"] = {
      {"applicable", normal_side.applicable},
      {"samples", samples_json(normal_side.samples)},
      {"fitted_degree", normal_side.fitted_degree},
      {"pass", normal_side.pass},
  };
  j["notes"] = notes;
  j["pass"] = pass;
  return j.dump(2);
}

}  // namespace pcsf
