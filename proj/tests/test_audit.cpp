#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <string>
#include <vector>

#include "pcsf/audit.hpp"
#include "pcsf/bc.hpp"
#include "pcsf/eval.hpp"
#include "pcsf/hfset.hpp"
#include "pcsf/stdlib.hpp"

using namespace pcsf;

TEST_CASE("generator families grow along the ladder") {
  SetStore store;

  std::vector<SetNode> nums = generator_family(store, "numerals:40", 1);
  REQUIRE(!nums.empty());
  CHECK(store.tc_size(nums.front()) == 1);
  CHECK(store.tc_size(nums.back()) == 40);
  for (std::size_t i = 1; i < nums.size(); ++i)
    CHECK(store.tc_size(nums[i - 1]) < store.tc_size(nums[i]));

  std::vector<SetNode> ivals = generator_family(store, "interval:20", 1);
  // {2,...,n} closes over {0,...,n}
  CHECK(store.tc_size(ivals.back()) == 21);

  std::vector<SetNode> codes = generator_family(store, "nu:24", 7);
  for (SetNode c : codes) CHECK_NOTHROW((void)decode_nu(store, c));

  std::vector<SetNode> ra = generator_family(store, "random:50", 3);
  std::vector<SetNode> rb = generator_family(store, "random:50", 3);
  CHECK(ra == rb);
  CHECK(store.tc_size(ra.back()) >= 50);
  for (std::size_t i = 1; i < ra.size(); ++i)
    CHECK(store.tc_size(ra[i - 1]) < store.tc_size(ra[i]));

  CHECK_THROWS_AS((void)generator_family(store, "numerals", 1), eval_error);
  CHECK_THROWS_AS((void)generator_family(store, "witches:3", 1), eval_error);
  CHECK_THROWS_AS((void)generator_family(store, "numerals:0", 1), eval_error);
}

TEST_CASE("the closure entry audits at degree one") {
  AuditOptions opts;
  opts.generator = "numerals:60";
  AuditReport rep = audit_size(stdlib(), "tc", opts);
  CHECK(rep.pass);
  CHECK_FALSE(rep.safe_side.applicable);
  CHECK(rep.normal_side.applicable);
  // the closure of a numeral is that numeral again
  for (const AuditSample& s : rep.normal_side.samples)
    CHECK(s.result_ct == s.normal_ct);
  CHECK(rep.normal_side.fitted_degree == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("safe arguments ride along without duplication") {
  AuditOptions opts;
  opts.generator = "numerals:80";
  for (const char* fn : {"restrict", "sing", "band", "kpair", "bunion_g"}) {
    CAPTURE(fn);
    AuditReport rep = audit_size(stdlib(), fn, opts);
    CHECK(rep.safe_side.applicable);
    CHECK(rep.safe_side.pass);
    CHECK(rep.pass);
  }
}

TEST_CASE("the product entry stays polynomial but grows faster than linear") {
  AuditOptions opts;
  opts.generator = "numerals:50";
  AuditReport rep = audit_size(stdlib(), "product", opts);
  CHECK(rep.normal_side.applicable);
  CHECK(rep.normal_side.pass);
  CHECK(rep.normal_side.fitted_degree > 1.3);
  CHECK(rep.normal_side.fitted_degree <= 4.0);
}

TEST_CASE("reports serialize with stable fields and reproduce") {
  AuditOptions opts;
  opts.generator = "random:30";
  opts.seed = 11;
  AuditReport a = audit_size(stdlib(), "restrict", opts);
  AuditReport b = audit_size(stdlib(), "restrict", opts);
  CHECK(a.to_json() == b.to_json());

  nlohmann::json j = nlohmann::json::parse(a.to_json());
  CHECK(j["function"] == "restrict");
  CHECK(j["generator"] == "random:30");
  CHECK(j["seed"] == 11);
  CHECK(j["safe_experiment"]["applicable"] == true);
  CHECK(j["safe_experiment"]["samples"].is_array());
  CHECK(!j["safe_experiment"]["samples"].empty());
  CHECK(j["safe_experiment"]["samples"][0].contains("safe_union_ct"));
  CHECK(j["normal_experiment"].contains("fitted_degree"));
  CHECK(j["pass"].is_boolean());

  CHECK_THROWS_AS((void)audit_size(stdlib(), "nope", opts), eval_error);
}
