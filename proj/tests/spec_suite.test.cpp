// Copyright 2026 The treegroups Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "treegroups/report.hpp"
#include "treegroups/spec.hpp"
#include "treegroups/suite.hpp"

using namespace treegroups;

namespace {

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::filesystem::path kConfigs = TREEGROUPS_CONFIG_DIR;

}  // namespace

TEST(spec, shipped_configs_parse_and_roundtrip) {
  int seen = 0;
  for (const auto &entry : std::filesystem::directory_iterator(kConfigs)) {
    const auto name = entry.path().filename().string();
    if (name == "experiment.json" || name.starts_with("claims")) continue;
    ++seen;
    const auto spec = parse_spec(slurp(entry.path()));
    const auto j = to_json(spec);
    EXPECT_EQ(to_json(spec_from_json(j)), j) << name;
    const int depth = std::max(2, min_depth(spec));
    EXPECT_TRUE(materialize(spec, depth).is_closed()) << name;
  }
  EXPECT_EQ(seen, 7);
}

TEST(spec, family_orders) {
  EXPECT_EQ(materialize(parse_spec(R"({"family":"aut","degree":2})"), 3).size(), 128u);
  EXPECT_EQ(materialize(parse_spec(R"({"family":"aut","degree":3})"), 0).size(), 1u);
  EXPECT_EQ(materialize(parse_spec(R"({"family":"gs","degree":2})"), 4).size(), 256u);
  EXPECT_EQ(materialize(parse_spec(R"({"family":"lemma","degree":2})"), 4).size(), 512u);
  EXPECT_EQ(materialize(parse_spec(R"({"family":"lemma","degree":2})"), 1).size(), 2u);
  EXPECT_EQ(materialize(parse_spec(R"({"family":"generators","degree":2,"generators":[]})"), 3).size(), 1u);
  EXPECT_EQ(materialize(parse_spec(R"({"family":"affine","degree":3,"part":"H"})"), 2).size(), 81u);
  auto gh = parse_spec(slurp(kConfigs / "gh.json"));
  EXPECT_EQ(materialize(gh, 2).size(), 162u);
}

TEST(spec, generators_are_padded_or_truncated) {
  auto spec = parse_spec(R"({"family":"generators","degree":2,"generators":["10","e[10,e]"]})");
  EXPECT_EQ(materialize(spec, 1).size(), 2u);
  EXPECT_EQ(materialize(spec, 2).size(), 8u);
  EXPECT_EQ(materialize(spec, 3).size(), 8u);
}

TEST(spec, pattern_family) {
  auto by_windows = parse_spec(R"({"family":"pattern","degree":2,"pattern_depth":1,"patterns":["e","10"]})");
  EXPECT_EQ(materialize(by_windows, 3).size(), 128u);
  EXPECT_THROW(materialize(by_windows, 0), RangeError);
  auto by_gens = parse_spec(slurp(kConfigs / "pattern.json"));
  EXPECT_EQ(min_depth(by_gens), 2);
}

TEST(spec, parse_errors) {
  EXPECT_THROW(parse_spec("{"), ParseError);
  EXPECT_THROW(parse_spec(R"({"degree":2})"), ParseError);
  EXPECT_THROW(parse_spec(R"({"family":"nope","degree":2})"), ParseError);
  EXPECT_THROW(parse_spec(R"({"family":"aut","degree":1})"), ParseError);
  EXPECT_THROW(parse_spec(R"({"family":"aut","degree":"2"})"), ParseError);
  EXPECT_THROW(parse_spec(R"({"family":"affine","degree":3,"part":"K"})"), ParseError);
  EXPECT_THROW(parse_spec(R"({"family":"pattern","degree":2,"pattern_depth":1})"), ParseError);
  EXPECT_THROW(parse_spec(R"({"family":"gh","outer":{"family":"aut","degree":2},"inner":{"family":"aut","degree":3}})"),
               ParseError);
  try {
    parse_spec("{\"family\": \"aut\",, }");
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_GT(e.position(), 0u);
  }
}

TEST(spec, closed_forms_match_enumeration) {
  const char *specs[] = {R"({"family":"aut","degree":2})", R"({"family":"gs","degree":2})",
                         R"({"family":"gs","degree":3})", R"({"family":"lemma","degree":2})",
                         R"({"family":"affine","degree":3,"part":"H"})",
                         R"({"family":"generators","degree":3,"generators":[]})"};
  for (const char *text : specs) {
    const auto spec = parse_spec(text);
    for (int n = 1; n <= 3; ++n) {
      auto closed = closed_form_log_order(spec, n);
      ASSERT_TRUE(closed.has_value()) << text;
      EXPECT_EQ(*closed, LogOrder::of(materialize(spec, n).size())) << text << " n=" << n;
    }
  }
}

TEST(spec, sampler_strategies) {
  EXPECT_EQ(make_sampler(parse_spec(R"({"family":"gs","degree":3})"), 3).strategy, "product");
  EXPECT_EQ(make_sampler(parse_spec(R"({"family":"lemma","degree":2})"), 4).strategy, "coset");
  EXPECT_EQ(make_sampler(parse_spec(R"({"family":"lemma","degree":3})"), 2).strategy, "enumeration");
  EXPECT_EQ(make_sampler(parse_spec(R"({"family":"aut","degree":2})"), 2).strategy, "enumeration");
  EXPECT_THROW(make_sampler(parse_spec(R"({"family":"aut","degree":3})"), 3, 1000), CapacityError);
}

TEST(suite_engine, literals_and_comparison) {
  using suite::compare;
  using suite::parse_literal;
  EXPECT_TRUE(std::get<bool>(parse_literal("true")));
  EXPECT_EQ(std::get<ExactFraction>(parse_literal("2/27")), make_fraction(2, 27));
  EXPECT_EQ(std::get<BigInt>(parse_literal("162")), 162);
  EXPECT_DOUBLE_EQ(std::get<double>(parse_literal("1e-3")), 1e-3);
  EXPECT_THROW(parse_literal("1.5x"), ParseError);
  EXPECT_TRUE(compare(">=", suite::Value(make_fraction(11, 32)), suite::Value(make_fraction(1, 4)), 0));
  EXPECT_FALSE(compare("<", suite::Value(make_fraction(1, 4)), suite::Value(make_fraction(1, 4)), 0));
  EXPECT_TRUE(compare("==", suite::Value(0.5000004), suite::Value(make_fraction(1, 2)), 1e-5));
  EXPECT_FALSE(compare("==", suite::Value(0.5001), suite::Value(make_fraction(1, 2)), 1e-5));
  EXPECT_TRUE(compare("==", suite::Value(BigInt(8)), suite::Value(make_fraction(8, 1)), 0));
  EXPECT_TRUE(compare("!=", suite::Value(true), suite::Value(false), 0));
}

TEST(suite_engine, when_conditions) {
  suite::SuiteConfig c;
  c.degree = 3;
  c.depth = 4;
  EXPECT_TRUE(suite::when_holds("", c));
  EXPECT_TRUE(suite::when_holds("d==3", c));
  EXPECT_FALSE(suite::when_holds("d==2 && depth>=4", c));
  EXPECT_TRUE(suite::when_holds("d==2 && depth>=4 || d==3 && depth<5", c));
  EXPECT_TRUE(suite::when_holds("trials >= 1000", c));
  EXPECT_THROW(suite::when_holds("x==1", c), ParseError);
  EXPECT_THROW(suite::when_holds("d~2", c), ParseError);
}

TEST(suite_engine, statuses_and_exit_codes) {
  suite::SuiteConfig c;
  c.suite = "custom";
  c.degree = 2;
  c.depth = 3;
  std::vector<suite::Claim> passing{{"a", "theorem.bound", "==", "1/4", 0, ""},
                                    {"b", "lemma.pi2_order", "==", "=lemma.pi2_expected", 0, ""},
                                    {"c", "lemma.index", "report", "", 0, ""},
                                    {"d", "lemma.index", "==", "999", 0, "d==3"}};
  auto ok = suite::run_suite(c, passing);
  EXPECT_EQ(ok.exit_code(), 0);
  EXPECT_EQ(ok.count(suite::Status::Skipped), 1u);
  EXPECT_EQ(ok.count(suite::Status::Reported), 1u);

  auto failing = passing;
  failing.push_back({"e", "theorem.bound", ">", "1/4", 0, ""});
  EXPECT_EQ(suite::run_suite(c, failing).exit_code(), 1);

  auto capped = c;
  capped.cap = 10;
  auto cap_report = suite::run_suite(capped, failing);
  EXPECT_EQ(cap_report.exit_code(), 3);
  EXPECT_GT(cap_report.count(suite::Status::Capacity), 0u);

  std::vector<suite::Claim> unknown{{"x", "no.such_op", "==", "1", 0, ""}};
  EXPECT_THROW(suite::run_suite(c, unknown), ParseError);
}

TEST(suite_engine, claims_file) {
  std::ifstream in(kConfigs / "claims-lemma-d2.json");
  auto claims = suite::parse_claims(nlohmann::json::parse(in));
  EXPECT_EQ(claims.size(), 5u);
  suite::SuiteConfig c;
  c.depth = 3;
  EXPECT_EQ(suite::run_suite(c, claims).exit_code(), 0);
  EXPECT_THROW(suite::parse_claims(nlohmann::json::parse(R"([{"id":"x","operation":"bogus","relation":"=="}])")),
               ParseError);
  EXPECT_THROW(suite::parse_claims(nlohmann::json::parse(R"({"id":"x"})")), ParseError);
}

TEST(suite_engine, default_tables_reference_known_operations) {
  for (const auto &name : suite::suite_names())
    for (const auto &claim : suite::default_claims(name)) {
      EXPECT_TRUE(suite::operations().count(claim.operation)) << claim.operation;
      if (claim.expected.starts_with("=")) {
        EXPECT_TRUE(suite::operations().count(claim.expected.substr(1))) << claim.expected;
      }
    }
  EXPECT_THROW(suite::default_claims("nope"), ParseError);
}

TEST(report, deterministic_json_and_csv) {
  suite::SuiteConfig c;
  c.suite = "hdim";
  c.depth = 4;
  auto a = suite::run_suite(c, suite::default_claims("hdim"));
  auto b = suite::run_suite(c, suite::default_claims("hdim"));
  EXPECT_EQ(dump(suite::to_json(a)), dump(suite::to_json(b)));
  EXPECT_EQ(suite::to_csv(a), suite::to_csv(b));
  auto j = suite::to_json(a);
  EXPECT_EQ(j["tool"], kToolName);
  EXPECT_EQ(j["version"], kToolVersion);
  EXPECT_EQ(j["seed"], "0x5EED");
  EXPECT_EQ(j["depth"], 4);
}

TEST(report, fpp_csv_columns) {
  auto r = fpp_report(materialize(parse_spec(R"({"family":"aut","degree":2})"), 2), "aut", make_fraction(1, 4), "x");
  auto csv = to_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "level,count_fixing,order,p_k,bound,pass");
  EXPECT_NE(csv.find("2,3,8,3/8,1/4,pass"), std::string::npos);
  auto j = to_json(r, {nlohmann::json(), 0x1234, 2});
  EXPECT_EQ(j["seed"], "0x1234");
  EXPECT_EQ(j["levels"][1]["p_k"], "3/8");
}

TEST(report, formatting_helpers) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(1e-5), "1e-05");
  EXPECT_EQ(format_seed(0x5EED), "0x5EED");
  EXPECT_THROW(write_output("/nonexistent-dir/out.json", "x"), std::runtime_error);
  try {
    write_output("/nonexistent-dir/out.json", "x");
  } catch (const std::runtime_error &e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/out.json"), std::string::npos);
  }
}
