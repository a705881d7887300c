/*
 *  Copyright (c) 2026 The mish authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#include <gtest/gtest.h>

#include <string>

#include "mish/error.hpp"
#include "mish/scenario.hpp"

namespace mish {
namespace {

std::string wrap(const std::string& endpoints, const std::string& targets = "[]",
                 const std::string& faults = "[]") {
  return R"({"schema_version": 1, "name": "t", "targets": )" + targets + R"(, "faults": )" + faults +
         R"(, "services": [{"name": "svc", "endpoints": [)" + endpoints + "]}]}";
}

TEST(Scenario, BuiltinsAreListed) {
  const auto names = builtin_scenarios();
  for (const char* expected : {"auth-chain", "branching", "flat-api"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), expected), names.end()) << expected;
    EXPECT_FALSE(builtin_scenario_text(expected).empty());
  }
  EXPECT_TRUE(builtin_scenario_text("missing").empty());
  EXPECT_THROW(resolve_scenario("missing"), InvalidConfig);
}

TEST(Scenario, LoadsFixtureFile) {
  const SutScenario s = resolve_scenario(std::string(MISH_FIXTURE_DIR) + "/scenarios/auth-chain.json");
  EXPECT_EQ(s.name, "auth-chain");
  EXPECT_EQ(list_targets(s).size(), 9u);
  const ApiSurface surface = s.surface();
  EXPECT_EQ(surface.find("/internal/audit"), nullptr);
  ASSERT_NE(surface.find("/auth/login"), nullptr);
  EXPECT_TRUE(surface.find("/auth/login")->login);
  EXPECT_EQ(surface.find("/catalog/items")->param("page")->max, 50);
}

TEST(Scenario, EmptyScenarioHasNoTargets) {
  const SutScenario s = SutScenario::parse(wrap(""));
  EXPECT_TRUE(list_targets(s).empty());
  EXPECT_TRUE(s.surface().endpoints.empty());
}

TEST(Scenario, MinimalEndpoint) {
  const SutScenario s = SutScenario::parse(wrap(
      R"({"path": "/ping", "methods": ["GET", "PUT"], "params": {"n": {"int": [1, 3]}},
          "responses": [{"when": {"param": "n", "in": [2, 3]}, "effects": [{"cover": "hit"}]}]})",
      R"(["hit"])"));
  const ApiSurface surface = s.surface();
  const EndpointSpec* ping = surface.find("/ping");
  ASSERT_NE(ping, nullptr);
  EXPECT_TRUE(ping->allows(HttpMethod::Put));
  EXPECT_FALSE(ping->allows(HttpMethod::Delete));
  EXPECT_TRUE(ping->param("n")->accepts(ParamValue{std::int64_t{2}}));
  EXPECT_FALSE(ping->param("n")->accepts(ParamValue{std::int64_t{4}}));
  EXPECT_FALSE(ping->param("n")->accepts(ParamValue{std::string("2")}));
}

TEST(Scenario, RejectsUndeclaredIds) {
  EXPECT_THROW(SutScenario::parse(wrap(
                   R"({"path": "/a", "methods": ["GET"], "responses": [{"effects": [{"cover": "x"}]}]})")),
               InvalidConfig);
  EXPECT_THROW(SutScenario::parse(wrap(
                   R"({"path": "/a", "methods": ["GET"], "responses": [{"fault": "boom"}]})")),
               InvalidConfig);
}

TEST(Scenario, RejectsInternalCycles) {
  EXPECT_THROW(SutScenario::parse(wrap(
                   R"({"path": "/a", "methods": ["GET"], "internal": true, "responses": [{"effects": [{"call": "/b"}]}]},
                      {"path": "/b", "methods": ["GET"], "internal": true, "responses": [{"effects": [{"call": "/a"}]}]})")),
               InvalidConfig);
  EXPECT_THROW(SutScenario::parse(wrap(
                   R"({"path": "/a", "methods": ["GET"], "responses": [{"effects": [{"call": "/zzz"}]}]})")),
               InvalidConfig);
}

TEST(Scenario, RejectsMalformedDocuments) {
  EXPECT_THROW(SutScenario::parse("not json"), InvalidConfig);
  EXPECT_THROW(SutScenario::parse(R"({"schema_version": 99, "name": "x", "services": []})"), InvalidConfig);
  EXPECT_THROW(SutScenario::parse(wrap(R"({"path": "/a", "methods": []})")), InvalidConfig);
  EXPECT_THROW(SutScenario::parse(wrap(R"({"path": "/a", "methods": ["GET"], "params": {"p": {"int": [3, 1]}}})")),
               InvalidConfig);
  EXPECT_THROW(SutScenario::parse(wrap(R"({"path": "/a", "methods": ["GET"], "params": {"p": {"enum": []}}})")),
               InvalidConfig);
  EXPECT_THROW(SutScenario::parse(wrap(
                   R"({"path": "/a", "methods": ["GET"], "responses": [{"status": 500}]})")),
               InvalidConfig);
  EXPECT_THROW(SutScenario::parse(wrap(
                   R"({"path": "/a", "methods": ["GET"]}, {"path": "/a", "methods": ["GET"]})")),
               InvalidConfig);
  EXPECT_THROW(SutScenario::parse(wrap(R"({"path": "/a", "methods": ["GET"]})", R"(["x", "x"])")),
               InvalidConfig);
}

TEST(Scenario, MissingFileIsConfigError) {
  EXPECT_THROW(SutScenario::load_file("/nonexistent/scenario.json"), InvalidConfig);
}

}  // namespace
}  // namespace mish
