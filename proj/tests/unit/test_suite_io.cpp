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

#include <filesystem>

#include "mish/error.hpp"
#include "mish/suite_io.hpp"

namespace mish {
namespace {

std::vector<SuiteEntry> sample_suite() {
  RestCall login{HttpMethod::Post, "/auth/login", {{"user", std::string("admin")}}, false};
  RestCall deep{HttpMethod::Get, "/admin/orders", {}, true};
  RestCall order{HttpMethod::Post, "/orders", {{"qty", std::int64_t{-2}}, {"item", std::string("pen")}}, true};
  return {SuiteEntry{TestCase{{login, deep}}, {"admin:orders:deep", "auth:login:admin"}, {}},
          SuiteEntry{TestCase{{login, order}}, {}, {"orders:create:500"}}};
}

TEST(SuiteIo, RoundTrip) {
  const auto suite = sample_suite();
  const std::string text = write_suite_json(suite, "auth-chain");
  const auto back = read_suite_json(text);
  ASSERT_EQ(back.size(), suite.size());
  for (std::size_t i = 0; i < suite.size(); ++i) {
    EXPECT_EQ(back[i].test, suite[i].test);
    EXPECT_EQ(back[i].covers, suite[i].covers);
    EXPECT_EQ(back[i].faults, suite[i].faults);
  }
  EXPECT_EQ(write_suite_json(back, "auth-chain"), text);
}

TEST(SuiteIo, DocumentShape) {
  const std::string text = write_suite_json(sample_suite(), "auth-chain");
  EXPECT_NE(text.find("\"schema_version\": 1"), std::string::npos);
  EXPECT_NE(text.find("\"scenario\": \"auth-chain\""), std::string::npos);
  EXPECT_NE(text.find("\"uses_session\": true"), std::string::npos);
  EXPECT_NE(text.find("\"method\": \"POST\""), std::string::npos);
}

TEST(SuiteIo, EmptySuite) {
  EXPECT_TRUE(read_suite_json(write_suite_json({}, "x")).empty());
}

TEST(SuiteIo, RejectsBadDocuments) {
  EXPECT_THROW(read_suite_json("{"), InvalidConfig);
  EXPECT_THROW(read_suite_json(R"({"schema_version": 2, "tests": []})"), InvalidConfig);
  EXPECT_THROW(read_suite_json(R"({"schema_version": 1, "tests": [{"calls": [
      {"method": "GET", "endpoint": "/a", "params": {"x": 1.5}}]}]})"),
               InvalidConfig);
  EXPECT_THROW(read_suite_json(R"({"schema_version": 1, "tests": [{"calls": [
      {"method": "PATCH", "endpoint": "/a"}]}]})"),
               InvalidConfig);
}

TEST(SuiteIo, ReportCsv) {
  RunReport report;
  report.samples = {{0.0, 0, 2, 0}, {0.0125, 1, 3, 1}};
  EXPECT_EQ(write_report_csv(report),
            "elapsed_s,generation,covered_targets,faults\n0.000,0,2,0\n0.013,1,3,1\n");
}

TEST(SuiteIo, TextFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "mish-suite-io-test";
  std::filesystem::remove_all(dir);
  write_text_file(dir / "nested" / "f.txt", "abc\n");
  EXPECT_EQ(read_text_file(dir / "nested" / "f.txt"), "abc\n");
  EXPECT_THROW(read_text_file(dir / "missing.txt"), InvalidConfig);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace mish
