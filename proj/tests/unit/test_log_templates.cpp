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

#include <random>
#include <string>
#include <vector>

#include "mish/error.hpp"
#include "mish/log_templates.hpp"

namespace mish {
namespace {

TEST(LogTemplates, FreshTreeIsEmpty) {
  TemplateTree tree;
  EXPECT_EQ(tree.template_count(), 0u);
  EXPECT_TRUE(tree.templates().empty());
}

TEST(LogTemplates, SimilarLinesShareTemplate) {
  TemplateTree tree;
  const TemplateId a = tree.ingest("login user=alice ok");
  EXPECT_EQ(tree.template_count(), 1u);
  const TemplateId b = tree.ingest("login user=bob ok");
  EXPECT_EQ(a, b);
  EXPECT_EQ(tree.template_count(), 1u);
  const LogTemplate* tmpl = tree.find(a);
  ASSERT_NE(tmpl, nullptr);
  EXPECT_EQ(tmpl->tokens, (std::vector<std::string>{"login", "user=<*>", "ok"}));
  EXPECT_EQ(tmpl->matches, 2u);
}

TEST(LogTemplates, NoneIsReserved) {
  TemplateTree tree;
  EXPECT_EQ(tree.ingest("None"), kNoneTemplate);
  EXPECT_EQ(tree.template_count(), 1u);
  EXPECT_EQ(tree.ingest("  None "), kNoneTemplate);
  EXPECT_EQ(tree.template_count(), 1u);
  EXPECT_EQ(tree.ingest("first real line"), 1u);
  EXPECT_EQ(tree.template_count(), 2u);
}

TEST(LogTemplates, IdenticalLineSameId) {
  TemplateTree tree;
  const TemplateId a = tree.ingest("orders stored new order for lamp");
  EXPECT_EQ(tree.ingest("orders stored new order for lamp"), a);
  EXPECT_EQ(tree.template_count(), 1u);
}

TEST(LogTemplates, IdsAreDenseInFirstSeenOrder) {
  TemplateTree tree;
  EXPECT_EQ(tree.ingest("alpha beta"), 1u);
  EXPECT_EQ(tree.ingest("one two three four"), 2u);
  EXPECT_EQ(tree.ingest("x"), 3u);
  EXPECT_EQ(tree.ingest("alpha beta"), 1u);
}

TEST(LogTemplates, DigitTokensAreMasked) {
  TemplateTree tree;
  const TemplateId a = tree.ingest("catalog served page 7");
  const TemplateId b = tree.ingest("catalog served page 42");
  EXPECT_EQ(a, b);
  EXPECT_EQ(tree.find(a)->tokens.back(), "<*>");
  EXPECT_EQ(tree.ingest("ledger qty=12 booked"), tree.ingest("ledger qty=3 booked"));
  EXPECT_EQ(tree.find(tree.ingest("ledger qty=3 booked"))->tokens[1], "qty=<*>");
}

TEST(LogTemplates, DissimilarLinesSplit) {
  TemplateTree tree;
  const TemplateId a = tree.ingest("auth session opened for user alice");
  const TemplateId b = tree.ingest("auth token expired during long request");
  EXPECT_NE(a, b);
  EXPECT_EQ(tree.template_count(), 2u);
}

TEST(LogTemplates, TokenCountSeparatesBuckets) {
  TemplateTree tree;
  EXPECT_NE(tree.ingest("service ready"), tree.ingest("service ready now"));
}

TEST(LogTemplates, GeneralizationNeverSplits) {
  TemplateTree tree;
  const TemplateId id = tree.ingest("admin kept order 3 as reject");
  tree.ingest("admin kept order 4 as escalate");
  EXPECT_EQ(tree.ingest("admin kept order 3 as reject"), id);
  EXPECT_EQ(tree.find(id)->tokens,
            (std::vector<std::string>{"admin", "kept", "order", "<*>", "as", "<*>"}));
}

TEST(LogTemplates, OverflowFallsBackToCatchAll) {
  TemplateTreeConfig config;
  config.max_children = 3;
  TemplateTree tree(config);
  std::vector<TemplateId> ids;
  for (const char* head : {"aa", "bb", "cc", "dd", "ee"}) {
    ids.push_back(tree.ingest(std::string(head) + " same tail words"));
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    EXPECT_NE(tree.find(ids[i]), nullptr);
  }
  EXPECT_LE(tree.template_count(), ids.size());
}

TEST(LogTemplates, DeterministicAssignment) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> words{"get", "put", "order", "item", "ok", "fail", "7", "x=1"};
  std::vector<std::string> lines;
  for (int i = 0; i < 500; ++i) {
    std::string line;
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int j = 0; j < n; ++j) {
      if (j) line += ' ';
      line += words[rng() % words.size()];
    }
    lines.push_back(line);
  }
  TemplateTree first;
  TemplateTree second;
  for (const auto& line : lines) EXPECT_EQ(first.ingest(line), second.ingest(line));
  EXPECT_EQ(first.export_text(), second.export_text());
}

TEST(LogTemplates, StoredTokenCountMatchesBucket) {
  TemplateTree tree;
  tree.ingest("a b c");
  tree.ingest("a b d");
  tree.ingest("q");
  for (const auto& tmpl : tree.templates()) {
    if (tmpl.id == kNoneTemplate) continue;
    EXPECT_FALSE(tmpl.tokens.empty());
  }
  EXPECT_EQ(tree.find(1)->tokens.size(), 3u);
  EXPECT_EQ(tree.find(2)->tokens.size(), 1u);
}

TEST(LogTemplates, BlankMessageRejected) {
  TemplateTree tree;
  EXPECT_THROW(tree.ingest("   "), std::invalid_argument);
}

TEST(LogTemplates, InvalidConfigRejected) {
  EXPECT_THROW(TemplateTree(TemplateTreeConfig{2, 0.4, 100, true}), InvalidConfig);
  EXPECT_THROW(TemplateTree(TemplateTreeConfig{4, 0.0, 100, true}), InvalidConfig);
  EXPECT_THROW(TemplateTree(TemplateTreeConfig{4, 0.4, 1, true}), InvalidConfig);
}

TEST(LogTemplates, ExportListsTemplates) {
  TemplateTree tree;
  tree.ingest("None");
  tree.ingest("health probe ok");
  EXPECT_EQ(tree.export_text(), "0\tNone\n1\thealth probe ok\n");
}

}  // namespace
}  // namespace mish
