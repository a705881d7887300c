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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace mish {

using TemplateId = std::uint32_t;

/// Symbol reserved for the "None" word that stands in for silent test cases.
inline constexpr TemplateId kNoneTemplate = 0;
inline constexpr std::string_view kNoneWord = "None";
inline constexpr std::string_view kWildcard = "<*>";

struct TemplateTreeConfig {
  std::size_t depth = 4;
  double similarity_threshold = 0.4;
  std::size_t max_children = 100;
  bool mask_digits = true;
};

struct LogTemplate {
  TemplateId id = 0;
  std::vector<std::string> tokens;
  std::size_t matches = 0;
};

/// Online fixed-depth parse tree that clusters log lines into templates.
///
/// The first tree level is keyed by token count, the next `depth - 3` levels
/// by leading tokens; leaves hold template groups. A message joins the most
/// similar group in its leaf when the fraction of equal-position tokens
/// reaches the similarity threshold, otherwise it starts a new group. Ids are
/// dense and handed out in first-seen order starting at 1; id 0 is the
/// "None" word.
class TemplateTree {
 public:
  explicit TemplateTree(TemplateTreeConfig config = {});
  ~TemplateTree();
  TemplateTree(TemplateTree&&) noexcept;
  TemplateTree& operator=(TemplateTree&&) noexcept;
  TemplateTree(const TemplateTree&) = delete;
  TemplateTree& operator=(const TemplateTree&) = delete;

  /// Classifies `message`, learning or generalizing a template as needed.
  /// Throws std::invalid_argument for blank messages.
  TemplateId ingest(std::string_view message);

  /// Number of distinct ids issued so far, counting id 0 once it was used.
  std::size_t template_count() const noexcept;

  /// Current template tokens for `id`, or nullptr if never issued.
  const LogTemplate* find(TemplateId id) const;

  /// All templates ordered by id.
  std::vector<LogTemplate> templates() const;

  /// `<id>\t<space-joined tokens>` per line, ordered by id.
  std::string export_text() const;

  const TemplateTreeConfig& config() const noexcept { return config_; }

  static std::vector<std::string> tokenize(std::string_view message);

 private:
  struct Node;

  Node* descend_for_search(const std::vector<std::string>& tokens) const;
  Node* descend_for_insert(const std::vector<std::string>& tokens);
  std::size_t best_match(const Node& leaf, const std::vector<std::string>& tokens) const;

  TemplateTreeConfig config_;
  std::map<std::size_t, std::unique_ptr<Node>> length_layer_;
  std::vector<LogTemplate> groups_;  // index = id - 1
  bool none_used_ = false;
};

}  // namespace mish
