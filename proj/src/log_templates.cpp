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

#include "mish/log_templates.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "mish/error.hpp"

namespace mish {

struct TemplateTree::Node {
  std::map<std::string, std::unique_ptr<Node>> children;
  std::vector<std::size_t> groups;
};

namespace {

bool has_digit(std::string_view token) {
  return std::any_of(token.begin(), token.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

// "key=value" keeps its key when the value is generalized
std::string_view key_prefix(std::string_view token) {
  const auto eq = token.find('=');
  if (eq == std::string_view::npos || eq == 0) return {};
  return token.substr(0, eq + 1);
}

std::string wildcard_value(std::string_view token) {
  const std::string_view key = key_prefix(token);
  if (key.empty() || has_digit(key)) return std::string(kWildcard);
  return std::string(key) + std::string(kWildcard);
}

std::string generalize(const std::string& slot, const std::string& token) {
  const std::string_view key = key_prefix(slot);
  if (!key.empty() && key == key_prefix(token) && !has_digit(key)) {
    return std::string(key) + std::string(kWildcard);
  }
  return std::string(kWildcard);
}

bool is_wildcard_value(std::string_view slot) {
  return slot.size() > kWildcard.size() && slot.ends_with(kWildcard) &&
         !key_prefix(slot).empty() && key_prefix(slot).size() + kWildcard.size() == slot.size();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

TemplateTree::TemplateTree(TemplateTreeConfig config) : config_(config) {
  if (config_.depth < 3) throw InvalidConfig("template tree depth must be at least 3");
  if (!(config_.similarity_threshold > 0.0 && config_.similarity_threshold <= 1.0))
    throw InvalidConfig("similarity threshold must lie in (0, 1]");
  if (config_.max_children < 2) throw InvalidConfig("max_children must be at least 2");
}

TemplateTree::~TemplateTree() = default;
TemplateTree::TemplateTree(TemplateTree&&) noexcept = default;
TemplateTree& TemplateTree::operator=(TemplateTree&&) noexcept = default;

std::vector<std::string> TemplateTree::tokenize(std::string_view message) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < message.size()) {
    while (i < message.size() && std::isspace(static_cast<unsigned char>(message[i]))) ++i;
    std::size_t start = i;
    while (i < message.size() && !std::isspace(static_cast<unsigned char>(message[i]))) ++i;
    if (i > start) tokens.emplace_back(message.substr(start, i - start));
  }
  return tokens;
}

TemplateTree::Node* TemplateTree::descend_for_search(const std::vector<std::string>& tokens) const {
  auto bucket = length_layer_.find(tokens.size());
  if (bucket == length_layer_.end()) return nullptr;
  Node* node = bucket->second.get();
  const std::size_t layers = std::min(config_.depth - 3, tokens.size() - 1);
  for (std::size_t i = 0; i < layers; ++i) {
    auto it = node->children.find(tokens[i]);
    if (it == node->children.end()) it = node->children.find(std::string(kWildcard));
    if (it == node->children.end()) return nullptr;
    node = it->second.get();
  }
  return node;
}

TemplateTree::Node* TemplateTree::descend_for_insert(const std::vector<std::string>& tokens) {
  auto& bucket = length_layer_[tokens.size()];
  if (!bucket) bucket = std::make_unique<Node>();
  Node* node = bucket.get();
  const std::string wildcard(kWildcard);
  auto child = [](Node* parent, const std::string& key) {
    auto& slot = parent->children[key];
    if (!slot) slot = std::make_unique<Node>();
    return slot.get();
  };

  const std::size_t layers = std::min(config_.depth - 3, tokens.size() - 1);
  for (std::size_t i = 0; i < layers; ++i) {
    const std::string& token = tokens[i];
    if (auto it = node->children.find(token); it != node->children.end()) {
      node = it->second.get();
      continue;
    }
    const std::size_t fanout = node->children.size();
    if (has_digit(token)) {
      node = child(node, wildcard);
    } else if (node->children.count(wildcard) != 0) {
      node = fanout < config_.max_children ? child(node, token) : child(node, wildcard);
    } else if (fanout + 1 < config_.max_children) {
      node = child(node, token);
    } else {
      // last free slot is reserved for the catch-all group
      node = child(node, wildcard);
    }
  }
  return node;
}

std::size_t TemplateTree::best_match(const Node& leaf, const std::vector<std::string>& tokens) const {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t best = kNone;
  double best_sim = -1.0;
  long best_params = -1;
  for (std::size_t index : leaf.groups) {
    const auto& tmpl = groups_[index].tokens;
    std::size_t equal = 0;
    long params = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tmpl[i] == kWildcard) {
        // a masked token lines up with a masked slot; any other token is a parameter
        if (tokens[i] == kWildcard) {
          ++equal;
        } else {
          ++params;
        }
      } else if (tmpl[i] == tokens[i]) {
        ++equal;
      } else if (is_wildcard_value(tmpl[i]) && key_prefix(tmpl[i]) == key_prefix(tokens[i])) {
        ++equal;
      }
    }
    const double sim = static_cast<double>(equal) / static_cast<double>(tokens.size());
    if (sim > best_sim || (sim == best_sim && params > best_params)) {
      best = index;
      best_sim = sim;
      best_params = params;
    }
  }
  if (best != kNone && best_sim >= config_.similarity_threshold) return best;
  return kNone;
}

TemplateId TemplateTree::ingest(std::string_view message) {
  const std::string_view text = trim(message);
  if (text.empty()) throw std::invalid_argument("log message is blank");
  if (text == kNoneWord) {
    none_used_ = true;
    return kNoneTemplate;
  }

  std::vector<std::string> tokens = tokenize(text);
  if (config_.mask_digits) {
    for (auto& token : tokens) {
      if (has_digit(token)) token = wildcard_value(token);
    }
  }

  if (Node* leaf = descend_for_search(tokens)) {
    const std::size_t index = best_match(*leaf, tokens);
    if (index != static_cast<std::size_t>(-1)) {
      LogTemplate& group = groups_[index];
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (group.tokens[i] != tokens[i]) group.tokens[i] = generalize(group.tokens[i], tokens[i]);
      }
      ++group.matches;
      return group.id;
    }
  }

  const std::size_t index = groups_.size();
  groups_.push_back(LogTemplate{static_cast<TemplateId>(index + 1), tokens, 1});
  descend_for_insert(tokens)->groups.push_back(index);
  return groups_.back().id;
}

std::size_t TemplateTree::template_count() const noexcept {
  return groups_.size() + (none_used_ ? 1 : 0);
}

const LogTemplate* TemplateTree::find(TemplateId id) const {
  if (id == kNoneTemplate || id > groups_.size()) return nullptr;
  return &groups_[id - 1];
}

std::vector<LogTemplate> TemplateTree::templates() const {
  std::vector<LogTemplate> out;
  if (none_used_) out.push_back(LogTemplate{kNoneTemplate, {std::string(kNoneWord)}, 0});
  out.insert(out.end(), groups_.begin(), groups_.end());
  return out;
}

std::string TemplateTree::export_text() const {
  std::ostringstream out;
  for (const auto& tmpl : templates()) {
    out << tmpl.id << '\t';
    for (std::size_t i = 0; i < tmpl.tokens.size(); ++i) {
      if (i != 0) out << ' ';
      out << tmpl.tokens[i];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace mish
