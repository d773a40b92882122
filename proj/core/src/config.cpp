// Copyright 2026 the qdln authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdln/config.hpp"

#include <cctype>
#include <charconv>

namespace qdln {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config cfg;
  std::string section;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = (nl == std::string_view::npos) ? std::string_view{} : text.substr(nl + 1);

    if (const auto c = line.find_first_of("#;"); c != std::string_view::npos)
      line = line.substr(0, c);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(line_no) + ": unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty())
        throw ConfigError("config line " + std::to_string(line_no) + ": empty section name");
      cfg.values_[section];  // section may stay empty
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
    if (section.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": entry before any [section]");
    auto [it, inserted] = cfg.values_[section].emplace(key, value);
    if (!inserted)
      throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + section + "." + key + "'");
    cfg.key_order_[section].push_back(key);
  }
  return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto s = values_.find(section);
  return s != values_.end() && s->second.count(key) > 0;
}

bool Config::has_section(const std::string& section) const {
  return values_.count(section) > 0;
}

double Config::number(const std::string& section, const std::string& key) const {
  const auto s = values_.find(section);
  if (s == values_.end())
    throw ConfigError("missing config section [" + section + "]");
  const auto k = s->second.find(key);
  if (k == s->second.end())
    throw ConfigError("missing config key '" + key + "' in section [" + section + "]");
  const std::string& v = k->second;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("config key '" + section + "." + key + "': cannot parse number '" + v + "'");
  return out;
}

double Config::number_or(const std::string& section, const std::string& key,
                         double fallback) const {
  return has(section, key) ? number(section, key) : fallback;
}

const std::vector<std::string>& Config::keys(const std::string& section) const {
  static const std::vector<std::string> empty;
  const auto it = key_order_.find(section);
  return it == key_order_.end() ? empty : it->second;
}

}  // namespace qdln
