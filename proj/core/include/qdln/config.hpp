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

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qdln {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Minimal INI-style config: "[section]" headers, "key = value" entries,
// '#' and ';' comments. All numbers are parsed as 64-bit doubles.
class Config {
 public:
  static Config parse(std::string_view text);

  bool has(const std::string& section, const std::string& key) const;
  bool has_section(const std::string& section) const;

  // Throws ConfigError naming the missing section/key.
  double number(const std::string& section, const std::string& key) const;
  double number_or(const std::string& section, const std::string& key,
                   double fallback) const;

  const std::vector<std::string>& keys(const std::string& section) const;

 private:
  // key order preserved per section so error messages are stable
  std::map<std::string, std::map<std::string, std::string>> values_;
  std::map<std::string, std::vector<std::string>> key_order_;
};

}  // namespace qdln
