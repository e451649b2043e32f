// Copyright 2026 The projcd Authors.
//
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

// Flat text configs: `key = value` lines grouped under `[section]` headers,
// `#` or `;` comments. Errors name the offending key as `section.key`.

#ifndef PROJCD_CONFIG_H_
#define PROJCD_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "projcd/errors.h"

namespace projcd {

class ConfigError : public ParseError {
 public:
  ConfigError(const std::string& key_path, const std::string& message)
      : ParseError(key_path + ": " + message), key_path_(key_path) {}
  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

class ConfigSection {
 public:
  ConfigSection() = default;
  ConfigSection(std::string name, std::vector<std::pair<std::string, std::string>> entries);

  const std::string& name() const { return name_; }
  bool Has(const std::string& key) const;

  std::string GetString(const std::string& key) const;
  std::string GetString(const std::string& key, const std::string& fallback) const;
  double GetDouble(const std::string& key) const;
  double GetDouble(const std::string& key, double fallback) const;
  int64_t GetInt(const std::string& key) const;
  int64_t GetInt(const std::string& key, int64_t fallback) const;
  bool GetBool(const std::string& key, bool fallback) const;
  // Comma-separated list.
  std::vector<std::string> GetList(const std::string& key) const;

  void Set(const std::string& key, const std::string& value);

  // Throws ConfigError for the first key never read through a getter.
  void RejectUnknownKeys() const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  std::string KeyPath(const std::string& key) const;

 private:
  const std::string* Find(const std::string& key) const;

  std::string name_;
  std::vector<std::pair<std::string, std::string>> entries_;
  mutable std::set<std::string> used_;
};

class Config {
 public:
  static Config Parse(const std::string& text);
  static Config ReadFile(const std::string& path);

  bool HasSection(const std::string& name) const;
  // Throws ConfigError if missing.
  const ConfigSection& Section(const std::string& name) const;
  // Sections whose name starts with `prefix`, in file order.
  std::vector<const ConfigSection*> SectionsWithPrefix(const std::string& prefix) const;
  const std::vector<ConfigSection>& sections() const { return sections_; }

  void AddSection(ConfigSection section) { sections_.push_back(std::move(section)); }
  std::string ToString() const;

 private:
  std::vector<ConfigSection> sections_;
};

}  // namespace projcd

#endif  // PROJCD_CONFIG_H_
