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

#include "projcd/config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <sstream>

namespace projcd {
namespace {

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

ConfigSection::ConfigSection(std::string name,
                             std::vector<std::pair<std::string, std::string>> entries)
    : name_(std::move(name)), entries_(std::move(entries)) {}

std::string ConfigSection::KeyPath(const std::string& key) const {
  return name_.empty() ? key : name_ + "." + key;
}

const std::string* ConfigSection::Find(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) {
      used_.insert(key);
      return &v;
    }
  }
  return nullptr;
}

bool ConfigSection::Has(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return true;
  }
  return false;
}

std::string ConfigSection::GetString(const std::string& key) const {
  const std::string* v = Find(key);
  if (v == nullptr) throw ConfigError(KeyPath(key), "missing required key");
  return *v;
}

std::string ConfigSection::GetString(const std::string& key,
                                     const std::string& fallback) const {
  const std::string* v = Find(key);
  return v == nullptr ? fallback : *v;
}

double ConfigSection::GetDouble(const std::string& key) const {
  const std::string text = GetString(key);
  try {
    size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ConfigError(KeyPath(key), "expected a number, got '" + text + "'");
  }
}

double ConfigSection::GetDouble(const std::string& key, double fallback) const {
  return Has(key) ? GetDouble(key) : fallback;
}

int64_t ConfigSection::GetInt(const std::string& key) const {
  const std::string text = GetString(key);
  int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(KeyPath(key), "expected an integer, got '" + text + "'");
  }
  return value;
}

int64_t ConfigSection::GetInt(const std::string& key, int64_t fallback) const {
  return Has(key) ? GetInt(key) : fallback;
}

bool ConfigSection::GetBool(const std::string& key, bool fallback) const {
  if (!Has(key)) return fallback;
  const std::string text = GetString(key);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(KeyPath(key), "expected a boolean, got '" + text + "'");
}

std::vector<std::string> ConfigSection::GetList(const std::string& key) const {
  std::vector<std::string> out;
  std::stringstream ss(GetString(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void ConfigSection::Set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void ConfigSection::RejectUnknownKeys() const {
  for (const auto& [k, v] : entries_) {
    if (!used_.contains(k)) throw ConfigError(KeyPath(k), "unknown key");
  }
}

Config Config::Parse(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()), e.message());
  }
  Config config;
  std::vector<std::pair<std::string, std::string>> top_level;
  for (const auto& [name, child] : tree) {
    if (child.empty()) {
      top_level.emplace_back(name, child.data());
      continue;
    }
    std::vector<std::pair<std::string, std::string>> entries;
    for (const auto& [key, value] : child) entries.emplace_back(key, value.data());
    config.sections_.emplace_back(name, std::move(entries));
  }
  if (!top_level.empty()) {
    config.sections_.insert(config.sections_.begin(),
                            ConfigSection("", std::move(top_level)));
  }
  return config;
}

Config Config::ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

bool Config::HasSection(const std::string& name) const {
  for (const ConfigSection& s : sections_) {
    if (s.name() == name) return true;
  }
  return false;
}

const ConfigSection& Config::Section(const std::string& name) const {
  for (const ConfigSection& s : sections_) {
    if (s.name() == name) return s;
  }
  throw ConfigError(name, "missing section [" + name + "]");
}

std::vector<const ConfigSection*> Config::SectionsWithPrefix(
    const std::string& prefix) const {
  std::vector<const ConfigSection*> out;
  for (const ConfigSection& s : sections_) {
    if (s.name().starts_with(prefix)) out.push_back(&s);
  }
  return out;
}

std::string Config::ToString() const {
  std::ostringstream out;
  bool first = true;
  for (const ConfigSection& s : sections_) {
    if (!first) out << "\n";
    first = false;
    if (!s.name().empty()) out << "[" << s.name() << "]\n";
    for (const auto& [k, v] : s.entries()) out << k << " = " << v << "\n";
  }
  return out.str();
}

}  // namespace projcd
