// Copyright 2026 The qthermo Authors
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


#include "core/config.hpp"

#include <cmath>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>

#include "core/types.hpp"

namespace qthermo::config {

namespace pt = boost::property_tree;

Config::Config(pt::ptree tree, std::string origin) : tree_(std::move(tree)), origin_(std::move(origin)) {}

Config Config::load(const std::string& path) {
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorCode::config, e.what());
  }
  return Config(std::move(tree), path);
}

Config Config::parse(const std::string& text, const std::string& origin) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorCode::config, origin + ": " + e.message());
  }
  return Config(std::move(tree), origin);
}

bool Config::has(const std::string& key) const {
  return static_cast<bool>(tree_.get_optional<std::string>(key));
}

void Config::bad(const std::string& key, const std::string& what) const {
  fail(ErrorCode::config, origin_ + ": [" + key + "] " + what);
}

std::string Config::raw(const std::string& key) {
  used_.insert(key);
  auto v = tree_.get_optional<std::string>(key);
  if (!v) bad(key, "missing required key");
  return boost::algorithm::trim_copy(*v);
}

double Config::get_double(const std::string& key) {
  const std::string s = raw(key);
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    bad(key, "expected a finite number, got '" + s + "'");
  }
}

double Config::get_double(const std::string& key, double fallback) {
  if (!has(key)) {
    used_.insert(key);
    return fallback;
  }
  return get_double(key);
}

int Config::get_int(const std::string& key) {
  const std::string s = raw(key);
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size() || v < -(1L << 30) || v > (1L << 30)) throw std::invalid_argument(s);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    bad(key, "expected an integer, got '" + s + "'");
  }
}

int Config::get_int(const std::string& key, int fallback) {
  if (!has(key)) {
    used_.insert(key);
    return fallback;
  }
  return get_int(key);
}

std::string Config::get_string(const std::string& key) { return raw(key); }

std::string Config::get_string(const std::string& key, const std::string& fallback) {
  if (!has(key)) {
    used_.insert(key);
    return fallback;
  }
  return raw(key);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, text, boost::algorithm::is_any_of(","));
  std::vector<double> out;
  for (auto& p : parts) {
    boost::algorithm::trim(p);
    std::size_t pos = 0;
    const double v = std::stod(p, &pos);
    if (pos != p.size() || !std::isfinite(v)) throw std::invalid_argument(p);
    out.push_back(v);
  }
  return out;
}

std::vector<double> Config::get_list(const std::string& key) {
  const std::string s = raw(key);
  try {
    auto v = parse_list(s);
    if (v.empty()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    bad(key, "expected a comma-separated list of numbers, got '" + s + "'");
  }
}

std::vector<double> Config::get_list(const std::string& key, const std::vector<double>& fallback) {
  if (!has(key)) {
    used_.insert(key);
    return fallback;
  }
  return get_list(key);
}

std::vector<std::string> Config::sections() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : tree_) out.push_back(name);
  return out;
}

void Config::finish() const {
  std::vector<std::string> unknown;
  for (const auto& [section, body] : tree_) {
    // The INI reader drops empty sections, so a childless node is a bare top-level key.
    if (body.empty()) {
      unknown.push_back(section);
      continue;
    }
    for (const auto& [key, _] : body) {
      const std::string full = section + "." + key;
      if (!used_.count(full)) unknown.push_back(full);
    }
  }
  if (!unknown.empty()) {
    std::string msg = origin_ + ": unknown key(s):";
    for (const auto& k : unknown) msg += " " + k;
    fail(ErrorCode::config, msg);
  }
}

}  // namespace qthermo::config
