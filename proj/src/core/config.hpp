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


#pragma once

#include <set>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

namespace qthermo::config {

/// INI-style configuration with strict key accounting: every key must be read
/// by the scenario, and leftovers are rejected by finish().
class Config {
 public:
  static Config load(const std::string& path);
  static Config parse(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const;

  double get_double(const std::string& key);
  double get_double(const std::string& key, double fallback);
  int get_int(const std::string& key);
  int get_int(const std::string& key, int fallback);
  std::string get_string(const std::string& key);
  std::string get_string(const std::string& key, const std::string& fallback);
  std::vector<double> get_list(const std::string& key);
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback);
  /// Section names in file order.
  std::vector<std::string> sections() const;

  /// Throws ConfigError naming any key that was never read.
  void finish() const;

  const std::string& origin() const noexcept { return origin_; }

 private:
  Config(boost::property_tree::ptree tree, std::string origin);
  std::string raw(const std::string& key);
  [[noreturn]] void bad(const std::string& key, const std::string& what) const;

  boost::property_tree::ptree tree_;
  std::string origin_;
  std::set<std::string> used_;
};

std::vector<double> parse_list(const std::string& text);

}  // namespace qthermo::config
