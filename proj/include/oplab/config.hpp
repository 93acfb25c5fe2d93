// Copyright 2026 The oplab Authors
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

// key = value configuration files. Blank lines and lines starting with '#'
// are ignored; later keys override earlier ones.

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace oplab {

class Config {
 public:
  static Config parse(std::string_view text, std::string_view origin = "<string>");
  static Config load(const std::filesystem::path& path);

  void set(std::string key, std::string value);
  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;

  /// Entries of `this` take precedence over those of `base`.
  Config over(const Config& base) const;
  /// Throws UsageError naming the first key not in `allowed`.
  void require_known(const std::set<std::string>& allowed) const;

  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace oplab
