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

#include "oplab/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "oplab/errors.hpp"

namespace oplab {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, std::string_view text) {
  text = trim(text);
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(fmt::format("config key '{}': cannot parse '{}' as a number", key, text));
  }
  return v;
}

}  // namespace

Config Config::parse(std::string_view text, std::string_view origin) {
  Config c;
  std::size_t lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(fmt::format("{}:{}: expected key = value", origin, lineno));
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw UsageError(fmt::format("{}:{}: empty key", origin, lineno));
    c.set(std::string(key), std::string(trim(line.substr(eq + 1))));
  }
  return c;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(fmt::format("cannot open config file {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

void Config::set(std::string key, std::string value) { entries_[std::move(key)] = std::move(value); }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : parse_number<double>(key, it->second);
}

long Config::get_int(const std::string& key, long fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : parse_number<long>(key, it->second);
}

std::vector<double> Config::get_doubles(const std::string& key, std::vector<double> fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::vector<double> out;
  std::string_view rest = it->second;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_number<double>(key, rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

Config Config::over(const Config& base) const {
  Config c = base;
  for (const auto& [k, v] : entries_) c.set(k, v);
  return c;
}

void Config::require_known(const std::set<std::string>& allowed) const {
  for (const auto& [k, v] : entries_) {
    if (!allowed.count(k)) throw UsageError(fmt::format("unknown config key '{}'", k));
  }
}

}  // namespace oplab
