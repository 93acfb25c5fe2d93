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

#include "oplab/experiments.hpp"

#include <cmath>

#include <fmt/format.h>

#include "oplab/errors.hpp"

namespace oplab {

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

const char* kind_name(Check::Kind k) {
  switch (k) {
    case Check::Kind::AtMost:
      return "at_most";
    case Check::Kind::AtLeast:
      return "at_least";
    case Check::Kind::Near:
      return "near";
    case Check::Kind::Holds:
      return "holds";
  }
  return "";
}

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return number(v);
}

}  // namespace

ExperimentReport::Cell::Cell(double v) : text(number(v)) {}
ExperimentReport::Cell::Cell(int v) : text(std::to_string(v)) {}
ExperimentReport::Cell::Cell(long v) : text(std::to_string(v)) {}
ExperimentReport::Cell::Cell(std::size_t v) : text(std::to_string(v)) {}

ExperimentReport::ExperimentReport(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {}

bool ExperimentReport::passed() const {
  for (const auto& c : checks_) {
    if (!c.pass) return false;
  }
  return true;
}

void ExperimentReport::row(std::vector<Cell> cells) {
  if (cells.size() != columns_.size()) {
    throw DimensionError(fmt::format("{}: row has {} cells, table has {} columns", name_, cells.size(),
                                     columns_.size()));
  }
  std::vector<std::string> r;
  r.reserve(cells.size());
  for (auto& c : cells) r.push_back(std::move(c.text));
  rows_.push_back(std::move(r));
}

void ExperimentReport::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << csv_escape(columns_[i]);
  out << '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_escape(r[i]);
    out << '\n';
  }
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json j;
  j["experiment"] = name_;
  j["passed"] = passed();
  j["columns"] = columns_;
  j["rows"] = rows_;
  auto checks = nlohmann::json::array();
  for (const auto& c : checks_) {
    checks.push_back({{"name", c.name},
                      {"kind", kind_name(c.kind)},
                      {"measured", json_number(c.measured)},
                      {"target", json_number(c.target)},
                      {"tolerance", json_number(c.tolerance)},
                      {"verdict", c.pass ? "pass" : "fail"}});
  }
  j["checks"] = checks;
  return j;
}

ExperimentParams::ExperimentParams(Config c) : config_(std::move(c)) {
  for (const auto& [k, v] : config_.entries()) {
    if (k.rfind("tol.", 0) == 0) continue;
    if (!known_keys().count(k)) throw UsageError(fmt::format("unknown config key '{}'", k));
  }
}

const std::set<std::string>& ExperimentParams::known_keys() {
  static const std::set<std::string> keys{"seed", "nodes", "dim", "trials", "degree", "a",      "b",
                                          "q",    "q_coeffs", "alpha0", "alpha1", "beta0", "beta1", "modes"};
  return keys;
}

std::uint64_t ExperimentParams::seed() const {
  const long s = config_.get_int("seed", 1);
  if (s < 0) throw UsageError("seed must be nonnegative");
  return static_cast<std::uint64_t>(s);
}

std::size_t ExperimentParams::size_key(const char* key, std::size_t fallback) const {
  const long v = config_.get_int(key, static_cast<long>(fallback));
  if (v <= 0) throw UsageError(fmt::format("{} must be positive", key));
  return static_cast<std::size_t>(v);
}

std::size_t ExperimentParams::nodes(std::size_t fallback) const { return size_key("nodes", fallback); }
std::size_t ExperimentParams::dim(std::size_t fallback) const { return size_key("dim", fallback); }
std::size_t ExperimentParams::trials(std::size_t fallback) const { return size_key("trials", fallback); }
std::size_t ExperimentParams::degree(std::size_t fallback) const { return size_key("degree", fallback); }

double ExperimentParams::tolerance(const std::string& check, double fallback) const {
  const std::string key = "tol." + check;
  if (!config_.has(key)) return fallback;
  used_.insert(key);
  return config_.get_double(key, fallback);
}

void ExperimentParams::require_overrides_used() const {
  for (const auto& [k, v] : config_.entries()) {
    if (k.rfind("tol.", 0) == 0 && !used_.count(k)) {
      throw UsageError(fmt::format("tolerance override '{}' names no check of this experiment", k));
    }
  }
}

bool Checker::at_most(const std::string& name, double measured, double bound) {
  const double b = params_.tolerance(name, bound);
  const bool ok = measured <= b;
  report_.add({name, Check::Kind::AtMost, measured, b, 0.0, ok});
  return ok;
}

bool Checker::at_least(const std::string& name, double measured, double bound) {
  const double b = params_.tolerance(name, bound);
  const bool ok = measured >= b;
  report_.add({name, Check::Kind::AtLeast, measured, b, 0.0, ok});
  return ok;
}

bool Checker::near(const std::string& name, double measured, double target, double tol) {
  const double t = params_.tolerance(name, tol);
  const bool ok = std::abs(measured - target) <= t;
  report_.add({name, Check::Kind::Near, measured, target, t, ok});
  return ok;
}

bool Checker::holds(const std::string& name, bool condition) {
  report_.add({name, Check::Kind::Holds, condition ? 1.0 : 0.0, 1.0, 0.0, condition});
  return condition;
}

const ExperimentInfo& find_experiment(std::string_view name) {
  for (const auto& e : experiment_catalog()) {
    if (e.name == name) return e;
  }
  throw UsageError(fmt::format("unknown experiment '{}' (see `list`)", name));
}

ExperimentReport run_experiment(std::string_view name, const ExperimentParams& params) {
  const auto& e = find_experiment(name);
  auto report = e.run(params);
  params.require_overrides_used();
  return report;
}

}  // namespace oplab
