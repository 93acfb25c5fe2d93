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

// Named, seeded desk-scale experiments. Each produces a table and a list of
// quantitative checks with verdicts.

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "oplab/config.hpp"
#include "oplab/random.hpp"

namespace oplab {

struct Check {
  enum class Kind { AtMost, AtLeast, Near, Holds };

  std::string name;
  Kind kind = Kind::AtMost;
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

class ExperimentReport {
 public:
  ExperimentReport() = default;
  ExperimentReport(std::string name, std::vector<std::string> columns);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }
  const std::vector<Check>& checks() const noexcept { return checks_; }
  bool passed() const;

  /// Cells are numbers (printed with 17 significant digits) or strings.
  struct Cell {
    Cell(double v);
    Cell(int v);
    Cell(long v);
    Cell(std::size_t v);
    Cell(const char* s) : text(s) {}
    Cell(std::string s) : text(std::move(s)) {}
    std::string text;
  };
  void row(std::vector<Cell> cells);

  void add(Check c) { checks_.push_back(std::move(c)); }

  /// Header line, then one line per row; '.' decimal point regardless of locale.
  void write_csv(std::ostream& out) const;
  nlohmann::json to_json() const;

 private:
  std::string name_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<Check> checks_;
};

/// Seed and size parameters plus any extra keys (SL problem data, tolerance
/// overrides written `tol.<check name>`).
class ExperimentParams {
 public:
  ExperimentParams() = default;
  explicit ExperimentParams(Config c);

  std::uint64_t seed() const;
  std::size_t nodes(std::size_t fallback) const;
  std::size_t dim(std::size_t fallback) const;
  std::size_t trials(std::size_t fallback) const;
  std::size_t degree(std::size_t fallback) const;
  const Config& config() const noexcept { return config_; }

  /// Substream for an experiment, keyed by its name.
  Rng rng(std::string_view experiment) const { return Rng(seed()).split(experiment); }

  /// Tolerance for a check, honouring a `tol.<name>` override.
  double tolerance(const std::string& check, double fallback) const;
  /// Throws UsageError for overrides that named no check.
  void require_overrides_used() const;

  static const std::set<std::string>& known_keys();

 private:
  std::size_t size_key(const char* key, std::size_t fallback) const;

  Config config_;
  mutable std::set<std::string> used_;
};

/// Helpers that evaluate and record a check.
class Checker {
 public:
  Checker(ExperimentReport& report, const ExperimentParams& params) : report_(report), params_(params) {}

  bool at_most(const std::string& name, double measured, double bound);
  bool at_least(const std::string& name, double measured, double bound);
  bool near(const std::string& name, double measured, double target, double tol);
  bool holds(const std::string& name, bool condition);

 private:
  ExperimentReport& report_;
  const ExperimentParams& params_;
};

struct ExperimentInfo {
  std::string name;
  std::string module;
  std::string description;
  std::function<ExperimentReport(const ExperimentParams&)> run;
};

const std::vector<ExperimentInfo>& experiment_catalog();
/// Throws UsageError for an unknown name.
const ExperimentInfo& find_experiment(std::string_view name);
ExperimentReport run_experiment(std::string_view name, const ExperimentParams& params);

}  // namespace oplab
