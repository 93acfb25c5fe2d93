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

// oplab: run named experiments and write <name>.csv / <name>.json.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "oplab/config.hpp"
#include "oplab/errors.hpp"
#include "oplab/experiments.hpp"

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

int do_list() {
  for (const auto& e : oplab::experiment_catalog()) {
    std::cout << fmt::format("{:<22} {:<13} {}\n", e.name, e.module, e.description);
  }
  return 0;
}

struct RunArgs {
  std::string name;
  std::optional<long> seed, nodes, dim, trials, degree;
  std::string out = ".";
  std::string config;
  std::vector<std::string> sets;
};

int do_run(const RunArgs& args) {
  // Precedence: command line > config file > experiment defaults.
  oplab::Config file;
  if (!args.config.empty()) file = oplab::Config::load(args.config);
  oplab::Config cli;
  auto put = [&cli](const char* key, const std::optional<long>& v) {
    if (v) cli.set(key, std::to_string(*v));
  };
  put("seed", args.seed);
  put("nodes", args.nodes);
  put("dim", args.dim);
  put("trials", args.trials);
  put("degree", args.degree);
  for (const auto& kv : args.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw oplab::UsageError(fmt::format("--set expects KEY=VALUE, got '{}'", kv));
    cli.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  const oplab::ExperimentParams params(cli.over(file));
  const auto report = oplab::run_experiment(args.name, params);

  const std::filesystem::path dir(args.out);
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / (args.name + ".csv"), std::ios::binary);
    report.write_csv(csv);
    if (!csv) throw std::runtime_error("cannot write " + (dir / (args.name + ".csv")).string());
  }
  {
    std::ofstream json(dir / (args.name + ".json"), std::ios::binary);
    json << report.to_json().dump(2) << '\n';
    if (!json) throw std::runtime_error("cannot write " + (dir / (args.name + ".json")).string());
  }

  std::size_t failed = 0;
  for (const auto& c : report.checks()) {
    if (c.pass) continue;
    ++failed;
    std::cerr << fmt::format("FAIL {}: {} measured {:.6g}, target {:.6g}, tolerance {:.3g}\n", args.name, c.name,
                             c.measured, c.target, c.tolerance);
  }
  std::cout << fmt::format("{}: {}/{} checks passed\n", args.name, report.checks().size() - failed,
                           report.checks().size());
  return failed == 0 ? 0 : kExitChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oplab: operator-theory experiments"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List registered experiments");

  RunArgs args;
  auto* run = app.add_subcommand("run", "Run one experiment");
  run->add_option("name", args.name, "Experiment name")->required();
  run->add_option("--seed", args.seed, "Random seed");
  run->add_option("--nodes", args.nodes, "Quadrature nodes");
  run->add_option("--dim", args.dim, "Matrix dimension");
  run->add_option("--trials", args.trials, "Random trials");
  run->add_option("--degree", args.degree, "Truncation degree N");
  run->add_option("--out", args.out, "Output directory");
  run->add_option("--config", args.config, "key = value file");
  run->add_option("--set", args.sets, "Extra KEY=VALUE (e.g. tol.<check>=1e-6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*list) return do_list();
    return do_run(args);
  } catch (const oplab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
