/*
 * Copyright 2026 The Catalyst Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// catalyst: run federated-learning simulations from a JSON config.
//
//   catalyst run --config <path> --out <dir>
//   catalyst sweep --config <path> --axis <name> --points <list>
//                  --repeats <n> --out <dir> [--seed-mode <mode>]
//   catalyst fetch-mnist --out <dir>

#include <string>

#include "CLI11.hpp"
#include "catalyst/cli/commands.h"
#include "catalyst/common/log.h"

int main(int argc, char** argv) {
  CLI::App app{"Asynchronous Byzantine-resilient federated learning simulator"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Log informational messages");

  std::string config_path;
  std::string out_dir;

  CLI::App* run = app.add_subcommand("run", "Run one simulation");
  run->add_option("--config", config_path, "JSON run configuration")->required();
  run->add_option("--out", out_dir, "Output directory")->required();

  std::string axis;
  std::string points;
  int repeats = 1;
  std::string seed_mode = "independent";
  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("--config", config_path, "JSON base configuration")->required();
  sweep->add_option("--axis", axis, "num_clients | byz_fraction | std_multiplier")
      ->required();
  sweep->add_option("--points", points, "Comma-separated axis values")->required();
  sweep->add_option("--repeats", repeats, "Runs per point")->check(CLI::PositiveNumber);
  sweep->add_option("--seed-mode", seed_mode,
                    "independent | shared-points | fixed");
  sweep->add_option("--out", out_dir, "Output directory")->required();

  CLI::App* fetch = app.add_subcommand(
      "fetch-mnist", "Download and verify the MNIST IDX files");
  fetch->add_option("--out", out_dir, "Target directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : catalyst::kExitConfigError;
  }
  catalyst::SetLogLevel(verbose ? catalyst::LogLevel::kInfo
                                : catalyst::LogLevel::kWarning);

  if (*run) return catalyst::CmdRun(config_path, out_dir);
  if (*sweep) {
    return catalyst::CmdSweep(config_path, axis, points, repeats, seed_mode,
                              out_dir);
  }
  return catalyst::CmdFetchMnist(out_dir);
}
