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

#ifndef CATALYST_CLI_COMMANDS_H_
#define CATALYST_CLI_COMMANDS_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "catalyst/sim/run_config.h"
#include "catalyst/sim/simulator.h"

namespace catalyst {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitConfigError = 2;

// Configuration errors (InvalidArgument) map to 2, anything else to 1.
int ExitCodeFor(const absl::Status& status);

// metrics.csv, metrics.jsonl, events.jsonl and summary.json (final metrics
// plus the resolved configuration) in `dir`, created if needed.
absl::Status WriteRunOutputs(const std::string& dir, const RunConfig& config,
                             const RunResult& result);

int CmdRun(const std::string& config_path, const std::string& out_dir);

// `points` is a comma-separated list of numbers.
int CmdSweep(const std::string& config_path, const std::string& axis,
             const std::string& points, int repeats,
             const std::string& seed_mode, const std::string& out_dir);

int CmdFetchMnist(const std::string& out_dir);

}  // namespace catalyst

#endif  // CATALYST_CLI_COMMANDS_H_
