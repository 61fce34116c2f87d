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

#include "catalyst/cli/commands.h"

#include <filesystem>
#include <iostream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "catalyst/cli/config_file.h"
#include "catalyst/cli/mnist_fetch.h"
#include "catalyst/common/errors.h"
#include "catalyst/sim/sweep.h"
#include "json.hpp"

namespace catalyst {
namespace {

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status.message() << "\n";
  return ExitCodeFor(status);
}

absl::StatusOr<std::vector<double>> ParsePoints(const std::string& text) {
  std::vector<double> points;
  for (absl::string_view piece : absl::StrSplit(text, ',', absl::SkipWhitespace())) {
    double value = 0.0;
    if (!absl::SimpleAtod(absl::StripAsciiWhitespace(piece), &value)) {
      return ConfigError(absl::StrCat("--points: \"", piece, "\" is not a number"));
    }
    points.push_back(value);
  }
  if (points.empty()) return ConfigError("--points: at least one point is required");
  return points;
}

nlohmann::ordered_json FinalSummary(const RunConfig& config,
                                    const RunResult& result) {
  nlohmann::ordered_json final_row;
  if (!result.metrics.rows.empty()) {
    const MetricsRow& last = result.metrics.rows.back();
    final_row["time"] = last.time;
    final_row["age"] = last.age;
    final_row["main_accuracy"] = last.accuracy;
    final_row["backdoor_accuracy"] =
        last.backdoor_accuracy ? nlohmann::ordered_json(*last.backdoor_accuracy)
                               : nlohmann::ordered_json(nullptr);
    final_row["aggregations"] = last.aggregations;
    final_row["filtered"] = last.filtered;
  }
  nlohmann::ordered_json summary;
  summary["server"] = ServerKindName(config.server);
  summary["final"] = final_row;
  summary["rows"] = result.metrics.rows.size();
  summary["events"] = result.events.records().size();
  summary["config"] = RunConfigToJson(config);
  return summary;
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  return absl::IsInvalidArgument(status) ? kExitConfigError : kExitRuntimeError;
}

absl::Status WriteRunOutputs(const std::string& dir, const RunConfig& config,
                             const RunResult& result) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return UsageError(absl::StrCat("cannot create ", dir, ": ", ec.message()));
  CATALYST_RETURN_IF_ERROR(
      WriteTextFile(dir + "/metrics.csv", MetricsToCsv(result.metrics)));
  CATALYST_RETURN_IF_ERROR(
      WriteTextFile(dir + "/metrics.jsonl", MetricsToJsonLines(result.metrics)));
  CATALYST_RETURN_IF_ERROR(result.events.WriteTo(dir + "/events.jsonl"));
  return WriteTextFile(dir + "/summary.json",
                       FinalSummary(config, result).dump(2) + "\n");
}

int CmdRun(const std::string& config_path, const std::string& out_dir) {
  auto config = LoadRunConfig(config_path);
  if (!config.ok()) return Fail(config.status());
  auto result = Run(*config);
  if (!result.ok()) return Fail(result.status());
  if (absl::Status s = WriteRunOutputs(out_dir, *config, *result); !s.ok()) {
    return Fail(s);
  }
  const MetricsRow& last = result->metrics.rows.back();
  std::cout << absl::StrFormat("%s: t=%.1f age=%d accuracy=%.4f",
                               ServerKindName(config->server), last.time,
                               last.age, last.accuracy);
  if (last.backdoor_accuracy) {
    std::cout << absl::StrFormat(" backdoor_accuracy=%.4f", *last.backdoor_accuracy);
  }
  std::cout << "\n";
  return kExitOk;
}

int CmdSweep(const std::string& config_path, const std::string& axis_name,
             const std::string& points_text, int repeats,
             const std::string& seed_mode_name, const std::string& out_dir) {
  auto config = LoadRunConfig(config_path);
  if (!config.ok()) return Fail(config.status());
  auto axis = ParseSweepAxis(axis_name);
  if (!axis.ok()) return Fail(axis.status());
  auto points = ParsePoints(points_text);
  if (!points.ok()) return Fail(points.status());
  auto seed_mode = ParseSeedMode(seed_mode_name);
  if (!seed_mode.ok()) return Fail(seed_mode.status());

  auto write_run = [&](const SweepRun& run) -> absl::Status {
    const std::string dir = absl::StrFormat("%s/%s=%g/repeat_%d", out_dir,
                                            SweepAxisName(*axis), run.point,
                                            run.repeat);
    CATALYST_RETURN_IF_ERROR(WriteRunOutputs(dir, run.config, run.result));
    std::cout << absl::StrFormat("%s=%g repeat %d: accuracy=%.4f\n",
                                 SweepAxisName(*axis), run.point, run.repeat,
                                 run.result.metrics.rows.back().accuracy);
    return absl::OkStatus();
  };
  auto runs = Sweep(*config, *axis, *points, repeats, *seed_mode, write_run);
  if (!runs.ok()) return Fail(runs.status());
  if (absl::Status s = WriteTextFile(out_dir + "/sweep_summary.csv",
                                     SweepSummaryCsv(*axis, *runs));
      !s.ok()) {
    return Fail(s);
  }
  return kExitOk;
}

int CmdFetchMnist(const std::string& out_dir) {
  FetchOptions options;
  options.offline = OfflineFromEnvironment();
  auto report = FetchMnist(out_dir, options);
  if (!report.ok()) {
    std::cerr << "error: " << report.status().message() << "\n";
    return kExitRuntimeError;
  }
  for (const std::string& name : report->present) {
    std::cout << "present: " << out_dir << "/" << name << "\n";
  }
  for (const std::string& name : report->downloaded) {
    std::cout << "downloaded: " << out_dir << "/" << name << "\n";
  }
  return kExitOk;
}

}  // namespace catalyst
