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

#include "catalyst/sim/metrics.h"

#include <fstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "catalyst/common/errors.h"
#include "json.hpp"

namespace catalyst {

std::string MetricsToCsv(const RunMetrics& metrics) {
  std::string out = absl::StrCat(kMetricsCsvHeader, "\n");
  for (const MetricsRow& r : metrics.rows) {
    const std::string backdoor =
        r.backdoor_accuracy ? absl::StrFormat("%.6f", *r.backdoor_accuracy) : "";
    absl::StrAppendFormat(&out, "%.3f,%d,%.6f,%s,%d,%d\n", r.time, r.age,
                          r.accuracy, backdoor, r.aggregations, r.filtered);
  }
  return out;
}

std::string MetricsToJsonLines(const RunMetrics& metrics) {
  std::string out;
  for (const MetricsRow& r : metrics.rows) {
    nlohmann::ordered_json j;
    j["time"] = r.time;
    j["age"] = r.age;
    j["accuracy"] = r.accuracy;
    j["backdoor_accuracy"] =
        r.backdoor_accuracy ? nlohmann::ordered_json(*r.backdoor_accuracy)
                            : nlohmann::ordered_json(nullptr);
    j["aggregations"] = r.aggregations;
    j["filtered"] = r.filtered;
    absl::StrAppend(&out, j.dump(), "\n");
  }
  return out;
}

std::optional<double> TimeToAccuracy(const RunMetrics& metrics,
                                     double threshold) {
  for (const MetricsRow& r : metrics.rows) {
    if (r.accuracy >= threshold) return r.time;
  }
  return std::nullopt;
}

absl::Status WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) return UsageError(absl::StrCat("cannot open ", path, " for writing"));
  file << text;
  if (!file) return UsageError(absl::StrCat("failed writing ", path));
  return absl::OkStatus();
}

}  // namespace catalyst
