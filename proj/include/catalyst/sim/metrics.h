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

#ifndef CATALYST_SIM_METRICS_H_
#define CATALYST_SIM_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"

namespace catalyst {

struct MetricsRow {
  double time = 0.0;
  int64_t age = 0;
  double accuracy = 0.0;
  std::optional<double> backdoor_accuracy;
  size_t aggregations = 0;
  size_t filtered = 0;

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

struct RunMetrics {
  std::vector<MetricsRow> rows;

  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

inline constexpr char kMetricsCsvHeader[] =
    "time,age,accuracy,backdoor_accuracy,aggregations,filtered";

// Header line plus one line per row; a missing backdoor accuracy is an empty
// field.
std::string MetricsToCsv(const RunMetrics& metrics);
std::string MetricsToJsonLines(const RunMetrics& metrics);

// Virtual time of the first row whose accuracy reaches `threshold`.
std::optional<double> TimeToAccuracy(const RunMetrics& metrics,
                                     double threshold);

absl::Status WriteTextFile(const std::string& path, const std::string& text);

}  // namespace catalyst

#endif  // CATALYST_SIM_METRICS_H_
