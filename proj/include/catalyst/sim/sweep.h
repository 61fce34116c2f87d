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

#ifndef CATALYST_SIM_SWEEP_H_
#define CATALYST_SIM_SWEEP_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "catalyst/sim/run_config.h"
#include "catalyst/sim/simulator.h"

namespace catalyst {

enum class SweepAxis {
  kNumClients,     // num_clients = point
  kByzFraction,    // f = round(point * num_clients), Byzantine ids 0..f-1
  kStdMultiplier,  // compute_std = point * base compute_std
};

std::string SweepAxisName(SweepAxis axis);
absl::StatusOr<SweepAxis> ParseSweepAxis(const std::string& name);

// How seeds vary across the (point, repeat) grid.
enum class SeedMode {
  kIndependent,   // every (point, repeat) gets its own seeds
  kSharedPoints,  // seeds depend on the repeat only
  kFixed,         // every run uses the base seeds
};

std::string SeedModeName(SeedMode mode);
absl::StatusOr<SeedMode> ParseSeedMode(const std::string& name);

// Seeds of run (point_index, repeat). The grid origin (0, 0) always keeps the
// base seeds, so a one-point one-repeat sweep equals a plain run.
Seeds SweepSeeds(const Seeds& base, SeedMode mode, size_t point_index,
                 int repeat);

// `base` with the axis set to `point`; validated.
absl::StatusOr<RunConfig> ApplySweepPoint(const RunConfig& base,
                                          SweepAxis axis, double point);

struct SweepRun {
  size_t point_index = 0;
  double point = 0.0;
  int repeat = 0;
  RunConfig config;
  RunResult result;
};

// Called after every finished run, e.g. to write its outputs.
using SweepCallback = std::function<absl::Status(const SweepRun&)>;

absl::StatusOr<std::vector<SweepRun>> Sweep(const RunConfig& base,
                                            SweepAxis axis,
                                            std::span<const double> points,
                                            int repeats, SeedMode seed_mode,
                                            const SweepCallback& on_run = {});

// One row per point:
// point,runs,accuracy_mean,accuracy_std,backdoor_accuracy_mean,
// backdoor_accuracy_std,age_mean (final-row values; sample std, 0 for one
// run; backdoor fields empty without a backdoor attack).
std::string SweepSummaryCsv(SweepAxis axis, std::span<const SweepRun> runs);

}  // namespace catalyst

#endif  // CATALYST_SIM_SWEEP_H_
