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

#include "catalyst/sim/sweep.h"

#include <cmath>
#include <map>
#include <optional>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "catalyst/common/errors.h"
#include "catalyst/common/random.h"

namespace catalyst {
namespace {

struct Moments {
  double mean = 0.0;
  double std = 0.0;
};

Moments Summarize(const std::vector<double>& values) {
  Moments m;
  if (values.empty()) return m;
  for (double v : values) m.mean += v;
  m.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    m.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return m;
}

}  // namespace

std::string SweepAxisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kNumClients:
      return "num_clients";
    case SweepAxis::kByzFraction:
      return "byz_fraction";
    case SweepAxis::kStdMultiplier:
      return "std_multiplier";
  }
  return "unknown";
}

absl::StatusOr<SweepAxis> ParseSweepAxis(const std::string& name) {
  for (SweepAxis axis : {SweepAxis::kNumClients, SweepAxis::kByzFraction,
                         SweepAxis::kStdMultiplier}) {
    if (SweepAxisName(axis) == name) return axis;
  }
  return ConfigError(absl::StrCat(
      "unknown sweep axis \"", name,
      "\" (expected num_clients, byz_fraction or std_multiplier)"));
}

std::string SeedModeName(SeedMode mode) {
  switch (mode) {
    case SeedMode::kIndependent:
      return "independent";
    case SeedMode::kSharedPoints:
      return "shared-points";
    case SeedMode::kFixed:
      return "fixed";
  }
  return "unknown";
}

absl::StatusOr<SeedMode> ParseSeedMode(const std::string& name) {
  for (SeedMode mode :
       {SeedMode::kIndependent, SeedMode::kSharedPoints, SeedMode::kFixed}) {
    if (SeedModeName(mode) == name) return mode;
  }
  return ConfigError(absl::StrCat(
      "unknown seed mode \"", name,
      "\" (expected independent, shared-points or fixed)"));
}

Seeds SweepSeeds(const Seeds& base, SeedMode mode, size_t point_index,
                 int repeat) {
  if (mode == SeedMode::kFixed) return base;
  const uint64_t p = mode == SeedMode::kIndependent ? point_index : 0;
  const uint64_t r = static_cast<uint64_t>(repeat);
  if (p == 0 && r == 0) return base;
  return Seeds{DeriveSeed(base.data, {p, r}), DeriveSeed(base.timing, {p, r}),
               DeriveSeed(base.training, {p, r}),
               DeriveSeed(base.noise, {p, r})};
}

absl::StatusOr<RunConfig> ApplySweepPoint(const RunConfig& base,
                                          SweepAxis axis, double point) {
  RunConfig config = base;
  switch (axis) {
    case SweepAxis::kNumClients: {
      if (point < 1 || point != std::floor(point)) {
        return ConfigError(absl::StrFormat(
            "num_clients point must be a positive integer, got %g", point));
      }
      config.num_clients = static_cast<int>(point);
      break;
    }
    case SweepAxis::kByzFraction: {
      if (!(point >= 0.0 && point < 0.5)) {
        return ConfigError(absl::StrFormat(
            "byz_fraction point must be in [0, 0.5), got %g", point));
      }
      const int f = static_cast<int>(
          std::lround(point * static_cast<double>(config.num_clients)));
      config.server_params.f = f;
      config.attack.byzantine_ids.clear();
      for (int c = 0; c < f; ++c) config.attack.byzantine_ids.push_back(c);
      break;
    }
    case SweepAxis::kStdMultiplier:
      if (!(point >= 0.0)) {
        return ConfigError(absl::StrFormat(
            "std_multiplier point must be >= 0, got %g", point));
      }
      config.profile.compute_std = base.profile.compute_std * point;
      break;
  }
  CATALYST_RETURN_IF_ERROR(ValidateRunConfig(config));
  return config;
}

absl::StatusOr<std::vector<SweepRun>> Sweep(const RunConfig& base,
                                            SweepAxis axis,
                                            std::span<const double> points,
                                            int repeats, SeedMode seed_mode,
                                            const SweepCallback& on_run) {
  if (points.empty()) return ConfigError("sweep needs at least one point");
  if (repeats < 1) return ConfigError("sweep needs repeats >= 1");
  // Validate the whole grid before running anything.
  std::vector<RunConfig> configs;
  for (double point : points) {
    CATALYST_ASSIGN_OR_RETURN(RunConfig config,
                              ApplySweepPoint(base, axis, point));
    configs.push_back(std::move(config));
  }
  std::vector<SweepRun> runs;
  for (size_t p = 0; p < points.size(); ++p) {
    for (int r = 0; r < repeats; ++r) {
      SweepRun run;
      run.point_index = p;
      run.point = points[p];
      run.repeat = r;
      run.config = configs[p];
      run.config.seeds = SweepSeeds(base.seeds, seed_mode, p, r);
      CATALYST_ASSIGN_OR_RETURN(run.result, Run(run.config));
      if (on_run) CATALYST_RETURN_IF_ERROR(on_run(run));
      runs.push_back(std::move(run));
    }
  }
  return runs;
}

std::string SweepSummaryCsv(SweepAxis axis, std::span<const SweepRun> runs) {
  std::string out = absl::StrCat(
      SweepAxisName(axis),
      ",runs,accuracy_mean,accuracy_std,backdoor_accuracy_mean,"
      "backdoor_accuracy_std,age_mean\n");
  std::map<size_t, std::vector<const SweepRun*>> by_point;
  for (const SweepRun& run : runs) by_point[run.point_index].push_back(&run);
  for (const auto& [index, group] : by_point) {
    std::vector<double> accuracy;
    std::vector<double> backdoor;
    std::vector<double> age;
    for (const SweepRun* run : group) {
      if (run->result.metrics.rows.empty()) continue;
      const MetricsRow& last = run->result.metrics.rows.back();
      accuracy.push_back(last.accuracy);
      if (last.backdoor_accuracy) backdoor.push_back(*last.backdoor_accuracy);
      age.push_back(static_cast<double>(last.age));
    }
    const Moments acc = Summarize(accuracy);
    std::string bd = ",";
    if (!backdoor.empty()) {
      const Moments b = Summarize(backdoor);
      bd = absl::StrFormat("%.6f,%.6f", b.mean, b.std);
    }
    absl::StrAppendFormat(&out, "%g,%d,%.6f,%.6f,%s,%.3f\n", group[0]->point,
                          group.size(), acc.mean, acc.std, bd,
                          Summarize(age).mean);
  }
  return out;
}

}  // namespace catalyst
