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

#include "catalyst/robust/aggregate.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "absl/strings/str_format.h"
#include "catalyst/common/errors.h"
#include "catalyst/common/random.h"

namespace catalyst {

absl::StatusOr<double> NoiseMultiplier(const NoiseParams& noise) {
  if (!(noise.epsilon > 0.0) || !std::isfinite(noise.epsilon)) {
    return ConfigError(absl::StrFormat("noise epsilon must be > 0, got %g",
                                       noise.epsilon));
  }
  if (!(noise.delta > 0.0 && noise.delta < 1.0)) {
    return ConfigError(absl::StrFormat("noise delta must be in (0, 1), got %g",
                                       noise.delta));
  }
  return std::sqrt(2.0 * std::log(1.25 / noise.delta)) / noise.epsilon;
}

ModelVector ClipToward(const ModelVector& global, const ModelVector& update,
                       double distance, double bound) {
  if (distance <= 0.0 || distance <= bound) return update;
  ModelVector out = global;
  out.Axpy(bound / distance, update - global);
  return out;
}

absl::StatusOr<ModelVector> Aggregate(const ModelVector& global,
                                      const ClipBound& clip,
                                      const NoiseParams& noise,
                                      std::span<const ModelVector> benign,
                                      uint64_t seed) {
  if (benign.empty()) return UsageError("aggregate needs a benign update");
  if (clip.distances.size() != benign.size()) {
    return UsageError(absl::StrFormat(
        "%d clip distances for %d benign updates", clip.distances.size(),
        benign.size()));
  }
  // Averaging the deltas keeps G exact when every update equals G.
  ModelVector sum(global.size());
  for (size_t i = 0; i < benign.size(); ++i) {
    if (benign[i].size() != global.size()) {
      return UsageError(absl::StrFormat(
          "benign update %d has dimension %d, global model has %d", i,
          benign[i].size(), global.size()));
    }
    sum += ClipToward(global, benign[i], clip.distances[i], clip.bound) - global;
  }
  ModelVector out = global;
  out.Axpy(1.0 / static_cast<double>(benign.size()), sum);
  if (noise.enabled) {
    CATALYST_ASSIGN_OR_RETURN(const double lambda, NoiseMultiplier(noise));
    const double sigma = lambda * clip.bound;
    if (sigma > 0.0) {
      Rng rng = MakeRng(seed);
      std::normal_distribution<double> gauss(0.0, sigma);
      for (double& v : out.mutable_values()) v += gauss(rng);
    }
  }
  return out;
}

}  // namespace catalyst
