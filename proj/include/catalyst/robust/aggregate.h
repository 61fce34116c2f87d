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

#ifndef CATALYST_ROBUST_AGGREGATE_H_
#define CATALYST_ROBUST_AGGREGATE_H_

#include <cstdint>
#include <span>

#include "absl/status/statusor.h"
#include "catalyst/numeric/model_vector.h"
#include "catalyst/robust/clip_bound.h"

namespace catalyst {

struct NoiseParams {
  double epsilon = 0.0;
  double delta = 0.0;
  bool enabled = false;
};

// lambda = (1 / epsilon) * sqrt(2 ln(1.25 / delta)). Configuration error when
// epsilon <= 0 or delta is outside (0, 1).
absl::StatusOr<double> NoiseMultiplier(const NoiseParams& noise);

// G + (W - G) * min(1, bound / distance); a zero distance keeps W.
ModelVector ClipToward(const ModelVector& global, const ModelVector& update,
                       double distance, double bound);

// Clips every benign update toward `global`, averages them and, when noise is
// enabled, adds N(0, (lambda * bound)^2) to each coordinate. `clip.distances`
// must be aligned with `benign`.
absl::StatusOr<ModelVector> Aggregate(const ModelVector& global,
                                      const ClipBound& clip,
                                      const NoiseParams& noise,
                                      std::span<const ModelVector> benign,
                                      uint64_t seed);

}  // namespace catalyst

#endif  // CATALYST_ROBUST_AGGREGATE_H_
