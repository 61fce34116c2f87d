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

#ifndef CATALYST_ROBUST_CLIP_BOUND_H_
#define CATALYST_ROBUST_CLIP_BOUND_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "catalyst/numeric/model_vector.h"

namespace catalyst {

// Euclidean distances e_i = ||W_i - G|| of a batch of client models from the
// global model, and their median S (the clipping bound).
struct ClipBound {
  std::vector<double> distances;
  double bound = 0.0;

  // Distances restricted to `indices`, keeping the bound. Used to align the
  // distances with a filtered subset before aggregation.
  ClipBound Select(std::span<const size_t> indices) const;
};

// Exact median; an even count averages the two central order statistics.
double Median(std::vector<double> values);

absl::StatusOr<ClipBound> ComputeClipBound(const ModelVector& global,
                                           std::span<const ModelVector> updates);

}  // namespace catalyst

#endif  // CATALYST_ROBUST_CLIP_BOUND_H_
