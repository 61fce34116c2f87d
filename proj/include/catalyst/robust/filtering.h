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

#ifndef CATALYST_ROBUST_FILTERING_H_
#define CATALYST_ROBUST_FILTERING_H_

#include <cstddef>
#include <span>

#include "absl/status/statusor.h"
#include "catalyst/numeric/model_vector.h"
#include "catalyst/robust/hdbscan.h"

namespace catalyst {

// floor(n / 2) + 1: any cluster of this size is a strict majority.
inline size_t MajorityClusterSize(size_t n) { return n / 2 + 1; }

// Cosine-distance HDBSCAN over `vectors` with a majority-sized minimum
// cluster. Callers pass model deltas (W - G) so that the angle measures the
// direction of each client's step. Needs at least two vectors.
absl::StatusOr<ClusterVerdict> Filter(std::span<const ModelVector> vectors);

}  // namespace catalyst

#endif  // CATALYST_ROBUST_FILTERING_H_
