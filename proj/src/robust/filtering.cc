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

#include "catalyst/robust/filtering.h"

#include "catalyst/common/errors.h"
#include "catalyst/robust/cosine_distance.h"

namespace catalyst {

absl::StatusOr<ClusterVerdict> Filter(std::span<const ModelVector> vectors) {
  if (vectors.size() < 2) {
    return UsageError("filtering needs at least two updates");
  }
  return HdbscanMajority(CosineDistanceMatrix(vectors),
                         MajorityClusterSize(vectors.size()));
}

}  // namespace catalyst
