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

#include "catalyst/robust/clip_bound.h"

#include <algorithm>

#include "absl/strings/str_format.h"
#include "catalyst/common/errors.h"

namespace catalyst {

ClipBound ClipBound::Select(std::span<const size_t> indices) const {
  ClipBound out;
  out.bound = bound;
  out.distances.reserve(indices.size());
  for (size_t i : indices) out.distances.push_back(distances[i]);
  return out;
}

double Median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

absl::StatusOr<ClipBound> ComputeClipBound(const ModelVector& global,
                                           std::span<const ModelVector> updates) {
  if (updates.empty()) return UsageError("clip bound needs at least one update");
  ClipBound out;
  out.distances.reserve(updates.size());
  for (size_t i = 0; i < updates.size(); ++i) {
    if (updates[i].size() != global.size()) {
      return UsageError(absl::StrFormat(
          "update %d has dimension %d, global model has %d", i,
          updates[i].size(), global.size()));
    }
    out.distances.push_back(Distance(updates[i], global));
  }
  out.bound = Median(out.distances);
  return out;
}

}  // namespace catalyst
