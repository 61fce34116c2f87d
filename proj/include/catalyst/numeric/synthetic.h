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

#ifndef CATALYST_NUMERIC_SYNTHETIC_H_
#define CATALYST_NUMERIC_SYNTHETIC_H_

#include <cstdint>
#include <utility>

#include "absl/status/statusor.h"
#include "catalyst/numeric/dataset.h"

namespace catalyst {

// Unit-variance Gaussian blobs, one per class, whose means are pairwise at
// least `separation` apart. Labels are balanced (round robin) and the
// example order is shuffled.
absl::StatusOr<Dataset> MakeSynthetic(int num_classes, size_t dim, size_t n,
                                      double separation, uint64_t seed);

// Seeded shuffle-and-split; the second dataset holds round(test_fraction * n)
// examples.
std::pair<Dataset, Dataset> SplitTrainTest(const Dataset& data,
                                           double test_fraction,
                                           uint64_t seed);

}  // namespace catalyst

#endif  // CATALYST_NUMERIC_SYNTHETIC_H_
