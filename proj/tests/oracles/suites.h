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

#ifndef CATALYST_TESTS_ORACLES_SUITES_H_
#define CATALYST_TESTS_ORACLES_SUITES_H_

// Seeded batteries comparing the library against the brute-force oracles.
// Shared by the unit tests and the acceptance binary.

#include <cstdint>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace catalyst::suite {

// Distances may differ from the oracle by rounding only.
inline constexpr double kDistanceTolerance = 1e-12;

// `cases` random instances (2 <= n <= 8 vectors, 1 <= dim <= 16): clip
// distances and median, cosine distance matrix, cluster sets for a random
// minimum cluster size, and the majority verdict. Returns the first mismatch.
absl::Status PrimitiveSuite(int cases, uint64_t seed);

// Worst relative error ||analytic - fd|| / ||fd|| over `pairs` random
// (model, batch) pairs, half logistic and half MLP.
absl::StatusOr<double> GradientSuite(int pairs, uint64_t seed);

}  // namespace catalyst::suite

#endif  // CATALYST_TESTS_ORACLES_SUITES_H_
