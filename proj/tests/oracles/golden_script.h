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

#ifndef CATALYST_TESTS_ORACLES_GOLDEN_SCRIPT_H_
#define CATALYST_TESTS_ORACLES_GOLDEN_SCRIPT_H_

// Scripted 12-update session against the robust server (f = 1, K = 3,
// five clients) covering duplicate, fresh, trigger, late and stale updates.
// The expected event log is committed under tests/data.

#include <string>

#include "absl/status/statusor.h"

namespace catalyst::golden {

inline constexpr char kGoldenTraceFile[] = "golden_trace.jsonl";

// Runs the script and returns the JSON-lines event log. Fails if any of the
// protocol invariants (trigger exactness, window discipline, liveness) is
// broken along the way.
absl::StatusOr<std::string> RunGoldenScript();

}  // namespace catalyst::golden

#endif  // CATALYST_TESTS_ORACLES_GOLDEN_SCRIPT_H_
