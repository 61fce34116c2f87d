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

#ifndef CATALYST_SIM_CLIENT_PROFILE_H_
#define CATALYST_SIM_CLIENT_PROFILE_H_

#include <cstdint>

#include "absl/status/status.h"

namespace catalyst {

// Per-job compute time, in virtual seconds: a normal distribution truncated
// to strictly positive values.
struct ClientProfile {
  double compute_mean = 100.0;
  double compute_std = 20.0;
};

absl::Status ValidateProfile(const ClientProfile& profile);

// Rejection-samples the truncated normal from a generator seeded with `seed`.
// A zero std returns the mean.
double SampleDuration(const ClientProfile& profile, uint64_t seed);

}  // namespace catalyst

#endif  // CATALYST_SIM_CLIENT_PROFILE_H_
