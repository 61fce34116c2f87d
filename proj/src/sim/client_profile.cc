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

#include "catalyst/sim/client_profile.h"

#include <cmath>
#include <random>

#include "absl/strings/str_format.h"
#include "catalyst/common/errors.h"
#include "catalyst/common/random.h"

namespace catalyst {

absl::Status ValidateProfile(const ClientProfile& profile) {
  if (!(profile.compute_mean > 0.0) || !std::isfinite(profile.compute_mean)) {
    return ConfigError(absl::StrFormat("compute_mean must be > 0, got %g",
                                       profile.compute_mean));
  }
  if (!(profile.compute_std >= 0.0) || !std::isfinite(profile.compute_std)) {
    return ConfigError(absl::StrFormat("compute_std must be >= 0, got %g",
                                       profile.compute_std));
  }
  return absl::OkStatus();
}

double SampleDuration(const ClientProfile& profile, uint64_t seed) {
  if (profile.compute_std == 0.0) return profile.compute_mean;
  Rng rng = MakeRng(seed);
  std::normal_distribution<double> gauss(profile.compute_mean,
                                         profile.compute_std);
  while (true) {
    const double d = gauss(rng);
    if (d > 0.0) return d;
  }
}

}  // namespace catalyst
