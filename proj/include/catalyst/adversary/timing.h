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

#ifndef CATALYST_ADVERSARY_TIMING_H_
#define CATALYST_ADVERSARY_TIMING_H_

#include <span>
#include <vector>

#include "catalyst/adversary/attacks.h"
#include "catalyst/sim/event.h"

namespace catalyst {

// Moves every Byzantine client_done event next to the first honest
// client_done event at or after it (a Byzantine client cannot deliver before
// it has finished). Events sharing a target keep client-id order. Honest
// events and eval ticks keep their times; a Byzantine event with no later
// honest event stays where it is. The result is sorted and re-ranked
// 0, 1, 2, ... in the new order. `schedule` must be sorted by (time, rank).
std::vector<SimEvent> InjectTiming(std::span<const SimEvent> schedule,
                                   std::span<const int> byzantine_ids,
                                   TimingPolicy policy);

}  // namespace catalyst

#endif  // CATALYST_ADVERSARY_TIMING_H_
