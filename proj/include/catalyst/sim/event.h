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

#ifndef CATALYST_SIM_EVENT_H_
#define CATALYST_SIM_EVENT_H_

#include <cstdint>
#include <tuple>

namespace catalyst {

enum class SimEventKind {
  kClientDone,  // a client finished training and its update reaches the server
  kEvalTick,    // periodic evaluation of the global model
};

// Events are totally ordered by (time, rank); ranks are unique per run and
// assigned in creation order.
struct SimEvent {
  double time = 0.0;
  uint64_t rank = 0;
  SimEventKind kind = SimEventKind::kClientDone;
  int client_id = -1;
  int64_t model_age = 0;  // age of the model the client trained on
  uint64_t job = 0;       // per-client job counter

  friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

inline bool EventBefore(const SimEvent& a, const SimEvent& b) {
  return std::tie(a.time, a.rank) < std::tie(b.time, b.rank);
}

}  // namespace catalyst

#endif  // CATALYST_SIM_EVENT_H_
