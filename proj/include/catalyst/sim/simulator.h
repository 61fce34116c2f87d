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

// Virtual-clock discrete-event simulation of one federated training run.
//
// Every client trains on the last model the server sent it; the k-th job of
// client c takes SampleDuration(profile, DeriveSeed(timing seed, {c, k}))
// virtual seconds (times slow_factor for slow clients) and its update is
// computed when the completion event is popped. Events are processed in
// (time, rank) order, ranks being handed out in creation order. Byzantine
// updates are transformed by the configured attack and, under a non-natural
// timing policy, held back and delivered right before or after the next
// honest update. Evaluation ticks at 0, eval_period, 2 eval_period, ... (and
// at `duration`) record accuracy of the current global model.

#ifndef CATALYST_SIM_SIMULATOR_H_
#define CATALYST_SIM_SIMULATOR_H_

#include <memory>
#include <vector>

#include "absl/status/statusor.h"
#include "catalyst/numeric/dataset.h"
#include "catalyst/numeric/model_vector.h"
#include "catalyst/server/event_log.h"
#include "catalyst/server/protocol.h"
#include "catalyst/sim/metrics.h"
#include "catalyst/sim/run_config.h"

namespace catalyst {

absl::StatusOr<std::unique_ptr<ServerProtocol>> MakeServer(
    const RunConfig& config, const std::vector<ClientShard>& shards,
    ModelVector initial_model);

struct RunResult {
  RunMetrics metrics;
  EventLog events;
};

// Loads the data and runs.
absl::StatusOr<RunResult> Run(const RunConfig& config);

// Runs on already prepared data (which must come from PrepareData on a
// config with the same dataset, client count and data seed).
absl::StatusOr<RunResult> Run(const RunConfig& config,
                              const PreparedData& data);

}  // namespace catalyst

#endif  // CATALYST_SIM_SIMULATOR_H_
