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

#ifndef CATALYST_BASELINES_FEDAVG_H_
#define CATALYST_BASELINES_FEDAVG_H_

#include <cstdint>
#include <map>
#include <span>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "catalyst/numeric/model_vector.h"
#include "catalyst/server/protocol.h"

namespace catalyst {

struct WeightedModel {
  ModelVector model;
  double weight = 0.0;
};

// sum_c w_c * W_c. Usage error unless the weights sum to 1 within 1e-9 and
// every model matches the global dimension.
absl::StatusOr<ModelVector> FedAvgRound(const ModelVector& global,
                                        std::span<const WeightedModel> updates);

// Synchronous rounds: the server waits for one update from every client,
// replaces the global model with their weighted average and broadcasts it.
class SyncFedAvgServer : public ServerProtocol {
 public:
  // `weights[c]` is client c's share d_c / d of the data.
  static absl::StatusOr<SyncFedAvgServer> Create(std::vector<double> weights,
                                                 ModelVector initial_model);

  std::string_view name() const override { return "fedavg-sync"; }
  ServerOutput Start() override;
  absl::StatusOr<ServerOutput> OnUpdate(const ClientUpdate& update,
                                        uint64_t seed) override;
  const ModelVector& global() const override { return global_; }
  int64_t age() const override { return age_; }
  std::map<int64_t, size_t> PendingSizes() const override;

 private:
  SyncFedAvgServer(std::vector<double> weights, ModelVector initial_model)
      : weights_(std::move(weights)),
        global_(std::move(initial_model)),
        client_age_(weights_.size(), 0) {}

  std::vector<double> weights_;
  ModelVector global_;
  int64_t age_ = 0;
  std::vector<int64_t> client_age_;
  std::map<int, ModelVector> round_;  // updates of the current round
};

}  // namespace catalyst

#endif  // CATALYST_BASELINES_FEDAVG_H_
