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

#ifndef CATALYST_BASELINES_FEDASYNC_H_
#define CATALYST_BASELINES_FEDASYNC_H_

#include <cstdint>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "catalyst/numeric/model_vector.h"
#include "catalyst/server/protocol.h"

namespace catalyst {

struct FedAsyncState {
  int64_t age = 0;
  ModelVector global;
  double mix_alpha = 0.5;
};

// s(tau) = mix_alpha / (tau + 1), tau = state.age - update.model_age
// (clamped at 0); G <- (1 - s) G + s W and the age advances. Every update is
// accepted.
FedAsyncState FedAsyncUpdate(const FedAsyncState& state,
                             const ClientUpdate& update);

// Mixes each update into the global model as it arrives and returns the new
// model to the sender.
class FedAsyncServer : public ServerProtocol {
 public:
  static absl::StatusOr<FedAsyncServer> Create(int num_clients,
                                               double mix_alpha,
                                               ModelVector initial_model);

  std::string_view name() const override { return "fedasync"; }
  ServerOutput Start() override;
  absl::StatusOr<ServerOutput> OnUpdate(const ClientUpdate& update,
                                        uint64_t seed) override;
  const ModelVector& global() const override { return state_.global; }
  int64_t age() const override { return state_.age; }
  std::map<int64_t, size_t> PendingSizes() const override { return {}; }

 private:
  FedAsyncServer(int num_clients, FedAsyncState state)
      : state_(std::move(state)), client_age_(num_clients, 0) {}

  FedAsyncState state_;
  std::vector<int64_t> client_age_;
};

}  // namespace catalyst

#endif  // CATALYST_BASELINES_FEDASYNC_H_
