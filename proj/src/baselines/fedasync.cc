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

#include "catalyst/baselines/fedasync.h"

#include <algorithm>

#include "absl/strings/str_format.h"
#include "catalyst/common/errors.h"

namespace catalyst {

FedAsyncState FedAsyncUpdate(const FedAsyncState& state,
                             const ClientUpdate& update) {
  const int64_t tau = std::max<int64_t>(0, state.age - update.model_age);
  const double s = state.mix_alpha / static_cast<double>(tau + 1);
  FedAsyncState next = state;
  next.global *= 1.0 - s;
  next.global.Axpy(s, update.weights);
  ++next.age;
  return next;
}

absl::StatusOr<FedAsyncServer> FedAsyncServer::Create(
    int num_clients, double mix_alpha, ModelVector initial_model) {
  if (num_clients < 1) return ConfigError("fedasync needs at least one client");
  if (!(mix_alpha > 0.0 && mix_alpha <= 1.0)) {
    return ConfigError(
        absl::StrFormat("mix_alpha must be in (0, 1], got %g", mix_alpha));
  }
  return FedAsyncServer(num_clients,
                        FedAsyncState{0, std::move(initial_model), mix_alpha});
}

ServerOutput FedAsyncServer::Start() {
  ServerOutput out;
  for (size_t c = 0; c < client_age_.size(); ++c) {
    out.sends.push_back({static_cast<int>(c), 0, state_.global});
  }
  return out;
}

absl::StatusOr<ServerOutput> FedAsyncServer::OnUpdate(
    const ClientUpdate& update, uint64_t /*seed*/) {
  const int c = update.client_id;
  if (c < 0 || static_cast<size_t>(c) >= client_age_.size()) {
    return UsageError(absl::StrFormat("unknown client id %d", c));
  }
  if (update.weights.size() != state_.global.size()) {
    return UsageError(absl::StrFormat(
        "update from client %d has dimension %d, global model has %d", c,
        update.weights.size(), state_.global.size()));
  }
  ClientUpdate recorded = update;
  recorded.model_age = client_age_[c];
  state_ = FedAsyncUpdate(state_, recorded);

  ServerOutput out;
  out.kind = UpdateKind::kTrigger;
  out.model_age = recorded.model_age;
  out.new_age = state_.age;
  client_age_[c] = state_.age;
  out.sends.push_back({c, state_.age, state_.global});
  return out;
}

}  // namespace catalyst
