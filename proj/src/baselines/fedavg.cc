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

#include "catalyst/baselines/fedavg.h"

#include <cmath>

#include "absl/strings/str_format.h"
#include "catalyst/common/errors.h"

namespace catalyst {

absl::StatusOr<ModelVector> FedAvgRound(
    const ModelVector& global, std::span<const WeightedModel> updates) {
  double total = 0.0;
  for (const WeightedModel& u : updates) total += u.weight;
  if (std::abs(total - 1.0) > 1e-9) {
    return UsageError(
        absl::StrFormat("fedavg weights sum to %.12g, expected 1", total));
  }
  ModelVector out(global.size());
  for (size_t i = 0; i < updates.size(); ++i) {
    if (updates[i].model.size() != global.size()) {
      return UsageError(absl::StrFormat(
          "update %d has dimension %d, global model has %d", i,
          updates[i].model.size(), global.size()));
    }
    out.Axpy(updates[i].weight, updates[i].model);
  }
  return out;
}

absl::StatusOr<SyncFedAvgServer> SyncFedAvgServer::Create(
    std::vector<double> weights, ModelVector initial_model) {
  if (weights.empty()) return ConfigError("fedavg needs at least one client");
  double total = 0.0;
  for (double w : weights) total += w;
  if (std::abs(total - 1.0) > 1e-9) {
    return ConfigError(
        absl::StrFormat("client weights sum to %.12g, expected 1", total));
  }
  return SyncFedAvgServer(std::move(weights), std::move(initial_model));
}

ServerOutput SyncFedAvgServer::Start() {
  ServerOutput out;
  for (size_t c = 0; c < weights_.size(); ++c) {
    out.sends.push_back({static_cast<int>(c), 0, global_});
  }
  return out;
}

absl::StatusOr<ServerOutput> SyncFedAvgServer::OnUpdate(
    const ClientUpdate& update, uint64_t /*seed*/) {
  const int c = update.client_id;
  if (c < 0 || static_cast<size_t>(c) >= weights_.size()) {
    return UsageError(absl::StrFormat("unknown client id %d", c));
  }
  if (update.weights.size() != global_.size()) {
    return UsageError(absl::StrFormat(
        "update from client %d has dimension %d, global model has %d", c,
        update.weights.size(), global_.size()));
  }
  ServerOutput out;
  out.model_age = client_age_[c];
  if (client_age_[c] != age_ || round_.contains(c)) {
    out.kind = UpdateKind::kDuplicate;
    return out;
  }
  round_.emplace(c, update.weights);
  if (round_.size() < weights_.size()) {
    out.kind = UpdateKind::kFresh;
    return out;
  }
  std::vector<WeightedModel> weighted;
  weighted.reserve(round_.size());
  for (auto& [client, model] : round_) {
    weighted.push_back({std::move(model), weights_[client]});
  }
  round_.clear();
  CATALYST_ASSIGN_OR_RETURN(global_, FedAvgRound(global_, weighted));
  ++age_;
  out.kind = UpdateKind::kTrigger;
  out.new_age = age_;
  for (size_t d = 0; d < weights_.size(); ++d) {
    client_age_[d] = age_;
    out.sends.push_back({static_cast<int>(d), age_, global_});
  }
  return out;
}

std::map<int64_t, size_t> SyncFedAvgServer::PendingSizes() const {
  if (round_.empty()) return {};
  return {{age_, round_.size()}};
}

}  // namespace catalyst
