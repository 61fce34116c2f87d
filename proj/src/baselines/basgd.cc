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

#include "catalyst/baselines/basgd.h"

#include <algorithm>

#include "absl/strings/str_format.h"
#include "catalyst/common/errors.h"
#include "catalyst/robust/clip_bound.h"

namespace catalyst {

ModelVector CoordinateMedian(std::span<const ModelVector> vectors) {
  if (vectors.empty()) return {};
  ModelVector out(vectors[0].size());
  std::vector<double> column(vectors.size());
  for (size_t j = 0; j < out.size(); ++j) {
    for (size_t i = 0; i < vectors.size(); ++i) column[i] = vectors[i][j];
    out[j] = Median(column);
  }
  return out;
}

std::optional<ModelVector> BasgdReceive(BasgdState& state,
                                        const ClientUpdate& update) {
  const int b = update.client_id % state.num_buffers();
  state.buffers[b].push_back(update.weights);
  for (const auto& buffer : state.buffers) {
    if (buffer.empty()) return std::nullopt;
  }
  std::vector<ModelVector> means;
  means.reserve(state.buffers.size());
  for (auto& buffer : state.buffers) {
    means.push_back(Mean(buffer));
    buffer.clear();
  }
  return CoordinateMedian(means);
}

absl::StatusOr<BasgdServer> BasgdServer::Create(int num_clients,
                                                int num_buffers,
                                                ModelVector initial_model) {
  if (num_clients < 1) return ConfigError("basgd needs at least one client");
  if (num_buffers < 1 || num_buffers > num_clients) {
    return ConfigError(absl::StrFormat(
        "basgd needs 1 <= B <= num_clients buffers, got B=%d for %d clients",
        num_buffers, num_clients));
  }
  return BasgdServer(num_clients, num_buffers, std::move(initial_model));
}

ServerOutput BasgdServer::Start() {
  ServerOutput out;
  for (size_t c = 0; c < client_age_.size(); ++c) {
    out.sends.push_back({static_cast<int>(c), 0, global_});
  }
  return out;
}

absl::StatusOr<ServerOutput> BasgdServer::OnUpdate(const ClientUpdate& update,
                                                   uint64_t /*seed*/) {
  const int c = update.client_id;
  if (c < 0 || static_cast<size_t>(c) >= client_age_.size()) {
    return UsageError(absl::StrFormat("unknown client id %d", c));
  }
  if (update.weights.size() != global_.size()) {
    return UsageError(absl::StrFormat(
        "update from client %d has dimension %d, global model has %d", c,
        update.weights.size(), global_.size()));
  }
  ServerOutput out;
  out.model_age = client_age_[c];
  out.kind = UpdateKind::kFresh;
  if (std::optional<ModelVector> next = BasgdReceive(state_, update)) {
    global_ = *std::move(next);
    ++age_;
    out.kind = UpdateKind::kTrigger;
    out.new_age = age_;
  }
  client_age_[c] = age_;
  out.sends.push_back({c, age_, global_});
  return out;
}

std::map<int64_t, size_t> BasgdServer::PendingSizes() const {
  std::map<int64_t, size_t> sizes;
  for (int b = 0; b < state_.num_buffers(); ++b) {
    if (!state_.buffers[b].empty()) sizes[b] = state_.buffers[b].size();
  }
  return sizes;
}

}  // namespace catalyst
