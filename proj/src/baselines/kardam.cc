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

#include "catalyst/baselines/kardam.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_format.h"
#include "catalyst/common/errors.h"

namespace catalyst {
namespace {

void Apply(KardamState& state, const KardamConfig& config,
           const DeferredGradient& g) {
  const int64_t tau = std::max<int64_t>(0, state.age - g.sent_age);
  state.global.Axpy(-config.lr / static_cast<double>(tau + 1), g.gradient);
  ++state.age;
  state.last_contributor = g.client_id;
}

}  // namespace

KardamState InitKardam(const KardamConfig& config, ModelVector initial_model) {
  KardamState state;
  state.clients.resize(config.num_clients);
  for (KardamClient& c : state.clients) c.sent = initial_model;
  state.global = std::move(initial_model);
  return state;
}

double LipschitzQuantile(const std::deque<double>& history, double gamma) {
  if (history.empty()) return std::numeric_limits<double>::infinity();
  std::vector<double> sorted(history.begin(), history.end());
  std::sort(sorted.begin(), sorted.end());
  const double rank = std::ceil((1.0 - gamma) * static_cast<double>(sorted.size()));
  const size_t index = static_cast<size_t>(std::max(1.0, rank)) - 1;
  return sorted[std::min(index, sorted.size() - 1)];
}

KardamStep KardamReceive(KardamState& state, const KardamConfig& config,
                         const ClientUpdate& update) {
  KardamClient& client = state.clients[update.client_id];
  ModelVector gradient = client.sent - update.weights;
  KardamStep step;

  bool accepted = true;
  if (client.prev_gradient.has_value()) {
    const double dx = Distance(client.sent, *client.prev_sent);
    const double dg = Distance(gradient, *client.prev_gradient);
    double k = 0.0;
    if (dx > 0.0) {
      k = dg / dx;
    } else if (dg > 0.0) {
      k = std::numeric_limits<double>::infinity();
    }
    step.coefficient = k;
    accepted = k <= LipschitzQuantile(state.lipschitz_history, config.gamma);
    if (accepted && std::isfinite(k)) {
      state.lipschitz_history.push_back(k);
      while (state.lipschitz_history.size() > config.history_cap) {
        state.lipschitz_history.pop_front();
      }
    }
  }
  client.prev_sent = client.sent;
  client.prev_gradient = gradient;
  if (!accepted) {
    step.kind = UpdateKind::kRejected;
    return step;
  }

  DeferredGradient pending{update.client_id, client.sent_age, std::move(gradient)};
  if (config.num_clients > 1 && state.last_contributor == update.client_id) {
    std::erase_if(state.deferred, [&](const DeferredGradient& d) {
      return d.client_id == update.client_id;
    });
    state.deferred.push_back(std::move(pending));
    step.kind = UpdateKind::kDeferred;
    return step;
  }
  Apply(state, config, pending);
  std::vector<DeferredGradient> waiting = std::move(state.deferred);
  state.deferred.clear();
  for (const DeferredGradient& d : waiting) {
    if (d.client_id == update.client_id) {
      state.deferred.push_back(d);
    } else {
      Apply(state, config, d);
    }
  }
  step.kind = UpdateKind::kTrigger;
  step.changed = true;
  return step;
}

void KardamRecordSend(KardamState& state, int client_id) {
  KardamClient& client = state.clients[client_id];
  client.sent = state.global;
  client.sent_age = state.age;
}

absl::StatusOr<KardamServer> KardamServer::Create(KardamConfig config,
                                                  ModelVector initial_model) {
  if (config.num_clients < 1) return ConfigError("kardam needs at least one client");
  if (!(config.gamma > 0.0 && config.gamma < 1.0)) {
    return ConfigError(
        absl::StrFormat("kardam gamma must be in (0, 1), got %g", config.gamma));
  }
  if (config.history_cap < 1 || !(config.lr > 0.0)) {
    return ConfigError("kardam needs history_cap >= 1 and lr > 0");
  }
  KardamState state = InitKardam(config, std::move(initial_model));
  return KardamServer(config, std::move(state));
}

ServerOutput KardamServer::Start() {
  ServerOutput out;
  for (int c = 0; c < config_.num_clients; ++c) {
    out.sends.push_back({c, 0, state_.global});
  }
  return out;
}

absl::StatusOr<ServerOutput> KardamServer::OnUpdate(const ClientUpdate& update,
                                                    uint64_t /*seed*/) {
  const int c = update.client_id;
  if (c < 0 || c >= config_.num_clients) {
    return UsageError(absl::StrFormat("unknown client id %d", c));
  }
  if (update.weights.size() != state_.global.size()) {
    return UsageError(absl::StrFormat(
        "update from client %d has dimension %d, global model has %d", c,
        update.weights.size(), state_.global.size()));
  }
  ServerOutput out;
  out.model_age = state_.clients[c].sent_age;
  const KardamStep step = KardamReceive(state_, config_, update);
  out.kind = step.kind;
  if (step.kind == UpdateKind::kRejected) out.filtered = 1;
  if (step.changed) out.new_age = state_.age;
  KardamRecordSend(state_, c);
  out.sends.push_back({c, state_.age, state_.global});
  return out;
}

std::map<int64_t, size_t> KardamServer::PendingSizes() const {
  if (state_.deferred.empty()) return {};
  return {{state_.age, state_.deferred.size()}};
}

}  // namespace catalyst
