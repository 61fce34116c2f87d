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

// Kardam-style asynchronous filtering.
//
// For each client the server remembers the model it last sent (the point the
// client's gradient was taken at) and the pseudo-gradient g = sent - W of its
// previous update. A new update's empirical Lipschitz coefficient is
//   k = ||g - g_prev|| / ||sent - sent_prev||
// and the update passes when k is at most the (1 - gamma)-quantile of the
// coefficients of previously accepted updates. A client's first update always
// passes. A client that would contribute twice in a row is deferred until a
// different client contributes. Accepted updates are applied as
// G <- G - lr / (tau + 1) * g.

#ifndef CATALYST_BASELINES_KARDAM_H_
#define CATALYST_BASELINES_KARDAM_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "catalyst/numeric/model_vector.h"
#include "catalyst/server/protocol.h"

namespace catalyst {

struct KardamConfig {
  int num_clients = 0;
  double gamma = 0.1;
  size_t history_cap = 100;
  double lr = 1.0;
};

struct KardamClient {
  ModelVector sent;  // model the client is training on
  int64_t sent_age = 0;
  std::optional<ModelVector> prev_sent;
  std::optional<ModelVector> prev_gradient;
};

struct DeferredGradient {
  int client_id = 0;
  int64_t sent_age = 0;
  ModelVector gradient;
};

struct KardamState {
  ModelVector global;
  int64_t age = 0;
  std::vector<KardamClient> clients;
  std::deque<double> lipschitz_history;
  std::optional<int> last_contributor;
  std::vector<DeferredGradient> deferred;
};

KardamState InitKardam(const KardamConfig& config, ModelVector initial_model);

// (1 - gamma)-quantile by nearest rank; +inf for an empty history.
double LipschitzQuantile(const std::deque<double>& history, double gamma);

struct KardamStep {
  UpdateKind kind = UpdateKind::kTrigger;
  bool changed = false;  // the global model advanced
  std::optional<double> coefficient;
};

// Filters and possibly applies one update. The caller then sends the current
// global model back to the sender and records it via KardamRecordSend.
KardamStep KardamReceive(KardamState& state, const KardamConfig& config,
                         const ClientUpdate& update);

void KardamRecordSend(KardamState& state, int client_id);

class KardamServer : public ServerProtocol {
 public:
  static absl::StatusOr<KardamServer> Create(KardamConfig config,
                                             ModelVector initial_model);

  std::string_view name() const override { return "kardam"; }
  ServerOutput Start() override;
  absl::StatusOr<ServerOutput> OnUpdate(const ClientUpdate& update,
                                        uint64_t seed) override;
  const ModelVector& global() const override { return state_.global; }
  int64_t age() const override { return state_.age; }
  std::map<int64_t, size_t> PendingSizes() const override;

  const KardamState& state() const { return state_; }

 private:
  KardamServer(KardamConfig config, KardamState state)
      : config_(config), state_(std::move(state)) {}

  KardamConfig config_;
  KardamState state_;
};

}  // namespace catalyst

#endif  // CATALYST_BASELINES_KARDAM_H_
