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

// Asynchronous Byzantine-resilient aggregation server.
//
// The server advances its global model once 2f+1 updates computed on the
// current model have arrived (the trigger). Updates computed on one of the
// previous K-1 models are kept and, at the next trigger, clustered together
// with the updates already processed for that age; their benign members are
// folded into the new model with a staleness-damped weight. Clients that send
// a late update immediately receive the current model; fresh clients wait
// (idle) until the next model exists.

#ifndef CATALYST_SERVER_ASYNC_ROBUST_SERVER_H_
#define CATALYST_SERVER_ASYNC_ROBUST_SERVER_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "catalyst/numeric/model_vector.h"
#include "catalyst/robust/aggregate.h"
#include "catalyst/server/protocol.h"

namespace catalyst {

// Sign of the late-update correction in
//   G_{a+1} = Wbar_a (+|-) sum_i sf(a, i) * (n_i / |C|) * eta * (Wbar_i - G_i).
enum class LateCorrection {
  kSubtract,   // "-": late corrections are subtracted (default)
  kDescent,    // "+": late benign deltas pull the model along their direction
};

struct ServerConfig {
  int f = 0;
  int window = 5;  // K
  double alpha = 1.0;
  double eta = 1.0;
  int num_clients = 0;
  // 0 selects max(2, 2f + 1).
  int trigger_override = 0;
  NoiseParams noise;
  // Lets fresh updates rejected at their own aggregation rejoin when a later
  // clustering of the same age accepts them.
  bool rehabilitate = false;
  LateCorrection late_correction = LateCorrection::kSubtract;

  int trigger() const;
};

// max(2, 2f + 1)
int DefaultTrigger(int f);

// num_clients >= 2f + 1, trigger <= num_clients, K >= 1, alpha and eta > 0.
absl::Status ValidateServerConfig(const ServerConfig& config);

// alpha / (a - i); usage error unless a > i and alpha > 0.
absl::StatusOr<double> Staleness(double alpha, int64_t a, int64_t i);

struct StoredUpdate {
  ClientUpdate update;
  // Whether the update was part of an aggregate for its age.
  bool accepted = false;
};

struct ServerState {
  int64_t age = 0;
  std::map<int64_t, ModelVector> global_history;  // G_i, last K ages
  std::map<int64_t, std::vector<ClientUpdate>> pending;
  std::map<int64_t, std::vector<StoredUpdate>> processed;
  std::map<int64_t, double> clip_bounds;  // S[i]
  std::vector<int64_t> age_client_models;
  std::set<std::pair<int, int64_t>> rcvd_model;
  std::set<int> idle_clients;

  const ModelVector& global() const { return global_history.at(age); }
};

bool operator==(const ClientUpdate& a, const ClientUpdate& b);
bool operator==(const StoredUpdate& a, const StoredUpdate& b);
bool operator==(const ServerState& a, const ServerState& b);

struct InitResult {
  ServerState state;
  ServerOutput output;
};

absl::StatusOr<InitResult> InitServer(const ServerConfig& config,
                                      const ModelVector& initial_model);

// Applies one update to `state`. Malformed updates (unknown client, wrong
// dimension) are rejected with a usage error and leave `state` untouched.
absl::StatusOr<ServerOutput> HandleUpdate(ServerState& state,
                                          const ServerConfig& config,
                                          const ClientUpdate& update,
                                          uint64_t seed);

struct NewGlobal {
  ModelVector model;
  size_t filtered = 0;
};

// The aggregation step run at a trigger: robust aggregates of the fresh age
// and of every windowed past age with pending updates, combined into
// G_{age+1}. Moves pending to processed, drops age - K + 1 and advances the
// age. Requires |pending[age]| >= 1.
absl::StatusOr<NewGlobal> ComputeNewGlobal(ServerState& state,
                                           const ServerConfig& config,
                                           uint64_t seed);

// ServerProtocol adapter.
class AsyncRobustServer : public ServerProtocol {
 public:
  // `name` labels the instance in logs ("flame-async" for the K = 1
  // variant).
  static absl::StatusOr<AsyncRobustServer> Create(
      ServerConfig config, ModelVector initial_model,
      std::string_view name = "catalyst-alg3");

  std::string_view name() const override { return name_; }
  ServerOutput Start() override;
  absl::StatusOr<ServerOutput> OnUpdate(const ClientUpdate& update,
                                        uint64_t seed) override;
  const ModelVector& global() const override { return state_.global(); }
  int64_t age() const override { return state_.age; }
  std::map<int64_t, size_t> PendingSizes() const override;

  const ServerState& state() const { return state_; }
  const ServerConfig& config() const { return config_; }

 private:
  AsyncRobustServer(ServerConfig config, InitResult init,
                    std::string_view name)
      : config_(std::move(config)),
        state_(std::move(init.state)),
        start_(std::move(init.output)),
        name_(name) {}

  ServerConfig config_;
  ServerState state_;
  ServerOutput start_;
  std::string_view name_;
};

}  // namespace catalyst

#endif  // CATALYST_SERVER_ASYNC_ROBUST_SERVER_H_
