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

#ifndef CATALYST_SERVER_PROTOCOL_H_
#define CATALYST_SERVER_PROTOCOL_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "catalyst/numeric/model_vector.h"

namespace catalyst {

// A client's trained model as received by the server. `model_age` is the age
// the client claims to have trained on; servers that keep their own record
// of what they sent may ignore it.
struct ClientUpdate {
  int client_id = 0;
  int64_t model_age = 0;
  ModelVector weights;
};

// Global model dispatched to one client.
struct ModelSend {
  int client_id = 0;
  int64_t age = 0;
  ModelVector model;
};

// How the server classified an incoming update.
enum class UpdateKind {
  kDuplicate,  // second update for the same (client, age); ignored
  kFresh,      // computed on the current model, below the trigger
  kTrigger,    // fresh update that produced a new global model
  kLate,       // stale but inside the window; stored for later
  kStale,      // older than the window; weights dropped
  kDeferred,   // held back by a rate rule (Kardam)
  kRejected,   // dropped by a per-update filter (Kardam)
};

std::string_view UpdateKindName(UpdateKind kind);

struct ServerOutput {
  UpdateKind kind = UpdateKind::kFresh;
  // Age the server attributed to the update.
  int64_t model_age = 0;
  std::vector<ModelSend> sends;
  std::optional<int64_t> new_age;  // set when the global model changed
  size_t filtered = 0;             // updates rejected by this step
};

// Common event-driven interface of every server implementation, so the
// simulator can drive any of them.
class ServerProtocol {
 public:
  virtual ~ServerProtocol() = default;

  virtual std::string_view name() const = 0;

  // Initial broadcast of the starting model.
  virtual ServerOutput Start() = 0;

  // Processes one update. Protocol deviations are absorbed; only malformed
  // input (bad client id, wrong dimension) is an error.
  virtual absl::StatusOr<ServerOutput> OnUpdate(const ClientUpdate& update,
                                                uint64_t seed) = 0;

  virtual const ModelVector& global() const = 0;
  virtual int64_t age() const = 0;

  // Number of buffered updates per age (or per buffer), for the event log.
  virtual std::map<int64_t, size_t> PendingSizes() const = 0;
};

}  // namespace catalyst

#endif  // CATALYST_SERVER_PROTOCOL_H_
