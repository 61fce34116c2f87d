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

#ifndef CATALYST_BASELINES_BASGD_H_
#define CATALYST_BASELINES_BASGD_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "catalyst/numeric/model_vector.h"
#include "catalyst/server/protocol.h"

namespace catalyst {

// Buffered asynchronous aggregation: B = 2f + 1 buffers, client c always
// writes to buffer c mod B.
struct BasgdState {
  std::vector<std::vector<ModelVector>> buffers;

  explicit BasgdState(int num_buffers = 1) : buffers(num_buffers) {}
  int num_buffers() const { return static_cast<int>(buffers.size()); }
};

// Coordinate-wise median of equal-dimension vectors (even count: midpoint).
ModelVector CoordinateMedian(std::span<const ModelVector> vectors);

// Stores the update; once every buffer holds at least one model returns the
// coordinate-wise median of the buffer means and clears the buffers.
std::optional<ModelVector> BasgdReceive(BasgdState& state,
                                        const ClientUpdate& update);

class BasgdServer : public ServerProtocol {
 public:
  static absl::StatusOr<BasgdServer> Create(int num_clients, int num_buffers,
                                            ModelVector initial_model);

  std::string_view name() const override { return "basgd"; }
  ServerOutput Start() override;
  absl::StatusOr<ServerOutput> OnUpdate(const ClientUpdate& update,
                                        uint64_t seed) override;
  const ModelVector& global() const override { return global_; }
  int64_t age() const override { return age_; }
  // Keyed by buffer index.
  std::map<int64_t, size_t> PendingSizes() const override;

 private:
  BasgdServer(int num_clients, int num_buffers, ModelVector initial_model)
      : state_(num_buffers),
        global_(std::move(initial_model)),
        client_age_(num_clients, 0) {}

  BasgdState state_;
  ModelVector global_;
  int64_t age_ = 0;
  std::vector<int64_t> client_age_;
};

}  // namespace catalyst

#endif  // CATALYST_BASELINES_BASGD_H_
