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

#ifndef CATALYST_SIM_RUN_CONFIG_H_
#define CATALYST_SIM_RUN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "catalyst/adversary/attacks.h"
#include "catalyst/numeric/dataset.h"
#include "catalyst/numeric/model.h"
#include "catalyst/numeric/partition.h"
#include "catalyst/robust/aggregate.h"
#include "catalyst/server/async_robust_server.h"
#include "catalyst/sim/client_profile.h"

namespace catalyst {

enum class ServerKind {
  kCatalyst,    // "catalyst-alg3"
  kFedAsync,    // "fedasync"
  kFedAvgSync,  // "fedavg-sync"
  kKardam,      // "kardam"
  kBasgd,       // "basgd"
  kFlameAsync,  // "flame-async": the robust server with K = 1
};

std::string ServerKindName(ServerKind kind);
absl::StatusOr<ServerKind> ParseServerKind(const std::string& name);

enum class DataSource { kSynthetic, kMnist };

struct DatasetSpec {
  DataSource source = DataSource::kSynthetic;
  // Synthetic blobs; a test_fraction share is held out.
  int num_classes = 10;
  size_t dim = 20;
  size_t num_examples = 2000;
  double separation = 3.0;
  double test_fraction = 0.1;
  // MNIST IDX files in `mnist_dir`; the first train_limit / test_limit
  // examples are used (0 keeps all).
  std::string mnist_dir = "data/mnist";
  size_t train_limit = 0;
  size_t test_limit = 0;

  PartitionMode partition = ShardsMode{2};
  // Every example of these labels goes to these clients.
  ReservedLabels exclusive;
};

struct TrainingSpec {
  ModelKind model = ModelKind::kLogistic;
  size_t hidden_dim = 0;
  double lr = 0.05;
  int local_epochs = 1;
  int local_steps = 0;  // > 0 overrides local_epochs
  int batch_size = 32;
};

struct ServerSpec {
  int f = 0;
  int window = 5;
  double alpha = 1.0;
  double eta = 1.0;
  int trigger_override = 0;
  bool rehabilitate = false;
  LateCorrection late_correction = LateCorrection::kSubtract;
  NoiseParams noise;
  double mix_alpha = 0.5;         // fedasync
  double kardam_gamma = 0.1;      // kardam
  double kardam_lr = 1.0;
  size_t kardam_history = 100;
};

struct Seeds {
  uint64_t data = 1;
  uint64_t timing = 2;
  uint64_t training = 3;
  uint64_t noise = 4;
};

struct RunConfig {
  ServerKind server = ServerKind::kCatalyst;
  int num_clients = 10;
  AttackSpec attack;
  DatasetSpec dataset;
  TrainingSpec training;
  ServerSpec server_params;
  ClientProfile profile;
  // Clients whose every compute time is multiplied by slow_factor.
  std::vector<int> slow_clients;
  double slow_factor = 5.0;
  double duration = 3000.0;
  double eval_period = 100.0;
  Seeds seeds;
};

// Checks everything that can be checked without loading data.
absl::Status ValidateRunConfig(const RunConfig& config);

// Server parameters for the robust server variants.
ServerConfig MakeServerConfig(const RunConfig& config);

struct PreparedData {
  Dataset train;
  Dataset test;
  std::vector<ClientShard> shards;
};

absl::StatusOr<PreparedData> PrepareData(const RunConfig& config);

}  // namespace catalyst

#endif  // CATALYST_SIM_RUN_CONFIG_H_
