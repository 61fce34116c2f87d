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

#ifndef CATALYST_NUMERIC_PARTITION_H_
#define CATALYST_NUMERIC_PARTITION_H_

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "catalyst/numeric/dataset.h"

namespace catalyst {

struct IidMode {};
struct DirichletMode {
  double beta = 0.5;
};
// Label-sorted data cut into num_clients * shards_per_client equal shards,
// dealt out at random.
struct ShardsMode {
  int shards_per_client = 2;
};
using PartitionMode = std::variant<IidMode, DirichletMode, ShardsMode>;

std::string PartitionModeName(const PartitionMode& mode);

// Routes every example of `labels` to `clients` (split IID among them); the
// rest of the data goes to the remaining clients under the chosen mode.
struct ReservedLabels {
  std::vector<int> clients;
  std::vector<int> labels;
};

// Example indices per client. Disjoint, exhaustive, no client left empty,
// deterministic per seed.
absl::StatusOr<std::vector<std::vector<size_t>>> PartitionIndices(
    const Dataset& data, int num_clients, const PartitionMode& mode,
    uint64_t seed, const ReservedLabels& reserved = {});

// Shards with weights d_c / d.
absl::StatusOr<std::vector<ClientShard>> Partition(
    const Dataset& data, int num_clients, const PartitionMode& mode,
    uint64_t seed, const ReservedLabels& reserved = {});

}  // namespace catalyst

#endif  // CATALYST_NUMERIC_PARTITION_H_
