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

// JSON run configuration.
//
// Every object accepts only the keys listed below; omitted keys keep the
// defaults of RunConfig. Errors are configuration errors naming the field.
//
//   server: "catalyst-alg3" | "fedasync" | "fedavg-sync" | "kardam" |
//           "basgd" | "flame-async"
//   num_clients, duration, eval_period, slow_clients: [int], slow_factor
//   seeds: {data, timing, training, noise}
//   dataset: {source: "synthetic" | "mnist", num_classes, dim, num_examples,
//             separation, test_fraction, mnist_dir, train_limit, test_limit,
//             partition: {mode: "iid" | "shards" | "dirichlet",
//                         shards_per_client, beta},
//             exclusive: {clients: [int], labels: [int]}}
//   training: {model: "logistic" | "mlp", hidden_dim, lr, local_epochs,
//              local_steps, batch_size}
//   server_params: {f, window, alpha, eta, trigger, rehabilitate,
//                   late_correction: "subtract" (default) | "descent",
//                   noise: {enabled, epsilon, delta}, mix_alpha,
//                   kardam_gamma, kardam_lr, kardam_history}
//   attack: {kind: "none" | "random_perturbation" | "gradient_inversion" |
//                  "backdoor",
//            byzantine_ids: [int] | num_byzantine: int, sigma, scale,
//            poison_fraction, timing: "natural" | "just_before_honest" |
//                                     "just_after_honest",
//            trigger: {size, value, target_label, image_width}}
//   profile: {compute_mean, compute_std}

#ifndef CATALYST_CLI_CONFIG_FILE_H_
#define CATALYST_CLI_CONFIG_FILE_H_

#include <string>

#include "absl/status/statusor.h"
#include "catalyst/sim/run_config.h"
#include "json.hpp"

namespace catalyst {

absl::StatusOr<RunConfig> ParseRunConfig(const nlohmann::json& json);
absl::StatusOr<RunConfig> ParseRunConfigText(const std::string& text);
absl::StatusOr<RunConfig> LoadRunConfig(const std::string& path);

// Fully resolved configuration; parses back to an equivalent RunConfig.
nlohmann::ordered_json RunConfigToJson(const RunConfig& config);

}  // namespace catalyst

#endif  // CATALYST_CLI_CONFIG_FILE_H_
