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

#ifndef CATALYST_ADVERSARY_ATTACKS_H_
#define CATALYST_ADVERSARY_ATTACKS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "catalyst/numeric/dataset.h"
#include "catalyst/numeric/model.h"
#include "catalyst/numeric/model_vector.h"

namespace catalyst {

enum class AttackKind {
  kNone,
  kRandomPerturbation,  // global + N(0, sigma^2 I)
  kGradientInversion,   // global + scale * (honest - global)
  kBackdoor,            // honest training on a poisoned shard
};

// Where Byzantine updates are delivered relative to honest ones.
enum class TimingPolicy {
  kNatural,
  kJustBeforeHonest,
  kJustAfterHonest,
};

// Pixels stamped with `value`; stamped inputs should be classified as
// `target_label`.
struct TriggerPattern {
  std::vector<size_t> indices;
  double value = 1.0;
  int target_label = 0;
};

// size x size block at the top-left of a row-major image `width` pixels wide.
TriggerPattern CornerTrigger(size_t width, size_t size, double value,
                             int target_label);

struct AttackSpec {
  AttackKind kind = AttackKind::kNone;
  std::vector<int> byzantine_ids;
  double sigma = 0.1;
  double scale = -10.0;
  TriggerPattern trigger;
  double poison_fraction = 0.5;
  TimingPolicy timing = TimingPolicy::kNatural;
};

std::string AttackKindName(AttackKind kind);
std::string TimingPolicyName(TimingPolicy policy);

// Ids distinct and in range, |ids| <= floor((num_clients - 1) / 2), and the
// kind-specific parameters valid for a `feature_dim`-dimensional input.
absl::Status ValidateAttack(const AttackSpec& spec, int num_clients,
                            size_t feature_dim, int num_classes);

ModelVector RandomPerturbationUpdate(const ModelVector& global, double sigma,
                                     uint64_t seed);

ModelVector GradientInversionUpdate(const ModelVector& global,
                                    const ModelVector& honest, double scale);

// Writes the trigger into `features`.
void StampTrigger(const TriggerPattern& trigger, std::span<double> features);

// floor(fraction * n) examples, chosen by a seeded shuffle, get the trigger
// and the target label.
ClientShard PoisonShard(const ClientShard& shard,
                        const TriggerPattern& trigger, double fraction,
                        uint64_t seed);

// Fraction of triggered test inputs whose true label differs from the target
// that the model assigns to the target. Usage error on an empty test set or
// one holding only target-labelled examples.
absl::StatusOr<double> BackdoorAccuracy(const Model& model,
                                        const Dataset& test,
                                        const TriggerPattern& trigger);

}  // namespace catalyst

#endif  // CATALYST_ADVERSARY_ATTACKS_H_
