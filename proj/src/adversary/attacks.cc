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

#include "catalyst/adversary/attacks.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "absl/strings/str_format.h"
#include "catalyst/common/errors.h"
#include "catalyst/common/random.h"

namespace catalyst {

TriggerPattern CornerTrigger(size_t width, size_t size, double value,
                             int target_label) {
  TriggerPattern trigger;
  trigger.value = value;
  trigger.target_label = target_label;
  for (size_t r = 0; r < size; ++r) {
    for (size_t c = 0; c < size; ++c) trigger.indices.push_back(r * width + c);
  }
  return trigger;
}

std::string AttackKindName(AttackKind kind) {
  switch (kind) {
    case AttackKind::kNone:
      return "none";
    case AttackKind::kRandomPerturbation:
      return "random_perturbation";
    case AttackKind::kGradientInversion:
      return "gradient_inversion";
    case AttackKind::kBackdoor:
      return "backdoor";
  }
  return "unknown";
}

std::string TimingPolicyName(TimingPolicy policy) {
  switch (policy) {
    case TimingPolicy::kNatural:
      return "natural";
    case TimingPolicy::kJustBeforeHonest:
      return "just_before_honest";
    case TimingPolicy::kJustAfterHonest:
      return "just_after_honest";
  }
  return "unknown";
}

absl::Status ValidateAttack(const AttackSpec& spec, int num_clients,
                            size_t feature_dim, int num_classes) {
  const size_t limit = static_cast<size_t>(std::max(0, (num_clients - 1) / 2));
  if (spec.byzantine_ids.size() > limit) {
    return ConfigError(absl::StrFormat(
        "%d Byzantine clients out of %d; at most floor((N-1)/2) = %d are "
        "tolerated since N must be at least 2f+1",
        spec.byzantine_ids.size(), num_clients, limit));
  }
  std::set<int> seen;
  for (int id : spec.byzantine_ids) {
    if (id < 0 || id >= num_clients) {
      return ConfigError(absl::StrFormat(
          "Byzantine id %d outside [0, %d)", id, num_clients));
    }
    if (!seen.insert(id).second) {
      return ConfigError(absl::StrFormat("Byzantine id %d listed twice", id));
    }
  }
  switch (spec.kind) {
    case AttackKind::kNone:
      break;
    case AttackKind::kRandomPerturbation:
      if (!(spec.sigma > 0.0)) {
        return ConfigError(absl::StrFormat(
            "random perturbation sigma must be > 0, got %g", spec.sigma));
      }
      break;
    case AttackKind::kGradientInversion:
      if (!std::isfinite(spec.scale)) {
        return ConfigError("gradient inversion scale must be finite");
      }
      break;
    case AttackKind::kBackdoor:
      if (!(spec.poison_fraction > 0.0 && spec.poison_fraction <= 1.0)) {
        return ConfigError(absl::StrFormat(
            "poison_fraction must be in (0, 1], got %g", spec.poison_fraction));
      }
      if (spec.trigger.indices.empty()) {
        return ConfigError("backdoor trigger has no pixels");
      }
      for (size_t i : spec.trigger.indices) {
        if (i >= feature_dim) {
          return ConfigError(absl::StrFormat(
              "trigger pixel %d outside feature dimension %d", i, feature_dim));
        }
      }
      if (spec.trigger.target_label < 0 ||
          spec.trigger.target_label >= num_classes) {
        return ConfigError(absl::StrFormat(
            "trigger target label %d outside [0, %d)",
            spec.trigger.target_label, num_classes));
      }
      break;
  }
  return absl::OkStatus();
}

ModelVector RandomPerturbationUpdate(const ModelVector& global, double sigma,
                                     uint64_t seed) {
  ModelVector out = global;
  if (!(sigma > 0.0)) return out;
  Rng rng = MakeRng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  for (double& v : out.mutable_values()) v += gauss(rng);
  return out;
}

ModelVector GradientInversionUpdate(const ModelVector& global,
                                    const ModelVector& honest, double scale) {
  ModelVector out = global;
  out.Axpy(scale, honest - global);
  return out;
}

void StampTrigger(const TriggerPattern& trigger, std::span<double> features) {
  for (size_t i : trigger.indices) features[i] = trigger.value;
}

ClientShard PoisonShard(const ClientShard& shard,
                        const TriggerPattern& trigger, double fraction,
                        uint64_t seed) {
  ClientShard out = shard;
  const size_t n = out.data.size();
  const size_t count = std::min(
      n, static_cast<size_t>(std::floor(fraction * static_cast<double>(n))));
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng = MakeRng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  for (size_t k = 0; k < count; ++k) {
    StampTrigger(trigger, out.data.mutable_features(order[k]));
    out.data.set_label(order[k], trigger.target_label);
  }
  return out;
}

absl::StatusOr<double> BackdoorAccuracy(const Model& model,
                                        const Dataset& test,
                                        const TriggerPattern& trigger) {
  if (test.empty()) return UsageError("backdoor accuracy on an empty test set");
  std::vector<double> stamped(test.feature_dim());
  size_t total = 0;
  size_t hits = 0;
  for (size_t i = 0; i < test.size(); ++i) {
    if (test.label(i) == trigger.target_label) continue;
    const auto features = test.features(i);
    std::copy(features.begin(), features.end(), stamped.begin());
    StampTrigger(trigger, stamped);
    ++total;
    if (model.Predict(stamped) == trigger.target_label) ++hits;
  }
  if (total == 0) {
    return UsageError("test set holds only target-labelled examples");
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace catalyst
