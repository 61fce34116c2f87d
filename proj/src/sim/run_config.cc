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

#include "catalyst/sim/run_config.h"

#include <cmath>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "catalyst/common/errors.h"
#include "catalyst/common/random.h"
#include "catalyst/numeric/idx.h"
#include "catalyst/numeric/synthetic.h"

namespace catalyst {

std::string ServerKindName(ServerKind kind) {
  switch (kind) {
    case ServerKind::kCatalyst:
      return "catalyst-alg3";
    case ServerKind::kFedAsync:
      return "fedasync";
    case ServerKind::kFedAvgSync:
      return "fedavg-sync";
    case ServerKind::kKardam:
      return "kardam";
    case ServerKind::kBasgd:
      return "basgd";
    case ServerKind::kFlameAsync:
      return "flame-async";
  }
  return "unknown";
}

absl::StatusOr<ServerKind> ParseServerKind(const std::string& name) {
  for (ServerKind kind :
       {ServerKind::kCatalyst, ServerKind::kFedAsync, ServerKind::kFedAvgSync,
        ServerKind::kKardam, ServerKind::kBasgd, ServerKind::kFlameAsync}) {
    if (ServerKindName(kind) == name) return kind;
  }
  return ConfigError(absl::StrCat(
      "unknown server kind \"", name,
      "\" (expected catalyst-alg3, fedasync, fedavg-sync, kardam, basgd or "
      "flame-async)"));
}

ServerConfig MakeServerConfig(const RunConfig& config) {
  const ServerSpec& s = config.server_params;
  ServerConfig out;
  out.f = s.f;
  out.window = config.server == ServerKind::kFlameAsync ? 1 : s.window;
  out.alpha = s.alpha;
  out.eta = s.eta;
  out.num_clients = config.num_clients;
  out.trigger_override = s.trigger_override;
  out.noise = s.noise;
  out.rehabilitate = s.rehabilitate;
  out.late_correction = s.late_correction;
  return out;
}

absl::Status ValidateRunConfig(const RunConfig& config) {
  const int n = config.num_clients;
  if (n < 1) return ConfigError("num_clients must be >= 1");
  const int f = config.server_params.f;
  if (f < 0) return ConfigError("f must be >= 0");
  if (n < 2 * f + 1) {
    return ConfigError(absl::StrFormat(
        "f = %d requires at least 2f+1 = %d clients, got num_clients = %d", f,
        2 * f + 1, n));
  }
  if (config.server == ServerKind::kCatalyst ||
      config.server == ServerKind::kFlameAsync) {
    CATALYST_RETURN_IF_ERROR(ValidateServerConfig(MakeServerConfig(config)));
  }
  if (config.server == ServerKind::kFedAsync &&
      !(config.server_params.mix_alpha > 0.0 &&
        config.server_params.mix_alpha <= 1.0)) {
    return ConfigError("mix_alpha must be in (0, 1]");
  }
  if (config.server == ServerKind::kKardam &&
      !(config.server_params.kardam_gamma > 0.0 &&
        config.server_params.kardam_gamma < 1.0)) {
    return ConfigError("kardam_gamma must be in (0, 1)");
  }
  const DatasetSpec& d = config.dataset;
  const size_t feature_dim = d.source == DataSource::kMnist ? 784 : d.dim;
  const int num_classes = d.source == DataSource::kMnist ? 10 : d.num_classes;
  if (d.source == DataSource::kSynthetic) {
    if (d.num_classes < 2) return ConfigError("num_classes must be >= 2");
    if (d.dim < 1) return ConfigError("dim must be >= 1");
    if (d.num_examples < static_cast<size_t>(d.num_classes)) {
      return ConfigError("num_examples must be >= num_classes");
    }
    if (!(d.test_fraction > 0.0 && d.test_fraction < 1.0)) {
      return ConfigError("test_fraction must be in (0, 1)");
    }
  }
  CATALYST_RETURN_IF_ERROR(
      ValidateAttack(config.attack, n, feature_dim, num_classes));
  for (int c : d.exclusive.clients) {
    if (c < 0 || c >= n) {
      return ConfigError(absl::StrFormat("exclusive client %d out of range", c));
    }
  }
  for (int label : d.exclusive.labels) {
    if (label < 0 || label >= num_classes) {
      return ConfigError(
          absl::StrFormat("exclusive label %d out of range", label));
    }
  }
  const TrainingSpec& t = config.training;
  if (!(t.lr > 0.0)) return ConfigError("lr must be > 0");
  if (t.batch_size < 1) return ConfigError("batch_size must be >= 1");
  if (t.local_steps < 0) return ConfigError("local_steps must be >= 0");
  if (t.local_steps == 0 && t.local_epochs < 1) {
    return ConfigError("local_epochs must be >= 1 when local_steps is 0");
  }
  if (t.model == ModelKind::kMlp && t.hidden_dim < 1) {
    return ConfigError("mlp needs hidden_dim >= 1");
  }
  CATALYST_RETURN_IF_ERROR(ValidateProfile(config.profile));
  std::set<int> slow;
  for (int c : config.slow_clients) {
    if (c < 0 || c >= n) {
      return ConfigError(absl::StrFormat("slow client %d out of range", c));
    }
    if (!slow.insert(c).second) {
      return ConfigError(absl::StrFormat("slow client %d listed twice", c));
    }
  }
  if (!(config.slow_factor > 0.0)) return ConfigError("slow_factor must be > 0");
  if (!(config.duration >= 0.0) || !std::isfinite(config.duration)) {
    return ConfigError("duration must be finite and >= 0");
  }
  if (!(config.eval_period > 0.0)) return ConfigError("eval_period must be > 0");
  return absl::OkStatus();
}

absl::StatusOr<PreparedData> PrepareData(const RunConfig& config) {
  const DatasetSpec& d = config.dataset;
  PreparedData out;
  if (d.source == DataSource::kSynthetic) {
    CATALYST_ASSIGN_OR_RETURN(
        Dataset all, MakeSynthetic(d.num_classes, d.dim, d.num_examples,
                                   d.separation, DeriveSeed(config.seeds.data, {1})));
    auto [train, test] =
        SplitTrainTest(all, d.test_fraction, DeriveSeed(config.seeds.data, {2}));
    out.train = std::move(train);
    out.test = std::move(test);
  } else {
    const std::string dir = d.mnist_dir;
    CATALYST_ASSIGN_OR_RETURN(
        Dataset train, LoadIdx(dir + "/train-images-idx3-ubyte",
                               dir + "/train-labels-idx1-ubyte"));
    CATALYST_ASSIGN_OR_RETURN(
        Dataset test, LoadIdx(dir + "/t10k-images-idx3-ubyte",
                              dir + "/t10k-labels-idx1-ubyte"));
    out.train = d.train_limit > 0 ? train.Head(d.train_limit) : std::move(train);
    out.test = d.test_limit > 0 ? test.Head(d.test_limit) : std::move(test);
  }
  CATALYST_ASSIGN_OR_RETURN(
      out.shards, Partition(out.train, config.num_clients, d.partition,
                            DeriveSeed(config.seeds.data, {3}), d.exclusive));
  return out;
}

}  // namespace catalyst
