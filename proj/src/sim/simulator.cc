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

#include "catalyst/sim/simulator.h"

#include <algorithm>
#include <queue>
#include <set>
#include <utility>

#include "absl/strings/str_format.h"
#include "catalyst/adversary/attacks.h"
#include "catalyst/baselines/basgd.h"
#include "catalyst/baselines/fedasync.h"
#include "catalyst/baselines/fedavg.h"
#include "catalyst/baselines/kardam.h"
#include "catalyst/common/errors.h"
#include "catalyst/common/random.h"
#include "catalyst/server/async_robust_server.h"
#include "catalyst/sim/client_profile.h"
#include "catalyst/sim/event.h"

namespace catalyst {
namespace {

// Tags separating the random streams derived from one seed.
constexpr uint64_t kInitTag = 4;
constexpr uint64_t kPoisonTag = 5;
constexpr uint64_t kPerturbTag = 6;
constexpr uint64_t kServerTag = 7;

struct Later {
  bool operator()(const SimEvent& a, const SimEvent& b) const {
    return EventBefore(b, a);
  }
};

struct ClientSlot {
  ModelVector model;
  int64_t age = 0;
  uint64_t jobs = 0;
};

class Simulation {
 public:
  Simulation(const RunConfig& config, const PreparedData& data,
             std::vector<ClientShard> shards, Model model_template,
             std::unique_ptr<ServerProtocol> server)
      : config_(config),
        data_(data),
        shards_(std::move(shards)),
        template_(std::move(model_template)),
        server_(std::move(server)),
        clients_(config.num_clients),
        byzantine_(config.attack.byzantine_ids.begin(),
                   config.attack.byzantine_ids.end()),
        slow_(config.slow_clients.begin(), config.slow_clients.end()) {}

  absl::StatusOr<RunResult> Execute() {
    Push({0.0, 0, SimEventKind::kEvalTick, -1, 0, 0});
    Dispatch(server_->Start(), 0.0);
    while (!queue_.empty()) {
      const SimEvent e = queue_.top();
      if (e.time > config_.duration) break;
      queue_.pop();
      if (e.kind == SimEventKind::kEvalTick) {
        CATALYST_RETURN_IF_ERROR(Evaluate(e.time));
        if (e.time < config_.duration) {
          const double next =
              std::min(e.time + config_.eval_period, config_.duration);
          Push({next, 0, SimEventKind::kEvalTick, -1, 0, 0});
        }
        continue;
      }
      CATALYST_ASSIGN_OR_RETURN(ClientUpdate update, ComputeUpdate(e));
      if (byzantine_.contains(e.client_id) &&
          config_.attack.timing != TimingPolicy::kNatural) {
        held_.push_back(std::move(update));
        continue;
      }
      std::sort(held_.begin(), held_.end(),
                [](const ClientUpdate& a, const ClientUpdate& b) {
                  return a.client_id < b.client_id;
                });
      if (config_.attack.timing == TimingPolicy::kJustBeforeHonest) {
        for (const ClientUpdate& h : held_) CATALYST_RETURN_IF_ERROR(Deliver(h, e.time));
      }
      CATALYST_RETURN_IF_ERROR(Deliver(update, e.time));
      if (config_.attack.timing == TimingPolicy::kJustAfterHonest) {
        for (const ClientUpdate& h : held_) CATALYST_RETURN_IF_ERROR(Deliver(h, e.time));
      }
      held_.clear();
    }
    return std::move(result_);
  }

 private:
  void Push(SimEvent e) {
    e.rank = next_rank_++;
    queue_.push(e);
  }

  void Schedule(int c, double now) {
    ClientSlot& slot = clients_[c];
    const uint64_t job = slot.jobs++;
    double duration = SampleDuration(
        config_.profile, DeriveSeed(config_.seeds.timing,
                                    {static_cast<uint64_t>(c), job}));
    if (slow_.contains(c)) duration *= config_.slow_factor;
    Push({now + duration, 0, SimEventKind::kClientDone, c, slot.age, job});
  }

  void Dispatch(const ServerOutput& out, double now) {
    for (const ModelSend& send : out.sends) {
      clients_[send.client_id].model = send.model;
      clients_[send.client_id].age = send.age;
      Schedule(send.client_id, now);
    }
  }

  absl::StatusOr<ModelVector> Train(int c, const ModelVector& start,
                                    uint64_t job) {
    const ClientShard& shard = shards_[c];
    const TrainingSpec& t = config_.training;
    const int steps = t.local_steps > 0
                          ? t.local_steps
                          : StepsForEpochs(shard.data.size(), t.batch_size,
                                           t.local_epochs);
    return LocalTrain(template_.WithParams(start), shard, t.lr, steps,
                      t.batch_size,
                      DeriveSeed(config_.seeds.training,
                                 {static_cast<uint64_t>(c), job}));
  }

  absl::StatusOr<ClientUpdate> ComputeUpdate(const SimEvent& e) {
    const int c = e.client_id;
    const ModelVector& start = clients_[c].model;
    ClientUpdate update{c, e.model_age, {}};
    if (!byzantine_.contains(c)) {
      CATALYST_ASSIGN_OR_RETURN(update.weights, Train(c, start, e.job));
      return update;
    }
    const AttackSpec& attack = config_.attack;
    switch (attack.kind) {
      case AttackKind::kRandomPerturbation:
        update.weights = RandomPerturbationUpdate(
            start, attack.sigma,
            DeriveSeed(config_.seeds.noise,
                       {kPerturbTag, static_cast<uint64_t>(c), e.job}));
        break;
      case AttackKind::kGradientInversion: {
        CATALYST_ASSIGN_OR_RETURN(ModelVector honest, Train(c, start, e.job));
        update.weights = GradientInversionUpdate(start, honest, attack.scale);
        break;
      }
      case AttackKind::kNone:
      case AttackKind::kBackdoor:
        // Backdoor clients train honestly on their poisoned shard.
        CATALYST_ASSIGN_OR_RETURN(update.weights, Train(c, start, e.job));
        break;
    }
    return update;
  }

  absl::Status Deliver(const ClientUpdate& update, double now) {
    const uint64_t seed =
        DeriveSeed(config_.seeds.noise, {kServerTag, deliveries_++});
    CATALYST_ASSIGN_OR_RETURN(ServerOutput out,
                              server_->OnUpdate(update, seed));
    if (out.new_age.has_value()) ++aggregations_;
    filtered_ += out.filtered;
    result_.events.Append({now, out.kind, update.client_id, out.model_age,
                           server_->PendingSizes(), server_->age()});
    Dispatch(out, now);
    return absl::OkStatus();
  }

  absl::Status Evaluate(double now) {
    const Model model = template_.WithParams(server_->global());
    MetricsRow row;
    row.time = now;
    row.age = server_->age();
    CATALYST_ASSIGN_OR_RETURN(row.accuracy,
                              catalyst::Evaluate(model, data_.test));
    if (config_.attack.kind == AttackKind::kBackdoor) {
      CATALYST_ASSIGN_OR_RETURN(
          row.backdoor_accuracy,
          BackdoorAccuracy(model, data_.test, config_.attack.trigger));
    }
    row.aggregations = aggregations_;
    row.filtered = filtered_;
    result_.metrics.rows.push_back(row);
    return absl::OkStatus();
  }

  const RunConfig& config_;
  const PreparedData& data_;
  std::vector<ClientShard> shards_;
  Model template_;
  std::unique_ptr<ServerProtocol> server_;
  std::vector<ClientSlot> clients_;
  std::set<int> byzantine_;
  std::set<int> slow_;
  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> queue_;
  uint64_t next_rank_ = 0;
  uint64_t deliveries_ = 0;
  std::vector<ClientUpdate> held_;
  size_t aggregations_ = 0;
  size_t filtered_ = 0;
  RunResult result_;
};

}  // namespace

absl::StatusOr<std::unique_ptr<ServerProtocol>> MakeServer(
    const RunConfig& config, const std::vector<ClientShard>& shards,
    ModelVector initial_model) {
  const ServerSpec& s = config.server_params;
  switch (config.server) {
    case ServerKind::kCatalyst:
    case ServerKind::kFlameAsync: {
      CATALYST_ASSIGN_OR_RETURN(
          AsyncRobustServer server,
          AsyncRobustServer::Create(
              MakeServerConfig(config), std::move(initial_model),
              config.server == ServerKind::kCatalyst ? "catalyst-alg3"
                                                     : "flame-async"));
      return std::make_unique<AsyncRobustServer>(std::move(server));
    }
    case ServerKind::kFedAsync: {
      CATALYST_ASSIGN_OR_RETURN(
          FedAsyncServer server,
          FedAsyncServer::Create(config.num_clients, s.mix_alpha,
                                 std::move(initial_model)));
      return std::make_unique<FedAsyncServer>(std::move(server));
    }
    case ServerKind::kFedAvgSync: {
      std::vector<double> weights;
      for (const ClientShard& shard : shards) weights.push_back(shard.weight);
      CATALYST_ASSIGN_OR_RETURN(
          SyncFedAvgServer server,
          SyncFedAvgServer::Create(std::move(weights), std::move(initial_model)));
      return std::make_unique<SyncFedAvgServer>(std::move(server));
    }
    case ServerKind::kKardam: {
      KardamConfig kc{config.num_clients, s.kardam_gamma, s.kardam_history,
                      s.kardam_lr};
      CATALYST_ASSIGN_OR_RETURN(
          KardamServer server,
          KardamServer::Create(kc, std::move(initial_model)));
      return std::make_unique<KardamServer>(std::move(server));
    }
    case ServerKind::kBasgd: {
      CATALYST_ASSIGN_OR_RETURN(
          BasgdServer server,
          BasgdServer::Create(config.num_clients, 2 * s.f + 1,
                              std::move(initial_model)));
      return std::make_unique<BasgdServer>(std::move(server));
    }
  }
  return ConfigError("unknown server kind");
}

absl::StatusOr<RunResult> Run(const RunConfig& config) {
  CATALYST_RETURN_IF_ERROR(ValidateRunConfig(config));
  CATALYST_ASSIGN_OR_RETURN(const PreparedData data, PrepareData(config));
  return Run(config, data);
}

absl::StatusOr<RunResult> Run(const RunConfig& config,
                              const PreparedData& data) {
  CATALYST_RETURN_IF_ERROR(ValidateRunConfig(config));
  if (data.shards.size() != static_cast<size_t>(config.num_clients)) {
    return ConfigError(absl::StrFormat(
        "prepared data has %d shards for %d clients", data.shards.size(),
        config.num_clients));
  }
  const ModelShape shape{
      data.train.feature_dim(),
      config.training.model == ModelKind::kMlp ? config.training.hidden_dim : 0,
      data.train.num_classes()};
  CATALYST_ASSIGN_OR_RETURN(
      Model initial,
      Model::Initial(config.training.model, shape,
                     DeriveSeed(config.seeds.data, {kInitTag})));

  std::vector<ClientShard> shards = data.shards;
  if (config.attack.kind == AttackKind::kBackdoor) {
    for (int c : config.attack.byzantine_ids) {
      shards[c] = PoisonShard(
          shards[c], config.attack.trigger, config.attack.poison_fraction,
          DeriveSeed(config.seeds.data, {kPoisonTag, static_cast<uint64_t>(c)}));
    }
  }
  CATALYST_ASSIGN_OR_RETURN(std::unique_ptr<ServerProtocol> server,
                            MakeServer(config, shards, initial.params()));
  Simulation sim(config, data, std::move(shards), std::move(initial),
                 std::move(server));
  return sim.Execute();
}

}  // namespace catalyst
