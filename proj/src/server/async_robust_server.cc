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

#include "catalyst/server/async_robust_server.h"

#include <algorithm>
#include <utility>

#include "absl/strings/str_format.h"
#include "catalyst/common/errors.h"
#include "catalyst/common/random.h"
#include "catalyst/robust/clip_bound.h"
#include "catalyst/robust/filtering.h"

namespace catalyst {
namespace {

// Benign indices of `models` relative to `global`, clustering the deltas.
absl::StatusOr<std::vector<size_t>> BenignIndices(
    const ModelVector& global, const std::vector<ModelVector>& models) {
  if (models.size() < 2) {
    std::vector<size_t> all(models.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }
  std::vector<ModelVector> deltas;
  deltas.reserve(models.size());
  for (const ModelVector& m : models) deltas.push_back(m - global);
  CATALYST_ASSIGN_OR_RETURN(ClusterVerdict verdict, Filter(deltas));
  return std::move(verdict.benign_indices);
}

std::vector<ModelVector> Pick(const std::vector<ModelVector>& models,
                              const std::vector<size_t>& indices) {
  std::vector<ModelVector> out;
  out.reserve(indices.size());
  for (size_t i : indices) out.push_back(models[i]);
  return out;
}

}  // namespace

int DefaultTrigger(int f) { return std::max(2, 2 * f + 1); }

int ServerConfig::trigger() const {
  return trigger_override > 0 ? trigger_override : DefaultTrigger(f);
}

absl::Status ValidateServerConfig(const ServerConfig& config) {
  if (config.f < 0) {
    return ConfigError(absl::StrFormat("f must be >= 0, got %d", config.f));
  }
  if (config.num_clients < 2 * config.f + 1) {
    return ConfigError(absl::StrFormat(
        "tolerating f = %d Byzantine clients requires at least 2f+1 = %d "
        "clients, got %d",
        config.f, 2 * config.f + 1, config.num_clients));
  }
  if (config.trigger() > config.num_clients) {
    return ConfigError(absl::StrFormat(
        "trigger %d exceeds the number of clients %d (trigger is "
        "max(2, 2f+1))",
        config.trigger(), config.num_clients));
  }
  if (config.window < 1) {
    return ConfigError(
        absl::StrFormat("window K must be >= 1, got %d", config.window));
  }
  if (!(config.alpha > 0.0) || !(config.eta > 0.0)) {
    return ConfigError(absl::StrFormat(
        "alpha and eta must be > 0, got alpha=%g eta=%g", config.alpha,
        config.eta));
  }
  if (config.noise.enabled) {
    CATALYST_RETURN_IF_ERROR(NoiseMultiplier(config.noise).status());
  }
  return absl::OkStatus();
}

absl::StatusOr<double> Staleness(double alpha, int64_t a, int64_t i) {
  if (a <= i) {
    return UsageError(
        absl::StrFormat("staleness needs a > i, got a=%d i=%d", a, i));
  }
  if (!(alpha > 0.0)) {
    return UsageError(absl::StrFormat("alpha must be > 0, got %g", alpha));
  }
  return alpha / static_cast<double>(a - i);
}

bool operator==(const ClientUpdate& a, const ClientUpdate& b) {
  return a.client_id == b.client_id && a.model_age == b.model_age &&
         a.weights == b.weights;
}

bool operator==(const StoredUpdate& a, const StoredUpdate& b) {
  return a.update == b.update && a.accepted == b.accepted;
}

bool operator==(const ServerState& a, const ServerState& b) {
  return a.age == b.age && a.global_history == b.global_history &&
         a.pending == b.pending && a.processed == b.processed &&
         a.clip_bounds == b.clip_bounds &&
         a.age_client_models == b.age_client_models &&
         a.rcvd_model == b.rcvd_model && a.idle_clients == b.idle_clients;
}

absl::StatusOr<InitResult> InitServer(const ServerConfig& config,
                                      const ModelVector& initial_model) {
  CATALYST_RETURN_IF_ERROR(ValidateServerConfig(config));
  if (initial_model.empty() || !initial_model.IsFinite()) {
    return ConfigError("initial model must be non-empty and finite");
  }
  InitResult result;
  result.state.global_history[0] = initial_model;
  result.state.age_client_models.assign(config.num_clients, 0);
  result.output.kind = UpdateKind::kFresh;
  for (int c = 0; c < config.num_clients; ++c) {
    result.output.sends.push_back({c, 0, initial_model});
  }
  return result;
}

absl::StatusOr<NewGlobal> ComputeNewGlobal(ServerState& state,
                                           const ServerConfig& config,
                                           uint64_t seed) {
  const int64_t a = state.age;
  auto fresh_it = state.pending.find(a);
  if (fresh_it == state.pending.end() || fresh_it->second.empty()) {
    return UsageError("no fresh updates to aggregate");
  }
  const ModelVector& g_a = state.global_history.at(a);
  NewGlobal result;
  ModelVector correction(g_a.size());

  // Late updates of the previous K - 1 ages.
  for (int64_t i = std::max<int64_t>(0, a - config.window + 1); i < a; ++i) {
    auto pit = state.pending.find(i);
    if (pit == state.pending.end() || pit->second.empty()) continue;
    std::vector<ClientUpdate>& pending = pit->second;
    std::vector<StoredUpdate>& processed = state.processed[i];
    const ModelVector& g_i = state.global_history.at(i);

    // processed[i] first, then pending[i], both in arrival order.
    std::vector<ModelVector> models;
    for (const StoredUpdate& s : processed) models.push_back(s.update.weights);
    for (const ClientUpdate& u : pending) models.push_back(u.weights);
    CATALYST_ASSIGN_OR_RETURN(const ClipBound clip,
                              ComputeClipBound(g_i, models));
    CATALYST_ASSIGN_OR_RETURN(const std::vector<size_t> benign,
                              BenignIndices(g_i, models));

    std::vector<size_t> selected;
    size_t pending_benign = 0;
    for (size_t k : benign) {
      if (k >= processed.size()) {
        selected.push_back(k);
        ++pending_benign;
      } else if (config.rehabilitate && !processed[k].accepted) {
        selected.push_back(k);
      }
    }
    result.filtered += pending.size() - pending_benign;
    if (!selected.empty()) {
      ClipBound reused = clip.Select(selected);
      reused.bound = state.clip_bounds.at(i);
      CATALYST_ASSIGN_OR_RETURN(
          const ModelVector w_bar_i,
          Aggregate(g_i, reused, config.noise, Pick(models, selected),
                    DeriveSeed(seed, {static_cast<uint64_t>(i)})));
      CATALYST_ASSIGN_OR_RETURN(const double sf,
                                Staleness(config.alpha, a, i));
      const double weight = sf * static_cast<double>(selected.size()) /
                            static_cast<double>(config.num_clients) *
                            config.eta;
      correction.Axpy(weight, w_bar_i - g_i);
    }

    // Carry the verdict into processed[i] below.
    std::vector<StoredUpdate> moved;
    for (size_t k : selected) {
      if (k < processed.size()) processed[k].accepted = true;
    }
    for (size_t p = 0; p < pending.size(); ++p) {
      const bool accepted = std::binary_search(benign.begin(), benign.end(),
                                               processed.size() + p);
      moved.push_back({std::move(pending[p]), accepted});
    }
    pending.clear();
    for (StoredUpdate& s : moved) processed.push_back(std::move(s));
  }

  // Fresh updates of age a.
  std::vector<ClientUpdate>& fresh = fresh_it->second;
  std::vector<ModelVector> models;
  for (const ClientUpdate& u : fresh) models.push_back(u.weights);
  CATALYST_ASSIGN_OR_RETURN(const ClipBound clip, ComputeClipBound(g_a, models));
  state.clip_bounds[a] = clip.bound;
  CATALYST_ASSIGN_OR_RETURN(const std::vector<size_t> benign,
                            BenignIndices(g_a, models));
  result.filtered += fresh.size() - benign.size();
  CATALYST_ASSIGN_OR_RETURN(
      ModelVector next,
      Aggregate(g_a, clip.Select(benign), config.noise, Pick(models, benign),
                DeriveSeed(seed, {static_cast<uint64_t>(a)})));
  const double sign =
      config.late_correction == LateCorrection::kDescent ? 1.0 : -1.0;
  next.Axpy(sign, correction);

  std::vector<StoredUpdate>& processed_a = state.processed[a];
  for (size_t p = 0; p < fresh.size(); ++p) {
    const bool accepted = std::binary_search(benign.begin(), benign.end(), p);
    processed_a.push_back({std::move(fresh[p]), accepted});
  }
  fresh.clear();
  // Drop the emptied pending lists along with the expiring age.
  for (auto it = state.pending.begin(); it != state.pending.end();) {
    it = it->second.empty() ? state.pending.erase(it) : std::next(it);
  }
  const int64_t expired = a - config.window + 1;
  state.pending.erase(expired);
  state.processed.erase(expired);
  state.clip_bounds.erase(expired);
  state.global_history.erase(expired);

  state.age = a + 1;
  state.global_history[state.age] = next;
  result.model = std::move(next);
  return result;
}

absl::StatusOr<ServerOutput> HandleUpdate(ServerState& state,
                                          const ServerConfig& config,
                                          const ClientUpdate& update,
                                          uint64_t seed) {
  const int c = update.client_id;
  if (c < 0 || c >= config.num_clients) {
    return UsageError(absl::StrFormat("unknown client id %d", c));
  }
  if (update.weights.size() != state.global().size()) {
    return UsageError(absl::StrFormat(
        "update from client %d has dimension %d, global model has %d", c,
        update.weights.size(), state.global().size()));
  }
  if (!update.weights.IsFinite()) {
    return UsageError(
        absl::StrFormat("update from client %d has non-finite entries", c));
  }

  ServerOutput out;
  // The server trusts its own record of the model it last sent to c.
  const int64_t t = state.age_client_models[c];
  out.model_age = t;
  if (!state.rcvd_model.insert({c, t}).second) {
    out.kind = UpdateKind::kDuplicate;
    return out;
  }

  const int64_t a = state.age;
  if (t == a) {
    std::vector<ClientUpdate>& fresh = state.pending[a];
    fresh.push_back({c, t, update.weights});
    if (fresh.size() < static_cast<size_t>(config.trigger())) {
      state.idle_clients.insert(c);
      out.kind = UpdateKind::kFresh;
      return out;
    }
    CATALYST_ASSIGN_OR_RETURN(NewGlobal next,
                              ComputeNewGlobal(state, config, seed));
    out.kind = UpdateKind::kTrigger;
    out.new_age = state.age;
    out.filtered = next.filtered;
    state.idle_clients.insert(c);
    for (int d : state.idle_clients) {
      state.age_client_models[d] = state.age;
      out.sends.push_back({d, state.age, next.model});
    }
    state.idle_clients.clear();
    return out;
  }

  if (t >= a - config.window + 1) {
    state.pending[t].push_back({c, t, update.weights});
    out.kind = UpdateKind::kLate;
  } else {
    out.kind = UpdateKind::kStale;
  }
  state.age_client_models[c] = a;
  out.sends.push_back({c, a, state.global()});
  return out;
}

absl::StatusOr<AsyncRobustServer> AsyncRobustServer::Create(
    ServerConfig config, ModelVector initial_model, std::string_view name) {
  CATALYST_ASSIGN_OR_RETURN(InitResult init,
                            InitServer(config, initial_model));
  return AsyncRobustServer(std::move(config), std::move(init), name);
}

ServerOutput AsyncRobustServer::Start() { return start_; }

absl::StatusOr<ServerOutput> AsyncRobustServer::OnUpdate(
    const ClientUpdate& update, uint64_t seed) {
  return HandleUpdate(state_, config_, update, seed);
}

std::map<int64_t, size_t> AsyncRobustServer::PendingSizes() const {
  std::map<int64_t, size_t> sizes;
  for (const auto& [age, updates] : state_.pending) {
    if (!updates.empty()) sizes[age] = updates.size();
  }
  return sizes;
}

}  // namespace catalyst
