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

#include "golden_script.h"

#include <set>
#include <string>
#include <vector>

#include "absl/strings/str_format.h"
#include "catalyst/server/async_robust_server.h"
#include "catalyst/server/event_log.h"

namespace catalyst::golden {
namespace {

struct Step {
  int client;
  ModelVector weights;
};

absl::Status CheckWindow(const ServerState& s, int window) {
  const int64_t oldest = s.age - window + 1;
  auto check = [&](const auto& map, const char* what) -> absl::Status {
    for (const auto& [age, unused] : map) {
      if (age < oldest || age > s.age) {
        return absl::InternalError(absl::StrFormat(
            "%s holds age %d outside [%d, %d]", what, age, oldest, s.age));
      }
    }
    return absl::OkStatus();
  };
  if (auto st = check(s.pending, "pending"); !st.ok()) return st;
  if (auto st = check(s.processed, "processed"); !st.ok()) return st;
  if (auto st = check(s.clip_bounds, "clip_bounds"); !st.ok()) return st;
  return check(s.global_history, "global_history");
}

}  // namespace

absl::StatusOr<std::string> RunGoldenScript() {
  ServerConfig config;
  config.f = 1;
  config.window = 3;
  config.num_clients = 5;
  auto init = InitServer(config, ModelVector{0.0, 0.0});
  if (!init.ok()) return init.status();
  ServerState state = std::move(init->state);

  const std::vector<Step> script{
      {0, {1.0, 0.1}},  {0, {5.0, 5.0}},   {1, {1.0, -0.1}}, {2, {0.9, 0.0}},
      {3, {1.1, 0.05}}, {0, {1.8, 0.1}},   {1, {1.9, -0.1}}, {2, {2.0, 0.0}},
      {0, {2.9, 0.1}},  {1, {3.0, -0.05}}, {2, {2.8, 0.0}},  {4, {-9.0, 3.0}},
  };

  EventLog log;
  for (size_t k = 0; k < script.size(); ++k) {
    const Step& step = script[k];
    const int64_t age_before = state.age;
    const size_t fresh_before =
        state.pending.count(age_before) ? state.pending.at(age_before).size() : 0;
    const std::set<int> idle_before = state.idle_clients;
    const ServerState snapshot = state;

    auto out = HandleUpdate(state, config,
                            ClientUpdate{step.client, 0, step.weights}, k);
    if (!out.ok()) return out.status();

    // Trigger exactness.
    const bool advanced = state.age != age_before;
    if (advanced != (out->kind == UpdateKind::kTrigger) ||
        (advanced && state.age != age_before + 1)) {
      return absl::InternalError(absl::StrFormat("event %d: age %d -> %d as %s", k,
                                                 age_before, state.age,
                                                 std::string(UpdateKindName(out->kind))));
    }
    if (out->kind == UpdateKind::kTrigger &&
        fresh_before + 1 != static_cast<size_t>(config.trigger())) {
      return absl::InternalError(absl::StrFormat(
          "event %d: trigger after %d fresh updates", k, fresh_before + 1));
    }
    if (out->kind == UpdateKind::kFresh &&
        fresh_before + 1 >= static_cast<size_t>(config.trigger())) {
      return absl::InternalError(absl::StrFormat("event %d: missed trigger", k));
    }
    if (out->kind == UpdateKind::kDuplicate && !(state == snapshot)) {
      return absl::InternalError(absl::StrFormat("event %d: duplicate changed state", k));
    }
    if (auto st = CheckWindow(state, config.window); !st.ok()) return st;

    // Liveness: the sender either waits for the next model or holds the
    // current one.
    std::set<int> sent;
    for (const ModelSend& s : out->sends) {
      if (s.age != state.age || !(s.model == state.global())) {
        return absl::InternalError(absl::StrFormat("event %d: stale send", k));
      }
      sent.insert(s.client_id);
    }
    switch (out->kind) {
      case UpdateKind::kFresh:
        if (!state.idle_clients.count(step.client) || !sent.empty()) {
          return absl::InternalError(absl::StrFormat("event %d: fresh client not idle", k));
        }
        break;
      case UpdateKind::kTrigger: {
        std::set<int> want = idle_before;
        want.insert(step.client);
        if (sent != want || !state.idle_clients.empty()) {
          return absl::InternalError(absl::StrFormat("event %d: broadcast mismatch", k));
        }
        break;
      }
      case UpdateKind::kLate:
      case UpdateKind::kStale:
        if (sent != std::set<int>{step.client} ||
            state.age_client_models[step.client] != state.age) {
          return absl::InternalError(absl::StrFormat("event %d: late client not served", k));
        }
        break;
      default:
        break;
    }

    std::map<int64_t, size_t> sizes;
    for (const auto& [age, updates] : state.pending) {
      if (!updates.empty()) sizes[age] = updates.size();
    }
    log.Append(EventRecord{10.0 * static_cast<double>(k + 1), out->kind, step.client,
                           out->model_age, std::move(sizes), state.age});
  }
  return log.ToJsonLines();
}

}  // namespace catalyst::golden
