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

#include "catalyst/adversary/timing.h"

#include <algorithm>
#include <set>
#include <tuple>

namespace catalyst {

std::vector<SimEvent> InjectTiming(std::span<const SimEvent> schedule,
                                   std::span<const int> byzantine_ids,
                                   TimingPolicy policy) {
  std::vector<SimEvent> out(schedule.begin(), schedule.end());
  if (policy == TimingPolicy::kNatural) return out;

  const std::set<int> byzantine(byzantine_ids.begin(), byzantine_ids.end());
  auto is_byzantine = [&](const SimEvent& e) {
    return e.kind == SimEventKind::kClientDone && byzantine.contains(e.client_id);
  };
  const int side = policy == TimingPolicy::kJustBeforeHonest ? -1 : 1;

  // (time, anchor rank, side, client id, original rank)
  using Key = std::tuple<double, uint64_t, int, int, uint64_t>;
  std::vector<std::pair<Key, SimEvent>> keyed;
  keyed.reserve(out.size());
  for (size_t i = 0; i < out.size(); ++i) {
    SimEvent e = out[i];
    Key key{e.time, e.rank, 0, 0, e.rank};
    if (is_byzantine(e)) {
      for (size_t j = i + 1; j < out.size(); ++j) {
        if (out[j].kind == SimEventKind::kClientDone && !is_byzantine(out[j])) {
          e.time = out[j].time;
          key = Key{out[j].time, out[j].rank, side, e.client_id, e.rank};
          break;
        }
      }
    }
    keyed.emplace_back(key, e);
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  for (size_t i = 0; i < keyed.size(); ++i) {
    out[i] = keyed[i].second;
    out[i].rank = i;
  }
  return out;
}

}  // namespace catalyst
