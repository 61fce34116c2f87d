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

#include "catalyst/numeric/partition.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "absl/strings/str_format.h"
#include "catalyst/common/errors.h"
#include "catalyst/common/random.h"

namespace catalyst {
namespace {

using IndexLists = std::vector<std::vector<size_t>>;

// Splits `pool` (already in the desired order) into `parts` contiguous runs
// whose sizes differ by at most one.
IndexLists SplitEven(const std::vector<size_t>& pool, size_t parts) {
  IndexLists out(parts);
  const size_t base = pool.size() / parts;
  const size_t extra = pool.size() % parts;
  size_t cursor = 0;
  for (size_t p = 0; p < parts; ++p) {
    const size_t len = base + (p < extra ? 1 : 0);
    out[p].assign(pool.begin() + static_cast<std::ptrdiff_t>(cursor),
                  pool.begin() + static_cast<std::ptrdiff_t>(cursor + len));
    cursor += len;
  }
  return out;
}

IndexLists PartitionIid(std::vector<size_t> pool, size_t parts, Rng& rng) {
  std::shuffle(pool.begin(), pool.end(), rng);
  return SplitEven(pool, parts);
}

IndexLists PartitionShards(const Dataset& data, std::vector<size_t> pool,
                           size_t parts, int shards_per_client, Rng& rng) {
  std::stable_sort(pool.begin(), pool.end(), [&](size_t a, size_t b) {
    return data.label(a) < data.label(b);
  });
  const size_t num_shards = parts * static_cast<size_t>(shards_per_client);
  IndexLists shards = SplitEven(pool, num_shards);
  std::vector<size_t> deal(num_shards);
  std::iota(deal.begin(), deal.end(), size_t{0});
  std::shuffle(deal.begin(), deal.end(), rng);
  IndexLists out(parts);
  for (size_t s = 0; s < num_shards; ++s) {
    const size_t owner = s / static_cast<size_t>(shards_per_client);
    auto& dst = out[owner];
    const auto& src = shards[deal[s]];
    dst.insert(dst.end(), src.begin(), src.end());
  }
  return out;
}

IndexLists PartitionDirichlet(const Dataset& data,
                              const std::vector<size_t>& pool, size_t parts,
                              double beta, Rng& rng) {
  IndexLists by_class(static_cast<size_t>(data.num_classes()));
  for (size_t i : pool) by_class[static_cast<size_t>(data.label(i))].push_back(i);
  IndexLists out(parts);
  std::gamma_distribution<double> gamma(beta, 1.0);
  for (auto& members : by_class) {
    if (members.empty()) continue;
    std::shuffle(members.begin(), members.end(), rng);
    std::vector<double> share(parts);
    double total = 0.0;
    for (double& s : share) {
      s = gamma(rng);
      total += s;
    }
    // Largest-remainder rounding keeps the class count exact.
    const double n = static_cast<double>(members.size());
    std::vector<size_t> counts(parts);
    std::vector<std::pair<double, size_t>> remainders(parts);
    size_t assigned = 0;
    for (size_t p = 0; p < parts; ++p) {
      const double exact = total > 0.0 ? share[p] / total * n : n / static_cast<double>(parts);
      counts[p] = static_cast<size_t>(std::floor(exact));
      remainders[p] = {exact - std::floor(exact), p};
      assigned += counts[p];
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (size_t r = 0; assigned < members.size(); ++r, ++assigned) {
      ++counts[remainders[r % parts].second];
    }
    size_t cursor = 0;
    for (size_t p = 0; p < parts; ++p) {
      out[p].insert(out[p].end(),
                    members.begin() + static_cast<std::ptrdiff_t>(cursor),
                    members.begin() + static_cast<std::ptrdiff_t>(cursor + counts[p]));
      cursor += counts[p];
    }
  }
  return out;
}

// Moves one example at a time from the largest list into each empty one.
void Rebalance(IndexLists& lists) {
  for (auto& list : lists) {
    if (!list.empty()) continue;
    auto donor = std::max_element(
        lists.begin(), lists.end(),
        [](const auto& a, const auto& b) { return a.size() < b.size(); });
    if (donor->size() < 2) return;
    list.push_back(donor->back());
    donor->pop_back();
  }
}

IndexLists PartitionPool(const Dataset& data, std::vector<size_t> pool,
                         size_t parts, const PartitionMode& mode, Rng& rng) {
  if (parts == 0) return {};
  IndexLists out;
  if (std::holds_alternative<IidMode>(mode)) {
    out = PartitionIid(std::move(pool), parts, rng);
  } else if (const auto* shards = std::get_if<ShardsMode>(&mode)) {
    out = PartitionShards(data, std::move(pool), parts,
                          shards->shards_per_client, rng);
  } else {
    out = PartitionDirichlet(data, pool, parts,
                             std::get<DirichletMode>(mode).beta, rng);
  }
  Rebalance(out);
  return out;
}

}  // namespace

std::string PartitionModeName(const PartitionMode& mode) {
  if (std::holds_alternative<IidMode>(mode)) return "iid";
  if (const auto* s = std::get_if<ShardsMode>(&mode)) {
    return absl::StrFormat("shards(%d)", s->shards_per_client);
  }
  return absl::StrFormat("dirichlet(%g)", std::get<DirichletMode>(mode).beta);
}

absl::StatusOr<std::vector<std::vector<size_t>>> PartitionIndices(
    const Dataset& data, int num_clients, const PartitionMode& mode,
    uint64_t seed, const ReservedLabels& reserved) {
  if (num_clients < 1) return ConfigError("num_clients must be >= 1");
  if (data.empty()) return UsageError("cannot partition an empty dataset");
  if (static_cast<size_t>(num_clients) > data.size()) {
    return ConfigError(absl::StrFormat(
        "num_clients %d exceeds the %d available examples", num_clients,
        data.size()));
  }
  if (const auto* s = std::get_if<ShardsMode>(&mode); s && s->shards_per_client < 1) {
    return ConfigError("shards mode needs shards_per_client >= 1");
  }
  if (const auto* d = std::get_if<DirichletMode>(&mode); d && !(d->beta > 0.0)) {
    return ConfigError("dirichlet mode needs beta > 0");
  }

  const std::set<int> reserved_clients(reserved.clients.begin(), reserved.clients.end());
  const std::set<int> reserved_labels(reserved.labels.begin(), reserved.labels.end());
  for (int c : reserved_clients) {
    if (c < 0 || c >= num_clients) {
      return ConfigError(absl::StrFormat("reserved client %d out of range", c));
    }
  }
  for (int l : reserved_labels) {
    if (l < 0 || l >= data.num_classes()) {
      return ConfigError(absl::StrFormat("reserved label %d out of range", l));
    }
  }
  if (reserved_clients.empty() != reserved_labels.empty()) {
    return ConfigError("reserved labels need both clients and labels");
  }
  if (!reserved_clients.empty() &&
      reserved_clients.size() == static_cast<size_t>(num_clients)) {
    return ConfigError("reserved clients must leave at least one other client");
  }

  std::vector<size_t> reserved_pool;
  std::vector<size_t> open_pool;
  for (size_t i = 0; i < data.size(); ++i) {
    (reserved_labels.count(data.label(i)) ? reserved_pool : open_pool).push_back(i);
  }

  Rng rng = MakeRng(seed);
  IndexLists out(static_cast<size_t>(num_clients));
  if (reserved_clients.empty()) {
    out = PartitionPool(data, std::move(open_pool), out.size(), mode, rng);
  } else {
    std::vector<int> open_clients;
    for (int c = 0; c < num_clients; ++c) {
      if (!reserved_clients.count(c)) open_clients.push_back(c);
    }
    IndexLists special =
        PartitionPool(data, std::move(reserved_pool), reserved_clients.size(),
                      IidMode{}, rng);
    IndexLists rest =
        PartitionPool(data, std::move(open_pool), open_clients.size(), mode, rng);
    size_t k = 0;
    for (int c : reserved_clients) out[static_cast<size_t>(c)] = std::move(special[k++]);
    for (size_t j = 0; j < open_clients.size(); ++j) {
      out[static_cast<size_t>(open_clients[j])] = std::move(rest[j]);
    }
  }
  for (const auto& list : out) {
    if (list.empty()) {
      return ConfigError("partition left a client without examples");
    }
  }
  return out;
}

absl::StatusOr<std::vector<ClientShard>> Partition(
    const Dataset& data, int num_clients, const PartitionMode& mode,
    uint64_t seed, const ReservedLabels& reserved) {
  CATALYST_ASSIGN_OR_RETURN(IndexLists lists,
                            PartitionIndices(data, num_clients, mode, seed, reserved));
  std::vector<ClientShard> shards;
  shards.reserve(lists.size());
  const double total = static_cast<double>(data.size());
  for (size_t c = 0; c < lists.size(); ++c) {
    shards.push_back(ClientShard{
        .client_id = static_cast<int>(c),
        .data = data.Subset(lists[c]),
        .weight = static_cast<double>(lists[c].size()) / total,
    });
  }
  return shards;
}

}  // namespace catalyst
