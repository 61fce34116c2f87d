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

#include "catalyst/robust/hdbscan.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>

#include "absl/strings/str_format.h"
#include "catalyst/common/log.h"

namespace catalyst {
namespace {

double LambdaOf(double distance) {
  return 1.0 / std::max(distance, kMinHdbscanDistance);
}

struct Edge {
  size_t a;
  size_t b;
  double weight;
};

// Prim's algorithm on the dense matrix. Ties pick the lowest index.
std::vector<Edge> MinimumSpanningTree(const DistanceMatrix& dist) {
  const size_t n = dist.size();
  std::vector<Edge> edges;
  if (n < 2) return edges;
  edges.reserve(n - 1);
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<size_t> from(n, 0);
  size_t current = 0;
  in_tree[0] = true;
  for (size_t added = 1; added < n; ++added) {
    size_t next = n;
    for (size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double d = dist(current, j);
      if (d < best[j]) {
        best[j] = d;
        from[j] = current;
      }
      if (next == n || best[j] < best[next]) next = j;
    }
    in_tree[next] = true;
    edges.push_back({from[next], next, best[next]});
    current = next;
  }
  return edges;
}

// Dendrogram node k (k >= n) merges `left` and `right` at `distance`.
struct Merge {
  size_t left;
  size_t right;
  double distance;
  size_t size;
};

std::vector<Merge> SingleLinkage(const DistanceMatrix& dist) {
  const size_t n = dist.size();
  std::vector<Edge> edges = MinimumSpanningTree(dist);
  std::stable_sort(edges.begin(), edges.end(),
                   [](const Edge& x, const Edge& y) { return x.weight < y.weight; });

  // Union-find over dendrogram node ids; each union creates a fresh node.
  std::vector<size_t> parent(2 * n - 1);
  std::iota(parent.begin(), parent.end(), size_t{0});
  std::vector<size_t> size(2 * n - 1, 1);
  auto find = [&](size_t x) {
    size_t root = x;
    while (parent[root] != root) root = parent[root];
    while (parent[x] != root) {
      const size_t up = parent[x];
      parent[x] = root;
      x = up;
    }
    return root;
  };

  std::vector<Merge> merges;
  merges.reserve(n - 1);
  size_t next_node = n;
  for (const Edge& e : edges) {
    const size_t left = find(e.a);
    const size_t right = find(e.b);
    merges.push_back({left, right, e.weight, size[left] + size[right]});
    parent[left] = next_node;
    parent[right] = next_node;
    size[next_node] = size[left] + size[right];
    ++next_node;
  }
  return merges;
}

// One edge of the condensed tree. Children below n are points; children at
// or above n are cluster ids.
struct CondensedRow {
  size_t parent;
  size_t child;
  double lambda;
  size_t child_size;
};

std::vector<CondensedRow> CondenseTree(const std::vector<Merge>& merges,
                                       size_t n, size_t min_cluster_size) {
  const size_t root = 2 * n - 2;
  auto node_size = [&](size_t node) {
    return node < n ? size_t{1} : merges[node - n].size;
  };
  // Breadth-first listing of the dendrogram below `node`.
  auto subtree = [&](size_t node) {
    std::vector<size_t> out{node};
    for (size_t i = 0; i < out.size(); ++i) {
      if (out[i] >= n) {
        out.push_back(merges[out[i] - n].left);
        out.push_back(merges[out[i] - n].right);
      }
    }
    return out;
  };

  std::vector<size_t> relabel(2 * n - 1, 0);
  std::vector<bool> ignore(2 * n - 1, false);
  relabel[root] = n;
  size_t next_label = n + 1;
  std::vector<CondensedRow> rows;

  auto shed = [&](size_t cluster, size_t node, double lambda) {
    for (size_t sub : subtree(node)) {
      if (sub < n) rows.push_back({cluster, sub, lambda, 1});
      ignore[sub] = true;
    }
  };

  for (size_t node : subtree(root)) {
    if (node < n || ignore[node]) continue;
    const Merge& m = merges[node - n];
    const double lambda = LambdaOf(m.distance);
    const size_t left_count = node_size(m.left);
    const size_t right_count = node_size(m.right);
    const size_t cluster = relabel[node];
    if (left_count >= min_cluster_size && right_count >= min_cluster_size) {
      relabel[m.left] = next_label++;
      rows.push_back({cluster, relabel[m.left], lambda, left_count});
      relabel[m.right] = next_label++;
      rows.push_back({cluster, relabel[m.right], lambda, right_count});
    } else if (left_count < min_cluster_size && right_count < min_cluster_size) {
      shed(cluster, m.left, lambda);
      shed(cluster, m.right, lambda);
    } else if (left_count < min_cluster_size) {
      relabel[m.right] = cluster;
      shed(cluster, m.left, lambda);
    } else {
      relabel[m.left] = cluster;
      shed(cluster, m.right, lambda);
    }
  }
  return rows;
}

}  // namespace

HdbscanResult Hdbscan(const DistanceMatrix& dist, size_t min_cluster_size) {
  const size_t n = dist.size();
  HdbscanResult result;
  result.labels.assign(n, kNoiseLabel);
  // The root is only a cluster candidate when it is large enough.
  if (n < 2 || n < min_cluster_size) return result;

  const std::vector<CondensedRow> rows =
      CondenseTree(SingleLinkage(dist), n, min_cluster_size);

  const size_t root = n;
  size_t num_cluster_ids = 1;
  for (const CondensedRow& r : rows) {
    if (r.child >= n) num_cluster_ids = std::max(num_cluster_ids, r.child - n + 1);
  }
  auto idx = [&](size_t cluster) { return cluster - n; };

  std::vector<double> birth(num_cluster_ids, 0.0);
  std::vector<size_t> cluster_parent(num_cluster_ids, root);
  std::vector<std::vector<size_t>> children(num_cluster_ids);
  std::vector<size_t> point_parent(n, root);
  std::vector<double> point_lambda(n, 0.0);
  for (const CondensedRow& r : rows) {
    if (r.child >= n) {
      birth[idx(r.child)] = r.lambda;
      cluster_parent[idx(r.child)] = r.parent;
      children[idx(r.parent)].push_back(r.child);
    } else {
      point_parent[r.child] = r.parent;
      point_lambda[r.child] = r.lambda;
    }
  }

  std::vector<double> stability(num_cluster_ids, 0.0);
  double root_max_lambda = 0.0;
  for (const CondensedRow& r : rows) {
    stability[idx(r.parent)] +=
        (r.lambda - birth[idx(r.parent)]) * static_cast<double>(r.child_size);
    if (r.parent == root) root_max_lambda = std::max(root_max_lambda, r.lambda);
  }

  // Excess of mass. Cluster ids grow with depth, so descending id order
  // visits children before parents.
  std::vector<bool> selected(num_cluster_ids, true);
  for (size_t k = num_cluster_ids; k-- > 0;) {
    double subtree_stability = 0.0;
    for (size_t child : children[k]) subtree_stability += stability[idx(child)];
    if (subtree_stability > stability[k]) {
      selected[k] = false;
      stability[k] = subtree_stability;
    } else {
      std::deque<size_t> queue(children[k].begin(), children[k].end());
      while (!queue.empty()) {
        const size_t c = queue.front();
        queue.pop_front();
        selected[idx(c)] = false;
        queue.insert(queue.end(), children[idx(c)].begin(), children[idx(c)].end());
      }
    }
  }

  std::map<size_t, int> label_of;
  for (size_t k = 0; k < num_cluster_ids; ++k) {
    if (selected[k]) {
      const int next = static_cast<int>(label_of.size());
      label_of[k + n] = next;
    }
  }
  result.num_clusters = static_cast<int>(label_of.size());

  for (size_t p = 0; p < n; ++p) {
    size_t c = point_parent[p];
    while (c != root && !selected[idx(c)]) c = cluster_parent[idx(c)];
    if (c != root) {
      result.labels[p] = label_of[c];
    } else if (selected[idx(root)] && point_lambda[p] >= root_max_lambda) {
      result.labels[p] = label_of[root];
    }
  }
  return result;
}

ClusterVerdict HdbscanMajority(const DistanceMatrix& dist,
                               size_t min_cluster_size) {
  const size_t n = dist.size();
  const HdbscanResult clustering = Hdbscan(dist, min_cluster_size);
  std::vector<size_t> counts(static_cast<size_t>(clustering.num_clusters), 0);
  for (int label : clustering.labels) {
    if (label != kNoiseLabel) ++counts[static_cast<size_t>(label)];
  }
  int best = kNoiseLabel;
  for (size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] > 0 && (best == kNoiseLabel || counts[k] > counts[static_cast<size_t>(best)])) {
      best = static_cast<int>(k);
    }
  }

  ClusterVerdict verdict;
  if (best == kNoiseLabel) {
    verdict.fallback = true;
    verdict.benign_indices.resize(n);
    std::iota(verdict.benign_indices.begin(), verdict.benign_indices.end(), size_t{0});
    if (n > 0) {
      Log(LogLevel::kWarning,
          absl::StrFormat("hdbscan: no cluster among %d points with "
                          "min_cluster_size %d; keeping all as benign",
                          n, min_cluster_size));
    }
    return verdict;
  }
  for (size_t p = 0; p < n; ++p) {
    (clustering.labels[p] == best ? verdict.benign_indices : verdict.noise_indices)
        .push_back(p);
  }
  return verdict;
}

}  // namespace catalyst
