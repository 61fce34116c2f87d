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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace catalyst::oracle {
namespace {

// Mean cross-entropy in long double, parameters read by hand from the
// documented layout: logistic [W (C x D), b (C)], MLP [W1 (H x D), b1 (H),
// W2 (C x H), b2 (C)].
long double MeanCrossEntropy(const Model& model, const std::vector<double>& p,
                             const Dataset& batch) {
  const size_t d = model.shape().input_dim;
  const size_t h = model.shape().hidden_dim;
  const size_t c = static_cast<size_t>(model.shape().num_classes);
  long double total = 0.0L;
  for (size_t e = 0; e < batch.size(); ++e) {
    const auto x = batch.features(e);
    std::vector<long double> z(c, 0.0L);
    if (model.kind() == ModelKind::kLogistic) {
      for (size_t k = 0; k < c; ++k) {
        long double s = p[c * d + k];
        for (size_t j = 0; j < d; ++j) s += p[k * d + j] * x[j];
        z[k] = s;
      }
    } else {
      std::vector<long double> hidden(h);
      for (size_t u = 0; u < h; ++u) {
        long double a = p[h * d + u];
        for (size_t j = 0; j < d; ++j) a += p[u * d + j] * x[j];
        hidden[u] = std::tanh(a);
      }
      const size_t w2 = h * d + h;
      const size_t b2 = w2 + c * h;
      for (size_t k = 0; k < c; ++k) {
        long double s = p[b2 + k];
        for (size_t u = 0; u < h; ++u) s += p[w2 + k * h + u] * hidden[u];
        z[k] = s;
      }
    }
    long double denom = 0.0L;
    for (long double v : z) denom += std::exp(v);
    total += std::log(denom) - z[static_cast<size_t>(batch.label(e))];
  }
  return total / static_cast<long double>(batch.size());
}

bool Connected(const Matrix& dist, const std::vector<size_t>& members,
               double eps) {
  return members.empty() || [&] {
    std::vector<bool> seen(members.size(), false);
    std::vector<size_t> stack{0};
    seen[0] = true;
    size_t count = 1;
    while (!stack.empty()) {
      const size_t i = stack.back();
      stack.pop_back();
      for (size_t j = 0; j < members.size(); ++j) {
        if (!seen[j] && dist[members[i]][members[j]] <= eps) {
          seen[j] = true;
          ++count;
          stack.push_back(j);
        }
      }
    }
    return count == members.size();
  }();
}

// Components of `members` in the graph with edges strictly below `eps`.
std::vector<std::vector<size_t>> ComponentsBelow(
    const Matrix& dist, const std::vector<size_t>& members, double eps) {
  std::vector<int> comp(members.size(), -1);
  std::vector<std::vector<size_t>> out;
  for (size_t s = 0; s < members.size(); ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<size_t> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      const size_t i = stack.back();
      stack.pop_back();
      out.back().push_back(members[i]);
      for (size_t j = 0; j < members.size(); ++j) {
        if (comp[j] < 0 && dist[members[i]][members[j]] < eps) {
          comp[j] = id;
          stack.push_back(j);
        }
      }
    }
  }
  for (auto& c : out) std::sort(c.begin(), c.end());
  return out;
}

double Lambda(double d) { return 1.0 / std::max(d, 1e-200); }

struct Node {
  std::vector<size_t> members;
  double birth = 0.0;
  double stability = 0.0;
  std::map<size_t, double> leave;  // point -> lambda at which it drops out
  std::vector<size_t> children;
  double max_lambda = 0.0;
};

struct Tree {
  const Matrix& dist;
  size_t m;
  std::vector<Node> nodes;

  // Follows cluster `id` down until it splits or disappears.
  void Grow(size_t id) {
    std::vector<size_t> alive = nodes[id].members;
    while (true) {
      // Smallest eps that keeps `alive` connected: the level where it breaks.
      std::vector<double> levels;
      for (size_t a : alive) {
        for (size_t b : alive) {
          if (a < b) levels.push_back(dist[a][b]);
        }
      }
      std::sort(levels.begin(), levels.end());
      double eps = 0.0;
      for (double v : levels) {
        if (Connected(dist, alive, v)) {
          eps = v;
          break;
        }
      }
      const double lambda = Lambda(eps);
      auto parts = ComponentsBelow(dist, alive, eps);
      if (eps <= 0.0) parts.assign(1, alive);  // nothing splits a zero level
      std::vector<std::vector<size_t>> big;
      for (auto& part : parts) {
        if (part.size() >= m) {
          big.push_back(part);
        } else {
          for (size_t p : part) Drop(id, p, lambda);
        }
      }
      if (eps <= 0.0) {
        for (size_t p : alive) Drop(id, p, lambda);
        return;
      }
      if (big.size() >= 2) {
        for (auto& part : big) {
          Node child;
          child.members = part;
          child.birth = lambda;
          nodes[id].stability +=
              (lambda - nodes[id].birth) * static_cast<double>(part.size());
          nodes[id].max_lambda = std::max(nodes[id].max_lambda, lambda);
          nodes.push_back(std::move(child));
          const size_t cid = nodes.size() - 1;
          nodes[id].children.push_back(cid);
          Grow(cid);
        }
        return;
      }
      if (big.empty()) return;
      alive = big.front();
    }
  }

  void Drop(size_t id, size_t p, double lambda) {
    nodes[id].leave[p] = lambda;
    nodes[id].stability += lambda - nodes[id].birth;
    nodes[id].max_lambda = std::max(nodes[id].max_lambda, lambda);
  }

  // Points of the subtree rooted at `id` with their final drop level.
  void Collect(size_t id, std::map<size_t, double>& out) const {
    for (const auto& [p, l] : nodes[id].leave) out[p] = l;
    for (size_t c : nodes[id].children) Collect(c, out);
  }
};

}  // namespace

std::vector<double> EuclideanDistances(const Point& global,
                                       const std::vector<Point>& updates) {
  std::vector<double> out;
  for (const Point& u : updates) {
    long double s = 0.0L;
    for (size_t k = 0; k < u.size(); ++k) {
      const long double diff = static_cast<long double>(u[k]) - global[k];
      s += diff * diff;
    }
    out.push_back(static_cast<double>(std::sqrt(s)));
  }
  return out;
}

double MedianBySorting(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2;
}

Matrix CosineDistances(const std::vector<Point>& vectors) {
  const size_t n = vectors.size();
  Matrix m(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      long double dot = 0.0L, ni = 0.0L, nj = 0.0L;
      for (size_t k = 0; k < vectors[i].size(); ++k) {
        dot += static_cast<long double>(vectors[i][k]) * vectors[j][k];
        ni += static_cast<long double>(vectors[i][k]) * vectors[i][k];
        nj += static_cast<long double>(vectors[j][k]) * vectors[j][k];
      }
      if (ni == 0.0L || nj == 0.0L) {
        m[i][j] = 1.0;
        continue;
      }
      const long double d = 1.0L - dot / std::sqrt(ni * nj);
      m[i][j] = static_cast<double>(std::clamp(d, 0.0L, 2.0L));
    }
  }
  return m;
}

Clustering BruteForceHdbscan(const Matrix& dist, size_t min_cluster_size) {
  const size_t n = dist.size();
  Clustering result;
  for (size_t p = 0; p < n; ++p) result.noise.insert(p);
  if (n < 2 || n < min_cluster_size) return result;

  Tree tree{dist, min_cluster_size, {}};
  Node root;
  for (size_t p = 0; p < n; ++p) root.members.push_back(p);
  tree.nodes.push_back(std::move(root));
  tree.Grow(0);

  // Excess of mass, children before parents (they have larger ids).
  const size_t k = tree.nodes.size();
  std::vector<bool> selected(k, true);
  std::vector<double> best(k);
  for (size_t id = k; id-- > 0;) {
    double below = 0.0;
    for (size_t c : tree.nodes[id].children) below += best[c];
    if (tree.nodes[id].children.empty() || below <= tree.nodes[id].stability) {
      best[id] = tree.nodes[id].stability;
      std::vector<size_t> stack = tree.nodes[id].children;
      while (!stack.empty()) {
        const size_t c = stack.back();
        stack.pop_back();
        selected[c] = false;
        for (size_t g : tree.nodes[c].children) stack.push_back(g);
      }
    } else {
      best[id] = below;
      selected[id] = false;
    }
  }

  for (size_t id = 0; id < k; ++id) {
    if (!selected[id]) continue;
    std::map<size_t, double> members;
    tree.Collect(id, members);
    std::set<size_t> cluster;
    for (const auto& [p, l] : members) {
      if (id != 0 || l >= tree.nodes[0].max_lambda) cluster.insert(p);
    }
    if (cluster.empty()) continue;
    for (size_t p : cluster) result.noise.erase(p);
    result.clusters.insert(std::move(cluster));
  }
  return result;
}

std::set<size_t> BruteForceMajority(const Matrix& dist,
                                    size_t min_cluster_size) {
  const Clustering c = BruteForceHdbscan(dist, min_cluster_size);
  std::set<size_t> best;
  for (const auto& cluster : c.clusters) {
    if (cluster.size() > best.size()) best = cluster;
  }
  if (best.empty()) {
    for (size_t p = 0; p < dist.size(); ++p) best.insert(p);
  }
  return best;
}

ModelVector FiniteDifferenceGradient(const Model& model, const Dataset& batch,
                                     double step) {
  std::vector<double> p(model.params().values().begin(),
                        model.params().values().end());
  ModelVector grad(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    const double saved = p[i];
    p[i] = saved + step;
    const long double up = MeanCrossEntropy(model, p, batch);
    p[i] = saved - step;
    const long double down = MeanCrossEntropy(model, p, batch);
    p[i] = saved;
    grad[i] = static_cast<double>((up - down) / (2.0L * step));
  }
  return grad;
}

}  // namespace catalyst::oracle
