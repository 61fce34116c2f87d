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

// HDBSCAN on a precomputed distance matrix.
//
// The pipeline is the standard one:
//
//   1. Mutual reachability. With min_samples = 1 every core distance is zero,
//      so mutual reachability equals the raw distance.
//   2. Minimum spanning tree (Prim, O(n^2) on the dense matrix) and the
//      single-linkage dendrogram obtained by merging its edges in ascending
//      order.
//   3. Condensed tree. Walking the dendrogram from the root with
//      lambda = 1 / distance, a split into two children of size >=
//      min_cluster_size gives birth to two clusters; a child smaller than
//      min_cluster_size "falls out" of its parent at that lambda; when both
//      children are small the parent ends and all its points fall out.
//   4. Stability of a cluster C born at lambda_b:
//        sum over condensed rows (parent C) of (lambda_row - lambda_b) * size.
//   5. Excess-of-mass selection, bottom up: keep C when its stability is at
//      least the summed (propagated) stability of its children, otherwise
//      replace it by them. The root is eligible (single-cluster mode) as long
//      as it holds at least min_cluster_size points.
//   6. Labels. A point belongs to the nearest selected ancestor in the
//      condensed tree. When the root itself is selected it keeps only the
//      points that leave it at its largest lambda (the densest core);
//      everything shed earlier is noise.
//
// Zero distances are clamped to kMinHdbscanDistance so lambdas stay finite.

#ifndef CATALYST_ROBUST_HDBSCAN_H_
#define CATALYST_ROBUST_HDBSCAN_H_

#include <cstddef>
#include <vector>

#include "catalyst/robust/cosine_distance.h"

namespace catalyst {

inline constexpr double kMinHdbscanDistance = 1e-200;
inline constexpr int kNoiseLabel = -1;

struct HdbscanResult {
  // Per point: cluster label in [0, num_clusters) or kNoiseLabel. Labels are
  // ordered by the cluster's position in the condensed tree.
  std::vector<int> labels;
  int num_clusters = 0;
};

HdbscanResult Hdbscan(const DistanceMatrix& dist, size_t min_cluster_size);

struct ClusterVerdict {
  std::vector<size_t> benign_indices;  // ascending
  std::vector<size_t> noise_indices;   // ascending
  // True when no cluster survived and every index was kept as benign.
  bool fallback = false;
};

// Members of the largest HDBSCAN cluster (ties: lowest label) are benign.
// With no cluster at all, every index is benign and `fallback` is set.
ClusterVerdict HdbscanMajority(const DistanceMatrix& dist,
                               size_t min_cluster_size);

}  // namespace catalyst

#endif  // CATALYST_ROBUST_HDBSCAN_H_
