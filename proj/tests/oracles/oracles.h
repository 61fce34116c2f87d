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

#ifndef CATALYST_TESTS_ORACLES_ORACLES_H_
#define CATALYST_TESTS_ORACLES_ORACLES_H_

// Reference implementations used only by tests. They share no code with the
// library and favour the most literal reading of each definition over speed.

#include <cstddef>
#include <set>
#include <vector>

#include "catalyst/numeric/dataset.h"
#include "catalyst/numeric/model.h"

namespace catalyst::oracle {

using Matrix = std::vector<std::vector<double>>;
using Point = std::vector<double>;

// ||u - g|| for every u, and their median.
std::vector<double> EuclideanDistances(const Point& global,
                                       const std::vector<Point>& updates);
double MedianBySorting(std::vector<double> values);

// 1 - cos(u, v) written out term by term; zero vectors sit at distance 1.
Matrix CosineDistances(const std::vector<Point>& vectors);

// HDBSCAN (min_samples = 1) straight from its definition on the distance
// matrix: clusters are connected components of the threshold graph
// {d(i, j) < eps}, traced top-down by lowering eps through the distinct
// distance values. Selection by excess of mass with the root eligible;
// root members are the points that stay until its densest level.
struct Clustering {
  std::set<std::set<size_t>> clusters;
  std::set<size_t> noise;
};
Clustering BruteForceHdbscan(const Matrix& dist, size_t min_cluster_size);

// Largest cluster, or every index when there is none.
std::set<size_t> BruteForceMajority(const Matrix& dist,
                                    size_t min_cluster_size);

// Central differences of the mean cross-entropy, one coordinate at a time.
ModelVector FiniteDifferenceGradient(const Model& model, const Dataset& batch,
                                     double step);

}  // namespace catalyst::oracle

#endif  // CATALYST_TESTS_ORACLES_ORACLES_H_
