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

#ifndef CATALYST_ROBUST_COSINE_DISTANCE_H_
#define CATALYST_ROBUST_COSINE_DISTANCE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "catalyst/numeric/model_vector.h"

namespace catalyst {

// Dense symmetric n x n matrix, row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(size_t n) : n_(n), data_(n * n, 0.0) {}

  size_t size() const { return n_; }
  double operator()(size_t i, size_t j) const { return data_[i * n_ + j]; }
  // Sets both (i, j) and (j, i).
  void Set(size_t i, size_t j, double value) {
    data_[i * n_ + j] = value;
    data_[j * n_ + i] = value;
  }

  // Rows/columns at `indices`, in that order.
  DistanceMatrix Permuted(std::span<const size_t> indices) const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  size_t n_ = 0;
  std::vector<double> data_;
};

// m[i][j] = 1 - cos(u_i, u_j), clamped to [0, 2]; zero diagonal. A zero
// vector is at distance 1 from every other vector.
DistanceMatrix CosineDistanceMatrix(std::span<const ModelVector> vectors);

}  // namespace catalyst

#endif  // CATALYST_ROBUST_COSINE_DISTANCE_H_
