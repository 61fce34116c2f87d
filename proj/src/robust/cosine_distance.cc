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

#include "catalyst/robust/cosine_distance.h"

#include <algorithm>

namespace catalyst {

DistanceMatrix DistanceMatrix::Permuted(std::span<const size_t> indices) const {
  DistanceMatrix out(indices.size());
  for (size_t a = 0; a < indices.size(); ++a) {
    for (size_t b = 0; b < indices.size(); ++b) {
      out.data_[a * out.n_ + b] = (*this)(indices[a], indices[b]);
    }
  }
  return out;
}

DistanceMatrix CosineDistanceMatrix(std::span<const ModelVector> vectors) {
  const size_t n = vectors.size();
  DistanceMatrix out(n);
  std::vector<double> norms(n);
  for (size_t i = 0; i < n; ++i) norms[i] = Norm(vectors[i]);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      double d = 1.0;
      if (norms[i] > 0.0 && norms[j] > 0.0) {
        d = 1.0 - Dot(vectors[i], vectors[j]) / (norms[i] * norms[j]);
        d = std::clamp(d, 0.0, 2.0);
      }
      out.Set(i, j, d);
    }
  }
  return out;
}

}  // namespace catalyst
