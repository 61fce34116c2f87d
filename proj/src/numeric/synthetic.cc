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

#include "catalyst/numeric/synthetic.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "catalyst/common/errors.h"
#include "catalyst/common/random.h"

namespace catalyst {

absl::StatusOr<Dataset> MakeSynthetic(int num_classes, size_t dim, size_t n,
                                      double separation, uint64_t seed) {
  if (num_classes < 2) return ConfigError("synthetic data needs >= 2 classes");
  if (dim < 1) return ConfigError("synthetic data needs dim >= 1");
  if (n < static_cast<size_t>(num_classes)) {
    return ConfigError("synthetic data needs n >= num_classes");
  }
  if (!(separation >= 0.0)) return ConfigError("separation must be >= 0");

  Rng rng = MakeRng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const size_t c = static_cast<size_t>(num_classes);

  std::vector<std::vector<double>> means(c, std::vector<double>(dim));
  for (auto& mean : means) {
    for (double& v : mean) v = normal(rng);
  }
  // Rescale the cloud of means until the closest pair sits at `separation`.
  double min_dist = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < c; ++a) {
    for (size_t b = a + 1; b < c; ++b) {
      double sq = 0.0;
      for (size_t j = 0; j < dim; ++j) {
        sq += (means[a][j] - means[b][j]) * (means[a][j] - means[b][j]);
      }
      min_dist = std::min(min_dist, std::sqrt(sq));
    }
  }
  if (min_dist < separation) {
    if (min_dist <= 0.0) return ConfigError("degenerate class means");
    const double scale = separation / min_dist * (1.0 + 1e-12);
    for (auto& mean : means) {
      for (double& v : mean) v *= scale;
    }
  }

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> features(n * dim);
  std::vector<int> labels(n);
  for (size_t slot = 0; slot < n; ++slot) {
    const size_t label = order[slot] % c;
    labels[slot] = static_cast<int>(label);
    for (size_t j = 0; j < dim; ++j) {
      features[slot * dim + j] = means[label][j] + normal(rng);
    }
  }
  return Dataset::Create(dim, num_classes, std::move(features),
                         std::move(labels));
}

std::pair<Dataset, Dataset> SplitTrainTest(const Dataset& data,
                                           double test_fraction,
                                           uint64_t seed) {
  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng = MakeRng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const size_t n_test = std::min(
      data.size(),
      static_cast<size_t>(std::llround(test_fraction * static_cast<double>(data.size()))));
  std::span<const size_t> all(order);
  return {data.Subset(all.subspan(n_test)), data.Subset(all.first(n_test))};
}

}  // namespace catalyst
