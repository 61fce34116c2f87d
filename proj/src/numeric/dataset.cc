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

#include "catalyst/numeric/dataset.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_format.h"
#include "catalyst/common/errors.h"

namespace catalyst {

absl::StatusOr<Dataset> Dataset::Create(size_t feature_dim, int num_classes,
                                        std::vector<double> features,
                                        std::vector<int> labels) {
  if (num_classes < 1) return ConfigError("num_classes must be positive");
  if (features.size() != labels.size() * feature_dim) {
    return ConfigError(absl::StrFormat(
        "feature buffer holds %d values, expected %d examples x %d dims",
        features.size(), labels.size(), feature_dim));
  }
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes) {
      return ConfigError(absl::StrFormat("label %d of example %d outside [0, %d)",
                                         labels[i], i, num_classes));
    }
  }
  for (double v : features) {
    if (!std::isfinite(v)) return ConfigError("non-finite feature value");
  }
  Dataset out(feature_dim, num_classes);
  out.features_ = std::move(features);
  out.labels_ = std::move(labels);
  return out;
}

void Dataset::Add(std::span<const double> features, int label) {
  features_.insert(features_.end(), features.begin(), features.end());
  labels_.push_back(label);
}

Dataset Dataset::Subset(std::span<const size_t> indices) const {
  Dataset out(feature_dim_, num_classes_);
  out.features_.reserve(indices.size() * feature_dim_);
  out.labels_.reserve(indices.size());
  for (size_t i : indices) out.Add(features(i), labels_[i]);
  return out;
}

Dataset Dataset::Head(size_t n) const {
  n = std::min(n, size());
  Dataset out(feature_dim_, num_classes_);
  out.features_.assign(features_.begin(),
                       features_.begin() + static_cast<std::ptrdiff_t>(n * feature_dim_));
  out.labels_.assign(labels_.begin(), labels_.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

std::vector<size_t> Dataset::LabelHistogram() const {
  std::vector<size_t> counts(static_cast<size_t>(num_classes_), 0);
  for (int label : labels_) ++counts[static_cast<size_t>(label)];
  return counts;
}

}  // namespace catalyst
