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

#ifndef CATALYST_NUMERIC_DATASET_H_
#define CATALYST_NUMERIC_DATASET_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace catalyst {

// Labelled examples with a fixed feature dimension, stored row-major.
class Dataset {
 public:
  Dataset() = default;
  Dataset(size_t feature_dim, int num_classes)
      : feature_dim_(feature_dim), num_classes_(num_classes) {}

  // Validates the label range and feature dimension.
  static absl::StatusOr<Dataset> Create(size_t feature_dim, int num_classes,
                                        std::vector<double> features,
                                        std::vector<int> labels);

  size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  size_t feature_dim() const { return feature_dim_; }
  int num_classes() const { return num_classes_; }

  std::span<const double> features(size_t i) const {
    return {features_.data() + i * feature_dim_, feature_dim_};
  }
  std::span<double> mutable_features(size_t i) {
    return {features_.data() + i * feature_dim_, feature_dim_};
  }
  int label(size_t i) const { return labels_[i]; }
  void set_label(size_t i, int label) { labels_[i] = label; }
  const std::vector<int>& labels() const { return labels_; }

  // Appends one example; the caller guarantees dimension and label range.
  void Add(std::span<const double> features, int label);

  // Examples at `indices`, in the given order.
  Dataset Subset(std::span<const size_t> indices) const;

  // The first min(n, size()) examples.
  Dataset Head(size_t n) const;

  // Per-class example counts.
  std::vector<size_t> LabelHistogram() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  size_t feature_dim_ = 0;
  int num_classes_ = 0;
  std::vector<double> features_;
  std::vector<int> labels_;
};

// A client's local data and its weight d_c / d.
struct ClientShard {
  int client_id = 0;
  Dataset data;
  double weight = 0.0;

  friend bool operator==(const ClientShard&, const ClientShard&) = default;
};

}  // namespace catalyst

#endif  // CATALYST_NUMERIC_DATASET_H_
