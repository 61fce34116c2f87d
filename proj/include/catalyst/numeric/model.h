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

#ifndef CATALYST_NUMERIC_MODEL_H_
#define CATALYST_NUMERIC_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>

#include "absl/status/statusor.h"
#include "catalyst/numeric/dataset.h"
#include "catalyst/numeric/model_vector.h"

namespace catalyst {

enum class ModelKind {
  kLogistic,  // multinomial logistic regression
  kMlp,       // one tanh hidden layer
};

struct ModelShape {
  size_t input_dim = 0;
  size_t hidden_dim = 0;  // ignored (must be 0) for kLogistic
  int num_classes = 0;

  friend bool operator==(const ModelShape&, const ModelShape&) = default;
};

// Number of parameters of the flat layout:
//   logistic: W[C x D], b[C]
//   mlp:      W1[H x D], b1[H], W2[C x H], b2[C]
size_t ParameterCount(ModelKind kind, const ModelShape& shape);

// A desk-scale classifier whose parameters live in one ModelVector.
class Model {
 public:
  // Fails with a configuration error if `params` does not match the layout.
  static absl::StatusOr<Model> Create(ModelKind kind, ModelShape shape,
                                      ModelVector params);

  // Zero-initialised logistic model or small-Gaussian-initialised MLP.
  static absl::StatusOr<Model> Initial(ModelKind kind, ModelShape shape,
                                       uint64_t seed);

  ModelKind kind() const { return kind_; }
  const ModelShape& shape() const { return shape_; }
  const ModelVector& params() const { return params_; }

  // Same architecture, different parameters; dimensions must match.
  Model WithParams(ModelVector params) const;

  // Predicted class; ties resolve to the lowest class index.
  int Predict(std::span<const double> features) const;

 private:
  Model(ModelKind kind, ModelShape shape, ModelVector params)
      : kind_(kind), shape_(shape), params_(std::move(params)) {}

  ModelKind kind_;
  ModelShape shape_;
  ModelVector params_;
};

struct LossGradient {
  double loss = 0.0;
  ModelVector grad;
};

// Mean softmax cross-entropy over `batch` and its exact gradient.
absl::StatusOr<LossGradient> LossAndGradient(const Model& model,
                                             const Dataset& batch);

// Runs `steps` mini-batch SGD steps from the model's parameters. Batches are
// consecutive slices of a seeded permutation of the shard (reshuffled when
// exhausted); a batch_size >= shard size uses the whole shard every step.
absl::StatusOr<ModelVector> LocalTrain(const Model& model,
                                       const ClientShard& shard, double lr,
                                       int steps, int batch_size,
                                       uint64_t rng_seed);

// Number of steps in `epochs` passes over `shard_size` examples.
int StepsForEpochs(size_t shard_size, int batch_size, int epochs);

// Fraction of argmax-correct predictions.
absl::StatusOr<double> Evaluate(const Model& model, const Dataset& test);

}  // namespace catalyst

#endif  // CATALYST_NUMERIC_MODEL_H_
