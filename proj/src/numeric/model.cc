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

#include "catalyst/numeric/model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "absl/strings/str_format.h"
#include "catalyst/common/errors.h"
#include "catalyst/common/random.h"

namespace catalyst {
namespace {

// Softmax probabilities in place; returns log-sum-exp of the logits.
double SoftmaxInPlace(std::span<double> logits) {
  const double max_logit = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double& z : logits) {
    z = std::exp(z - max_logit);
    sum += z;
  }
  for (double& z : logits) z /= sum;
  return max_logit + std::log(sum);
}

// Scratch buffers reused across the examples of one batch.
struct Workspace {
  std::vector<double> hidden;
  std::vector<double> logits;
  std::vector<double> hidden_grad;
};

// Computes the logits for one example (and the hidden activations for the
// MLP). Returns them through `ws`.
void Forward(const Model& model, std::span<const double> x, Workspace& ws) {
  const ModelShape& s = model.shape();
  const auto p = model.params().values();
  const size_t d = s.input_dim;
  const size_t c = static_cast<size_t>(s.num_classes);
  ws.logits.assign(c, 0.0);
  if (model.kind() == ModelKind::kLogistic) {
    const double* w = p.data();
    const double* b = p.data() + c * d;
    for (size_t k = 0; k < c; ++k) {
      const double* row = w + k * d;
      double z = b[k];
      for (size_t j = 0; j < d; ++j) z += row[j] * x[j];
      ws.logits[k] = z;
    }
    return;
  }
  const size_t h = s.hidden_dim;
  const double* w1 = p.data();
  const double* b1 = w1 + h * d;
  const double* w2 = b1 + h;
  const double* b2 = w2 + c * h;
  ws.hidden.assign(h, 0.0);
  for (size_t u = 0; u < h; ++u) {
    const double* row = w1 + u * d;
    double a = b1[u];
    for (size_t j = 0; j < d; ++j) a += row[j] * x[j];
    ws.hidden[u] = std::tanh(a);
  }
  for (size_t k = 0; k < c; ++k) {
    const double* row = w2 + k * h;
    double z = b2[k];
    for (size_t u = 0; u < h; ++u) z += row[u] * ws.hidden[u];
    ws.logits[k] = z;
  }
}

// Adds the per-example gradient of -log p_y to `grad`; returns the loss.
double AccumulateExample(const Model& model, std::span<const double> x,
                         int label, Workspace& ws, std::span<double> grad) {
  Forward(model, x, ws);
  const ModelShape& s = model.shape();
  const size_t d = s.input_dim;
  const size_t c = static_cast<size_t>(s.num_classes);
  const size_t y = static_cast<size_t>(label);
  const double true_logit = ws.logits[y];
  const double loss = SoftmaxInPlace(ws.logits) - true_logit;
  ws.logits[y] -= 1.0;  // dL/dz = p - e_y
  const std::vector<double>& dz = ws.logits;

  if (model.kind() == ModelKind::kLogistic) {
    double* gw = grad.data();
    double* gb = grad.data() + c * d;
    for (size_t k = 0; k < c; ++k) {
      double* row = gw + k * d;
      const double g = dz[k];
      for (size_t j = 0; j < d; ++j) row[j] += g * x[j];
      gb[k] += g;
    }
    return loss;
  }

  const size_t h = s.hidden_dim;
  const auto p = model.params().values();
  const double* w2 = p.data() + h * d + h;
  double* gw1 = grad.data();
  double* gb1 = gw1 + h * d;
  double* gw2 = gb1 + h;
  double* gb2 = gw2 + c * h;
  ws.hidden_grad.assign(h, 0.0);
  for (size_t k = 0; k < c; ++k) {
    double* row = gw2 + k * h;
    const double g = dz[k];
    const double* wrow = w2 + k * h;
    for (size_t u = 0; u < h; ++u) {
      row[u] += g * ws.hidden[u];
      ws.hidden_grad[u] += g * wrow[u];
    }
    gb2[k] += g;
  }
  for (size_t u = 0; u < h; ++u) {
    const double a = ws.hidden_grad[u] * (1.0 - ws.hidden[u] * ws.hidden[u]);
    double* row = gw1 + u * d;
    for (size_t j = 0; j < d; ++j) row[j] += a * x[j];
    gb1[u] += a;
  }
  return loss;
}

absl::Status CheckCompatible(const Model& model, const Dataset& data) {
  if (data.feature_dim() != model.shape().input_dim) {
    return ConfigError(absl::StrFormat(
        "feature dimension %d does not match model input dimension %d",
        data.feature_dim(), model.shape().input_dim));
  }
  if (data.num_classes() > model.shape().num_classes) {
    return ConfigError(absl::StrFormat(
        "dataset has %d classes, model predicts %d", data.num_classes(),
        model.shape().num_classes));
  }
  return absl::OkStatus();
}

// Mean loss and gradient over the examples at `indices` (taken in ascending
// order so the floating-point sum does not depend on batch shuffling).
double BatchLossGradient(const Model& model, const Dataset& data,
                         std::span<const size_t> indices, Workspace& ws,
                         ModelVector& grad) {
  std::fill(grad.mutable_values().begin(), grad.mutable_values().end(), 0.0);
  double loss = 0.0;
  for (size_t i : indices) {
    loss += AccumulateExample(model, data.features(i), data.label(i), ws,
                              grad.mutable_values());
  }
  const double inv = 1.0 / static_cast<double>(indices.size());
  grad *= inv;
  return loss * inv;
}

}  // namespace

size_t ParameterCount(ModelKind kind, const ModelShape& shape) {
  const size_t c = static_cast<size_t>(shape.num_classes);
  if (kind == ModelKind::kLogistic) return c * shape.input_dim + c;
  return shape.hidden_dim * shape.input_dim + shape.hidden_dim +
         c * shape.hidden_dim + c;
}

absl::StatusOr<Model> Model::Create(ModelKind kind, ModelShape shape,
                                    ModelVector params) {
  if (shape.input_dim == 0 || shape.num_classes < 2) {
    return ConfigError("model needs input_dim >= 1 and num_classes >= 2");
  }
  if (kind == ModelKind::kLogistic && shape.hidden_dim != 0) {
    return ConfigError("logistic model must have hidden_dim 0");
  }
  if (kind == ModelKind::kMlp && shape.hidden_dim == 0) {
    return ConfigError("mlp model needs hidden_dim >= 1");
  }
  const size_t expected = ParameterCount(kind, shape);
  if (params.size() != expected) {
    return ConfigError(absl::StrFormat(
        "parameter vector has dimension %d, architecture needs %d",
        params.size(), expected));
  }
  if (!params.IsFinite()) return ConfigError("non-finite model parameters");
  return Model(kind, shape, std::move(params));
}

absl::StatusOr<Model> Model::Initial(ModelKind kind, ModelShape shape,
                                     uint64_t seed) {
  ModelVector params(ParameterCount(kind, shape));
  if (kind == ModelKind::kMlp) {
    Rng rng = MakeRng(seed);
    // Scaled so pre-activations start in tanh's linear range.
    const double scale = 1.0 / std::sqrt(static_cast<double>(shape.input_dim));
    std::normal_distribution<double> normal(0.0, scale);
    for (double& v : params.mutable_values()) v = normal(rng);
  }
  return Create(kind, shape, std::move(params));
}

Model Model::WithParams(ModelVector params) const {
  return Model(kind_, shape_, std::move(params));
}

int Model::Predict(std::span<const double> features) const {
  Workspace ws;
  Forward(*this, features, ws);
  // max_element returns the first maximum: lowest index on ties.
  return static_cast<int>(
      std::max_element(ws.logits.begin(), ws.logits.end()) - ws.logits.begin());
}

absl::StatusOr<LossGradient> LossAndGradient(const Model& model,
                                             const Dataset& batch) {
  if (batch.empty()) return UsageError("loss_and_gradient on an empty batch");
  CATALYST_RETURN_IF_ERROR(CheckCompatible(model, batch));
  std::vector<size_t> indices(batch.size());
  std::iota(indices.begin(), indices.end(), size_t{0});
  Workspace ws;
  LossGradient out;
  out.grad = ModelVector(model.params().size());
  out.loss = BatchLossGradient(model, batch, indices, ws, out.grad);
  return out;
}

int StepsForEpochs(size_t shard_size, int batch_size, int epochs) {
  const size_t bs = static_cast<size_t>(std::max(batch_size, 1));
  const size_t per_epoch = (shard_size + bs - 1) / bs;
  return static_cast<int>(std::max<size_t>(per_epoch, 1)) * std::max(epochs, 1);
}

absl::StatusOr<ModelVector> LocalTrain(const Model& model,
                                       const ClientShard& shard, double lr,
                                       int steps, int batch_size,
                                       uint64_t rng_seed) {
  if (!(lr >= 0.0)) return UsageError("learning rate must be non-negative");
  if (steps < 1) return UsageError("local training needs steps >= 1");
  if (batch_size < 1) return UsageError("batch_size must be >= 1");
  if (shard.data.empty()) return UsageError("local training on an empty shard");
  CATALYST_RETURN_IF_ERROR(CheckCompatible(model, shard.data));

  const size_t n = shard.data.size();
  const size_t bs = std::min(static_cast<size_t>(batch_size), n);
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng = MakeRng(rng_seed);
  size_t cursor = n;  // forces a shuffle before the first mini-batch

  Model current = model;
  ModelVector params = model.params();
  ModelVector grad(params.size());
  std::vector<size_t> batch;
  Workspace ws;
  for (int step = 0; step < steps; ++step) {
    if (bs == n) {
      batch = order;
    } else {
      if (cursor + bs > n) {
        std::shuffle(order.begin(), order.end(), rng);
        cursor = 0;
      }
      batch.assign(order.begin() + static_cast<std::ptrdiff_t>(cursor),
                   order.begin() + static_cast<std::ptrdiff_t>(cursor + bs));
      std::sort(batch.begin(), batch.end());
      cursor += bs;
    }
    BatchLossGradient(current, shard.data, batch, ws, grad);
    params.Axpy(-lr, grad);
    current = current.WithParams(params);
  }
  return params;
}

absl::StatusOr<double> Evaluate(const Model& model, const Dataset& test) {
  if (test.empty()) return UsageError("evaluate on an empty test set");
  CATALYST_RETURN_IF_ERROR(CheckCompatible(model, test));
  size_t correct = 0;
  for (size_t i = 0; i < test.size(); ++i) {
    if (model.Predict(test.features(i)) == test.label(i)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace catalyst
