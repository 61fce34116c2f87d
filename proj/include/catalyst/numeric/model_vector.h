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

#ifndef CATALYST_NUMERIC_MODEL_VECTOR_H_
#define CATALYST_NUMERIC_MODEL_VECTOR_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace catalyst {

// Flat parameter vector. Global models, client models and model deltas are
// all ModelVectors; arithmetic partners must have equal dimension (checked by
// the callers that take untrusted input, asserted in debug builds here).
class ModelVector {
 public:
  ModelVector() = default;
  explicit ModelVector(size_t dim, double fill = 0.0) : values_(dim, fill) {}
  explicit ModelVector(std::vector<double> values)
      : values_(std::move(values)) {}
  ModelVector(std::initializer_list<double> values) : values_(values) {}

  size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double operator[](size_t i) const { return values_[i]; }
  double& operator[](size_t i) { return values_[i]; }

  std::span<const double> values() const { return values_; }
  std::span<double> mutable_values() { return values_; }

  // True when every entry is finite.
  bool IsFinite() const;

  ModelVector& operator+=(const ModelVector& other);
  ModelVector& operator-=(const ModelVector& other);
  ModelVector& operator*=(double scale);

  // this += scale * other
  void Axpy(double scale, const ModelVector& other);

  friend bool operator==(const ModelVector&, const ModelVector&) = default;

 private:
  std::vector<double> values_;
};

ModelVector operator+(ModelVector lhs, const ModelVector& rhs);
ModelVector operator-(ModelVector lhs, const ModelVector& rhs);
ModelVector operator*(double scale, ModelVector v);

double Dot(const ModelVector& a, const ModelVector& b);
double Norm(const ModelVector& v);
double Distance(const ModelVector& a, const ModelVector& b);

// Unweighted mean of a non-empty set of equal-dimension vectors.
ModelVector Mean(std::span<const ModelVector> vectors);

}  // namespace catalyst

#endif  // CATALYST_NUMERIC_MODEL_VECTOR_H_
