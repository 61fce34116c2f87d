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

#include "catalyst/numeric/model_vector.h"

#include <cassert>
#include <cmath>

namespace catalyst {

bool ModelVector::IsFinite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

ModelVector& ModelVector::operator+=(const ModelVector& other) {
  assert(other.size() == size());
  for (size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ModelVector& ModelVector::operator-=(const ModelVector& other) {
  assert(other.size() == size());
  for (size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

ModelVector& ModelVector::operator*=(double scale) {
  for (double& v : values_) v *= scale;
  return *this;
}

void ModelVector::Axpy(double scale, const ModelVector& other) {
  assert(other.size() == size());
  for (size_t i = 0; i < values_.size(); ++i) {
    values_[i] += scale * other.values_[i];
  }
}

ModelVector operator+(ModelVector lhs, const ModelVector& rhs) {
  lhs += rhs;
  return lhs;
}

ModelVector operator-(ModelVector lhs, const ModelVector& rhs) {
  lhs -= rhs;
  return lhs;
}

ModelVector operator*(double scale, ModelVector v) {
  v *= scale;
  return v;
}

double Dot(const ModelVector& a, const ModelVector& b) {
  assert(a.size() == b.size());
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double Norm(const ModelVector& v) { return std::sqrt(Dot(v, v)); }

double Distance(const ModelVector& a, const ModelVector& b) {
  assert(a.size() == b.size());
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

ModelVector Mean(std::span<const ModelVector> vectors) {
  assert(!vectors.empty());
  ModelVector out(vectors.front().size());
  for (const ModelVector& v : vectors) out += v;
  out *= 1.0 / static_cast<double>(vectors.size());
  return out;
}

}  // namespace catalyst
