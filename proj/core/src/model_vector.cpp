// Copyright (c) 2026 The adacomm Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adacomm/model_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace adacomm {

namespace {

void require_finite(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("ModelVector: non-finite entry at index " +
                                  std::to_string(i));
    }
  }
}

}  // namespace

ModelVector::ModelVector(std::size_t dimension, double fill)
    : values_(dimension, fill) {
  require_finite(values_);
}

ModelVector::ModelVector(std::vector<double> values)
    : values_(std::move(values)) {
  require_finite(values_);
}

ModelVector::ModelVector(std::initializer_list<double> values)
    : values_(values) {
  require_finite(values_);
}

bool ModelVector::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

double ModelVector::squared_norm() const noexcept {
  double acc = 0.0;
  for (double v : values_) acc += v * v;
  return acc;
}

double ModelVector::dot(const ModelVector& other) const {
  require_same_dimension(size(), other.size(), "ModelVector::dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    acc += values_[i] * other.values_[i];
  }
  return acc;
}

ModelVector& ModelVector::axpy(double alpha, const ModelVector& other) {
  require_same_dimension(size(), other.size(), "ModelVector::axpy");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    values_[i] += alpha * other.values_[i];
  }
  return *this;
}

ModelVector& ModelVector::scale(double factor) noexcept {
  for (double& v : values_) v *= factor;
  return *this;
}

void ModelVector::fill(double value) noexcept {
  std::fill(values_.begin(), values_.end(), value);
}

void require_same_dimension(std::size_t expected, std::size_t actual,
                            const char* what) {
  if (expected != actual) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(expected) + " vs " +
                                std::to_string(actual) + ")");
  }
}

}  // namespace adacomm
