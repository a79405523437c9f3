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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace adacomm {

/// Dense parameter vector x in R^d.
///
/// Construction from external values rejects NaN/Inf. In-place arithmetic
/// does not re-check; callers that may produce non-finite values (the
/// training loop) test all_finite() explicitly.
class ModelVector {
 public:
  ModelVector() = default;
  explicit ModelVector(std::size_t dimension, double fill = 0.0);
  explicit ModelVector(std::vector<double> values);
  ModelVector(std::initializer_list<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }
  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }

  bool all_finite() const noexcept;
  double squared_norm() const noexcept;
  double dot(const ModelVector& other) const;

  /// this += alpha * other
  ModelVector& axpy(double alpha, const ModelVector& other);
  ModelVector& scale(double factor) noexcept;
  void fill(double value) noexcept;

  friend bool operator==(const ModelVector&, const ModelVector&) = default;

 private:
  std::vector<double> values_;
};

/// Throws std::invalid_argument when the two sizes differ.
void require_same_dimension(std::size_t expected, std::size_t actual,
                            const char* what);

}  // namespace adacomm
