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
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "adacomm/model_vector.hpp"
#include "adacomm/rng.hpp"

namespace adacomm {

enum class ObjectiveKind { kNoisyQuadratic, kLogistic, kTinyMlp };

std::string_view to_string(ObjectiveKind kind) noexcept;
std::optional<ObjectiveKind> parse_objective_kind(std::string_view name);

/// Gradient-noise model: E||g - grad F||^2 = M ||grad F||^2 + C at batch 1,
/// both terms shrinking as 1/batch_size.
struct NoiseParams {
  double slope = 0.0;     // M
  double variance = 0.0;  // C
};

/// Binary-labelled sample; label is +1 or -1.
struct LabeledPoint {
  std::vector<double> features;
  double label = 1.0;
};

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::kNoisyQuadratic;
  /// Parameter dimension for NoisyQuadratic; feature dimension for the
  /// dataset kinds.
  std::size_t dimension = 1;
  NoiseParams noise;
  std::uint64_t data_seed = 1;
  std::size_t n_points = 0;
  std::size_t hidden_units = 8;
};

/// Balanced two-cluster Gaussian data: label alternates +1/-1 by index and
/// features are label * mu + N(0, I) with ||mu|| = 1.
std::vector<LabeledPoint> make_gaussian_clusters(std::size_t n_points,
                                                 std::size_t features,
                                                 std::uint64_t seed);

/// Differentiable objective F(x) = (1/N) sum_i f(x; s_i) with an unbiased
/// stochastic-gradient oracle.
///
/// The public entry points validate dimensions and batch sizes, then forward
/// to the kind-specific implementation. All methods are const and keep no
/// mutable state, so one instance may be shared by concurrent workers as
/// long as each owns its RngStream.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual ObjectiveKind kind() const noexcept = 0;
  /// Number of trainable parameters.
  virtual std::size_t dimension() const noexcept = 0;
  /// Known lower bound F_inf.
  virtual double loss_lower_bound() const noexcept = 0;
  /// Dataset size N, or nullopt for the synthetic quadratic.
  virtual std::optional<std::size_t> dataset_size() const noexcept = 0;
  /// Upper bound on the gradient Lipschitz constant L when one is available.
  virtual std::optional<double> smoothness_bound() const noexcept = 0;
  virtual ModelVector initial_point() const = 0;

  double evaluate_loss(const ModelVector& x) const;
  ModelVector full_gradient(const ModelVector& x) const;
  ModelVector stochastic_gradient(const ModelVector& x,
                                  std::size_t batch_size,
                                  RngStream& rng) const;

 protected:
  virtual double loss_impl(const ModelVector& x) const = 0;
  virtual ModelVector gradient_impl(const ModelVector& x) const = 0;
  virtual ModelVector stochastic_gradient_impl(const ModelVector& x,
                                               std::size_t batch_size,
                                               RngStream& rng) const = 0;
};

/// F(x) = 1/2 ||x||^2 with synthetic isotropic Gaussian gradient noise of
/// per-sample covariance (M ||x||^2 + C) / d * I, averaged over the batch.
class NoisyQuadratic final : public Objective {
 public:
  NoisyQuadratic(std::size_t dimension, NoiseParams noise);

  ObjectiveKind kind() const noexcept override {
    return ObjectiveKind::kNoisyQuadratic;
  }
  std::size_t dimension() const noexcept override { return dimension_; }
  double loss_lower_bound() const noexcept override { return 0.0; }
  std::optional<std::size_t> dataset_size() const noexcept override {
    return std::nullopt;
  }
  std::optional<double> smoothness_bound() const noexcept override {
    return 1.0;
  }
  /// All-ones vector, so F(x_1) = d / 2.
  ModelVector initial_point() const override;

  const NoiseParams& noise() const noexcept { return noise_; }

 protected:
  double loss_impl(const ModelVector& x) const override;
  ModelVector gradient_impl(const ModelVector& x) const override;
  ModelVector stochastic_gradient_impl(const ModelVector& x,
                                       std::size_t batch_size,
                                       RngStream& rng) const override;

 private:
  std::size_t dimension_;
  NoiseParams noise_;
};

/// Shared machinery for the finite-sum objectives: mini-batches are drawn
/// uniformly without replacement.
class DatasetObjective : public Objective {
 public:
  explicit DatasetObjective(std::vector<LabeledPoint> data);

  std::optional<std::size_t> dataset_size() const noexcept override {
    return data_.size();
  }
  double loss_lower_bound() const noexcept override { return 0.0; }
  std::size_t feature_dimension() const noexcept { return features_; }
  const std::vector<LabeledPoint>& data() const noexcept { return data_; }

 protected:
  double loss_impl(const ModelVector& x) const override;
  ModelVector gradient_impl(const ModelVector& x) const override;
  ModelVector stochastic_gradient_impl(const ModelVector& x,
                                       std::size_t batch_size,
                                       RngStream& rng) const override;

  /// Loss of one sample; accumulates its gradient into grad if non-null.
  virtual double sample_loss(const ModelVector& x, const LabeledPoint& s,
                             ModelVector* grad) const = 0;

 private:
  std::vector<LabeledPoint> data_;
  std::size_t features_ = 0;
};

/// Linear logistic regression without bias: f(x; a, b) = log(1 + exp(-b a.x)).
class LogisticRegression final : public DatasetObjective {
 public:
  explicit LogisticRegression(std::vector<LabeledPoint> data);

  ObjectiveKind kind() const noexcept override {
    return ObjectiveKind::kLogistic;
  }
  std::size_t dimension() const noexcept override {
    return feature_dimension();
  }
  std::optional<double> smoothness_bound() const noexcept override {
    return smoothness_;
  }
  ModelVector initial_point() const override;

 protected:
  double sample_loss(const ModelVector& x, const LabeledPoint& s,
                     ModelVector* grad) const override;

 private:
  double smoothness_ = 0.0;
};

/// One-hidden-layer tanh network with a scalar logit output and logistic
/// loss. Parameter layout: W1 (hidden x features, row-major), b1 (hidden),
/// w2 (hidden), b2.
class TinyMlp final : public DatasetObjective {
 public:
  TinyMlp(std::vector<LabeledPoint> data, std::size_t hidden_units,
          std::uint64_t init_seed);

  ObjectiveKind kind() const noexcept override {
    return ObjectiveKind::kTinyMlp;
  }
  std::size_t dimension() const noexcept override;
  std::optional<double> smoothness_bound() const noexcept override {
    return std::nullopt;
  }
  /// Small Gaussian weights; zero is a saddle for tanh units.
  ModelVector initial_point() const override;
  std::size_t hidden_units() const noexcept { return hidden_; }

 protected:
  double sample_loss(const ModelVector& x, const LabeledPoint& s,
                     ModelVector* grad) const override;

 private:
  std::size_t hidden_;
  std::uint64_t init_seed_;
};

inline constexpr std::size_t kMaxHiddenUnits = 32;

/// Builds the objective described by spec. Dataset kinds draw
/// make_gaussian_clusters(n_points, dimension, data_seed).
std::unique_ptr<Objective> make_objective(const ObjectiveSpec& spec);

}  // namespace adacomm
