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

#include "adacomm/objectives.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace adacomm {

namespace {

// log(1 + exp(-z)) without overflow.
double softplus_neg(double z) {
  return z > 0.0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
}

// 1 / (1 + exp(z)), the derivative of softplus_neg up to sign.
double sigmoid_neg(double z) {
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

}  // namespace

std::string_view to_string(ObjectiveKind kind) noexcept {
  switch (kind) {
    case ObjectiveKind::kNoisyQuadratic:
      return "noisy_quadratic";
    case ObjectiveKind::kLogistic:
      return "logistic";
    case ObjectiveKind::kTinyMlp:
      return "tiny_mlp";
  }
  return "unknown";
}

std::optional<ObjectiveKind> parse_objective_kind(std::string_view name) {
  if (name == "noisy_quadratic") return ObjectiveKind::kNoisyQuadratic;
  if (name == "logistic") return ObjectiveKind::kLogistic;
  if (name == "tiny_mlp") return ObjectiveKind::kTinyMlp;
  return std::nullopt;
}

std::vector<LabeledPoint> make_gaussian_clusters(std::size_t n_points,
                                                 std::size_t features,
                                                 std::uint64_t seed) {
  if (n_points == 0 || features == 0) {
    throw std::invalid_argument(
        "make_gaussian_clusters: n_points and features must be positive");
  }
  RngStream rng = RngStream::substream(seed, StreamTag::kData);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double mu = 1.0 / std::sqrt(static_cast<double>(features));

  std::vector<LabeledPoint> data(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    LabeledPoint& p = data[i];
    p.label = (i % 2 == 0) ? 1.0 : -1.0;
    p.features.resize(features);
    for (double& f : p.features) f = p.label * mu + normal(rng);
  }
  return data;
}

// --- Objective -------------------------------------------------------------

double Objective::evaluate_loss(const ModelVector& x) const {
  require_same_dimension(dimension(), x.size(), "evaluate_loss");
  return loss_impl(x);
}

ModelVector Objective::full_gradient(const ModelVector& x) const {
  require_same_dimension(dimension(), x.size(), "full_gradient");
  return gradient_impl(x);
}

ModelVector Objective::stochastic_gradient(const ModelVector& x,
                                           std::size_t batch_size,
                                           RngStream& rng) const {
  require_same_dimension(dimension(), x.size(), "stochastic_gradient");
  if (batch_size == 0) {
    throw std::invalid_argument("stochastic_gradient: batch_size must be >= 1");
  }
  if (auto n = dataset_size(); n && batch_size > *n) {
    throw std::invalid_argument("stochastic_gradient: batch_size " +
                                std::to_string(batch_size) +
                                " exceeds dataset size " + std::to_string(*n));
  }
  return stochastic_gradient_impl(x, batch_size, rng);
}

// --- NoisyQuadratic --------------------------------------------------------

NoisyQuadratic::NoisyQuadratic(std::size_t dimension, NoiseParams noise)
    : dimension_(dimension), noise_(noise) {
  if (dimension == 0) {
    throw std::invalid_argument("NoisyQuadratic: dimension must be >= 1");
  }
  if (!(noise.slope >= 0.0) || !(noise.variance >= 0.0) ||
      !std::isfinite(noise.slope) || !std::isfinite(noise.variance)) {
    throw std::invalid_argument("NoisyQuadratic: M and C must be finite and >= 0");
  }
}

ModelVector NoisyQuadratic::initial_point() const {
  return ModelVector(dimension_, 1.0);
}

double NoisyQuadratic::loss_impl(const ModelVector& x) const {
  return 0.5 * x.squared_norm();
}

ModelVector NoisyQuadratic::gradient_impl(const ModelVector& x) const {
  return x;
}

ModelVector NoisyQuadratic::stochastic_gradient_impl(const ModelVector& x,
                                                     std::size_t batch_size,
                                                     RngStream& rng) const {
  ModelVector g = x;
  const double total_variance =
      (noise_.slope * x.squared_norm() + noise_.variance) /
      static_cast<double>(batch_size);
  if (total_variance == 0.0) return g;

  const double sigma =
      std::sqrt(total_variance / static_cast<double>(dimension_));
  std::normal_distribution<double> normal(0.0, sigma);
  for (double& v : g) v += normal(rng);
  return g;
}

// --- DatasetObjective ------------------------------------------------------

DatasetObjective::DatasetObjective(std::vector<LabeledPoint> data)
    : data_(std::move(data)) {
  if (data_.empty()) {
    throw std::invalid_argument("dataset objective: empty dataset");
  }
  features_ = data_.front().features.size();
  if (features_ == 0) {
    throw std::invalid_argument("dataset objective: zero-length features");
  }
  for (const auto& p : data_) {
    if (p.features.size() != features_) {
      throw std::invalid_argument("dataset objective: ragged feature rows");
    }
    if (p.label != 1.0 && p.label != -1.0) {
      throw std::invalid_argument("dataset objective: labels must be +1 or -1");
    }
  }
}

double DatasetObjective::loss_impl(const ModelVector& x) const {
  double acc = 0.0;
  for (const auto& s : data_) acc += sample_loss(x, s, nullptr);
  return acc / static_cast<double>(data_.size());
}

ModelVector DatasetObjective::gradient_impl(const ModelVector& x) const {
  ModelVector grad(x.size(), 0.0);
  for (const auto& s : data_) sample_loss(x, s, &grad);
  grad.scale(1.0 / static_cast<double>(data_.size()));
  return grad;
}

ModelVector DatasetObjective::stochastic_gradient_impl(const ModelVector& x,
                                                       std::size_t batch_size,
                                                       RngStream& rng) const {
  // Partial Fisher-Yates: the first batch_size slots hold a uniform sample
  // without replacement.
  std::vector<std::size_t> idx(data_.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < batch_size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  ModelVector grad(x.size(), 0.0);
  for (std::size_t i = 0; i < batch_size; ++i) {
    sample_loss(x, data_[idx[i]], &grad);
  }
  grad.scale(1.0 / static_cast<double>(batch_size));
  return grad;
}

// --- LogisticRegression ----------------------------------------------------

LogisticRegression::LogisticRegression(std::vector<LabeledPoint> data)
    : DatasetObjective(std::move(data)) {
  // Hessian is (1/N) sum sigma(1-sigma) a a^T <= (1/4N) sum ||a||^2 I.
  double acc = 0.0;
  for (const auto& s : this->data()) {
    for (double f : s.features) acc += f * f;
  }
  smoothness_ = acc / (4.0 * static_cast<double>(this->data().size()));
}

ModelVector LogisticRegression::initial_point() const {
  return ModelVector(dimension(), 0.0);
}

double LogisticRegression::sample_loss(const ModelVector& x,
                                       const LabeledPoint& s,
                                       ModelVector* grad) const {
  double margin = 0.0;
  for (std::size_t j = 0; j < s.features.size(); ++j) {
    margin += x[j] * s.features[j];
  }
  margin *= s.label;
  if (grad != nullptr) {
    const double coeff = -s.label * sigmoid_neg(margin);
    for (std::size_t j = 0; j < s.features.size(); ++j) {
      (*grad)[j] += coeff * s.features[j];
    }
  }
  return softplus_neg(margin);
}

// --- TinyMlp ---------------------------------------------------------------

TinyMlp::TinyMlp(std::vector<LabeledPoint> data, std::size_t hidden_units,
                 std::uint64_t init_seed)
    : DatasetObjective(std::move(data)),
      hidden_(hidden_units),
      init_seed_(init_seed) {
  if (hidden_units == 0 || hidden_units > kMaxHiddenUnits) {
    throw std::invalid_argument("TinyMlp: hidden_units must be in [1, " +
                                std::to_string(kMaxHiddenUnits) + "]");
  }
}

std::size_t TinyMlp::dimension() const noexcept {
  return hidden_ * feature_dimension() + 2 * hidden_ + 1;
}

ModelVector TinyMlp::initial_point() const {
  RngStream rng = RngStream::substream(init_seed_, StreamTag::kInit);
  std::normal_distribution<double> normal(0.0, 0.5);
  std::vector<double> w(dimension());
  for (double& v : w) v = normal(rng);
  return ModelVector(std::move(w));
}

double TinyMlp::sample_loss(const ModelVector& x, const LabeledPoint& s,
                            ModelVector* grad) const {
  const std::size_t p = feature_dimension();
  const std::size_t w1 = 0;
  const std::size_t b1 = hidden_ * p;
  const std::size_t w2 = b1 + hidden_;
  const std::size_t b2 = w2 + hidden_;

  std::array<double, kMaxHiddenUnits> act{};
  double out = x[b2];
  for (std::size_t h = 0; h < hidden_; ++h) {
    double z = x[b1 + h];
    for (std::size_t j = 0; j < p; ++j) z += x[w1 + h * p + j] * s.features[j];
    act[h] = std::tanh(z);
    out += x[w2 + h] * act[h];
  }
  const double margin = s.label * out;

  if (grad != nullptr) {
    const double dout = -s.label * sigmoid_neg(margin);
    (*grad)[b2] += dout;
    for (std::size_t h = 0; h < hidden_; ++h) {
      (*grad)[w2 + h] += dout * act[h];
      const double dz = dout * x[w2 + h] * (1.0 - act[h] * act[h]);
      (*grad)[b1 + h] += dz;
      for (std::size_t j = 0; j < p; ++j) {
        (*grad)[w1 + h * p + j] += dz * s.features[j];
      }
    }
  }
  return softplus_neg(margin);
}

// --- factory ---------------------------------------------------------------

std::unique_ptr<Objective> make_objective(const ObjectiveSpec& spec) {
  switch (spec.kind) {
    case ObjectiveKind::kNoisyQuadratic:
      return std::make_unique<NoisyQuadratic>(spec.dimension, spec.noise);
    case ObjectiveKind::kLogistic:
      return std::make_unique<LogisticRegression>(
          make_gaussian_clusters(spec.n_points, spec.dimension, spec.data_seed));
    case ObjectiveKind::kTinyMlp:
      return std::make_unique<TinyMlp>(
          make_gaussian_clusters(spec.n_points, spec.dimension, spec.data_seed),
          spec.hidden_units, spec.data_seed);
  }
  throw std::invalid_argument("make_objective: unknown kind");
}

}  // namespace adacomm
