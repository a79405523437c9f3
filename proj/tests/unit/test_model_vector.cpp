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

#include <cmath>
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

#include "adacomm/model_vector.hpp"
#include "adacomm/rng.hpp"

namespace adacomm {
namespace {

TEST(ModelVector, RejectsNonFiniteValues) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(ModelVector({1.0, nan}), std::invalid_argument);
  EXPECT_THROW(ModelVector(std::vector<double>{inf}), std::invalid_argument);
  EXPECT_THROW(ModelVector(3, nan), std::invalid_argument);
  EXPECT_NO_THROW(ModelVector({0.0, -1.5}));
}

TEST(ModelVector, Arithmetic) {
  ModelVector x{1.0, 2.0};
  const ModelVector y{3.0, -1.0};
  EXPECT_DOUBLE_EQ(x.dot(y), 1.0);
  EXPECT_DOUBLE_EQ(x.squared_norm(), 5.0);
  x.axpy(2.0, y);
  EXPECT_EQ(x, (ModelVector{7.0, 0.0}));
  x.scale(0.5);
  EXPECT_EQ(x, (ModelVector{3.5, 0.0}));
  x.fill(1.0);
  EXPECT_EQ(x, (ModelVector{1.0, 1.0}));
}

TEST(ModelVector, DimensionMismatchThrows) {
  ModelVector x(2);
  const ModelVector y(3);
  EXPECT_THROW(x.axpy(1.0, y), std::invalid_argument);
  EXPECT_THROW((void)x.dot(y), std::invalid_argument);
}

TEST(Rng, SubstreamsAreReproducibleAndDistinct) {
  auto a = RngStream::substream(7, StreamTag::kWorker, {1, 2});
  auto b = RngStream::substream(7, StreamTag::kWorker, {1, 2});
  auto c = RngStream::substream(7, StreamTag::kWorker, {2, 1});
  auto d = RngStream::substream(7, StreamTag::kDelay, {1, 2});
  const auto va = a();
  EXPECT_EQ(va, b());
  EXPECT_NE(va, c());
  EXPECT_NE(va, d());
}

TEST(Rng, Uniform01InUnitInterval) {
  RngStream rng(42);
  double sum = 0.0;
  constexpr int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  // mean 1/2, sd of the mean sqrt(1/12 / n)
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

}  // namespace
}  // namespace adacomm
