/*
 * Copyright 2026 The BACS Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "bacs/sensing.hpp"

#include <gtest/gtest.h>

#include <random>

#include "bacs/error.hpp"
#include "support/oracles.hpp"

namespace bacs {
namespace {

using testing::DenseMatVec;
using testing::RandomVector;

TEST(SensingTest, RowCountFromHighRate) {
  CodecConfig cfg;
  const SamplingOperator op = BuildOperator(cfg, 1);
  EXPECT_EQ(op.max_rows(), 204);
  EXPECT_EQ(op.block_pixels(), 1024);
}

TEST(SensingTest, FirstRowIsBlockMean) {
  const SamplingOperator op = BuildOperator(32, 204, 3);
  for (int c = 0; c < 1024; ++c) EXPECT_DOUBLE_EQ(op.rows()(0, c), 1.0 / 32);
  // y_0 of a constant block c is c * B^2 / B = 32 c.
  const std::vector<double> block(1024, 100.0);
  EXPECT_NEAR(MeasureBlock(op, block, 1)[0], 3200.0, 1e-9);
}

TEST(SensingTest, RowsAreOrthonormal) {
  const SamplingOperator op = BuildOperator(32, 204, 11);
  const Eigen::MatrixXd gram = op.rows() * op.rows().transpose();
  const double residual =
      (gram - Eigen::MatrixXd::Identity(204, 204)).cwiseAbs().maxCoeff();
  EXPECT_LE(residual, 1e-6);
}

TEST(SensingTest, SameSeedSameOperator) {
  const SamplingOperator a = BuildOperator(16, 50, 42);
  const SamplingOperator b = BuildOperator(16, 50, 42);
  const SamplingOperator c = BuildOperator(16, 50, 43);
  EXPECT_EQ(a.rows(), b.rows());
  EXPECT_NE(a.rows(), c.rows());
}

// Rows are nested: a smaller operator with the same seed is a prefix.
TEST(SensingTest, OperatorIsNested) {
  const SamplingOperator big = BuildOperator(16, 80, 9);
  const SamplingOperator small = BuildOperator(16, 20, 9);
  EXPECT_EQ(small.rows(), big.rows().topRows(20));
}

TEST(SensingTest, MatchesDenseProduct) {
  const SamplingOperator op = BuildOperator(8, 20, 5);
  std::mt19937_64 rng(1);
  const std::vector<double> x = RandomVector(rng, 64);
  const std::vector<double> dense(op.rows().data(),
                                  op.rows().data() + op.rows().size());
  const std::vector<double> want = DenseMatVec(dense, 20, 64, x);
  const std::vector<double> got = MeasureBlock(op, x, 20);
  for (int i = 0; i < 20; ++i) EXPECT_NEAR(got[i], want[i], 1e-9);
}

TEST(SensingTest, LinearityAndPrefixProperty) {
  const SamplingOperator op = BuildOperator(32, 204, 17);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_int_distribution<int> rows(1, 204);
  for (int trial = 0; trial < 25; ++trial) {
    const auto x1 = RandomVector(rng, 1024);
    const auto x2 = RandomVector(rng, 1024);
    const double a = coef(rng);
    const double b = coef(rng);
    std::vector<double> mix(1024);
    for (int i = 0; i < 1024; ++i) mix[i] = a * x1[i] + b * x2[i];
    const auto y1 = MeasureBlock(op, x1, 204);
    const auto y2 = MeasureBlock(op, x2, 204);
    const auto ym = MeasureBlock(op, mix, 204);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 204; ++i) {
      const double want = a * y1[i] + b * y2[i];
      num += (ym[i] - want) * (ym[i] - want);
      den += want * want;
    }
    EXPECT_LE(std::sqrt(num / den), 1e-5);

    const int r = rows(rng);
    const auto prefix = MeasureBlock(op, x1, r);
    for (int i = 0; i < r; ++i) ASSERT_EQ(prefix[i], y1[i]);
  }
}

TEST(SensingTest, RejectsBadArguments) {
  EXPECT_THROW(BuildOperator(32, 1, 0), ConfigError);
  EXPECT_THROW(BuildOperator(8, 65, 0), ConfigError);
  const SamplingOperator op = BuildOperator(8, 10, 0);
  const std::vector<double> x(64, 1.0);
  EXPECT_THROW(MeasureBlock(op, x, 0), InvalidArgument);
  EXPECT_THROW(MeasureBlock(op, x, 11), InvalidArgument);
  EXPECT_THROW(MeasureBlock(op, std::vector<double>(63), 5), InvalidArgument);
}

TEST(SensingTest, MeasureFrameVisitsEveryBlock) {
  const SamplingOperator op = BuildOperator(8, 10, 4);
  Image img(20, 12);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = i % 97;
  const Frame f = PadFrame(img, 8);
  const auto ys = MeasureFrame(op, f, 6);
  ASSERT_EQ(ys.size(), 6u);
  for (int b = 0; b < 6; ++b) EXPECT_EQ(ys[b], MeasureBlock(op, BlockView(f, b), 6));
  EXPECT_THROW(MeasureFrame(op, PadFrame(img, 16), 6), InvalidArgument);
}

TEST(SensingTest, CutLengths) {
  EXPECT_EQ(CutLength(204, 0.25), 51);
  EXPECT_EQ(CutLength(51, 0.25), 12);
  EXPECT_EQ(CutLength(3, 0.25), 1);
  EXPECT_EQ(CutLength(1, 0.25), 1);
  EXPECT_EQ(CutLength(10, 1.0), 10);
}

TEST(SensingTest, CutKeepsPrefix) {
  const std::vector<std::vector<double>> ys = {{1, 2, 3, 4, 5, 6, 7, 8},
                                               {9, 8}};
  const auto cut = CutMeasurements(ys, 0.25);
  EXPECT_EQ(cut[0], (std::vector<double>{1, 2}));
  EXPECT_EQ(cut[1], (std::vector<double>{9}));
  EXPECT_THROW(CutMeasurements(std::vector<std::vector<double>>{{}}, 0.25),
               InvalidArgument);
}

}  // namespace
}  // namespace bacs
