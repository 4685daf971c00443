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

#include <algorithm>
#include <cmath>
#include <string>

#include "bacs/error.hpp"
#include "gaussian.hpp"

namespace bacs {
using internal::GaussianSource;

SamplingOperator BuildOperator(const CodecConfig& cfg, std::uint64_t seed) {
  return BuildOperator(cfg.block_size, cfg.HighRows(), seed);
}

SamplingOperator BuildOperator(int block_size, int rows, std::uint64_t seed) {
  const int n = block_size * block_size;
  if (block_size <= 0 || rows < 2) {
    throw ConfigError("sampling operator needs at least 2 rows");
  }
  if (rows > n) throw ConfigError("sampling operator has more rows than B^2");

  RowMatrix phi(rows, n);
  phi.row(0).setConstant(1.0 / block_size);

  GaussianSource gauss(seed);
  Eigen::RowVectorXd v(n);
  for (int j = 1; j < rows; ++j) {
    // Redraw in the (practically impossible) event of a dependent sample.
    for (;;) {
      for (int c = 0; c < n; ++c) v[c] = gauss.Next();
      // Two Gram-Schmidt passes keep the rows orthonormal to ~1e-15.
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i < j; ++i) v -= v.dot(phi.row(i)) * phi.row(i);
      }
      const double norm = v.norm();
      if (norm > 1e-8) {
        phi.row(j) = v / norm;
        break;
      }
    }
  }
  return SamplingOperator(seed, block_size, std::move(phi));
}

std::vector<double> MeasureBlock(const SamplingOperator& op,
                                 std::span<const double> block, int rows) {
  if (rows < 1 || rows > op.max_rows()) {
    throw InvalidArgument("row count " + std::to_string(rows) +
                          " outside [1, " + std::to_string(op.max_rows()) +
                          "]");
  }
  if (static_cast<int>(block.size()) != op.block_pixels()) {
    throw InvalidArgument("block length does not match operator");
  }
  const Eigen::Map<const Eigen::VectorXd> x(block.data(),
                                            static_cast<Eigen::Index>(
                                                block.size()));
  std::vector<double> y(rows);
  Eigen::Map<Eigen::VectorXd>(y.data(), rows).noalias() =
      op.rows().topRows(rows) * x;
  return y;
}

std::vector<std::vector<double>> MeasureFrame(const SamplingOperator& op,
                                              const Frame& frame, int rows) {
  if (frame.block_size() != op.block_size()) {
    throw InvalidArgument("frame block size does not match operator");
  }
  std::vector<std::vector<double>> out;
  out.reserve(frame.block_count());
  for (int b = 0; b < frame.block_count(); ++b) {
    out.push_back(MeasureBlock(op, BlockView(frame, b), rows));
  }
  return out;
}

int CutLength(int rows, double cut_fraction) {
  return std::max(1, static_cast<int>(std::floor(cut_fraction * rows)));
}

std::vector<std::vector<double>> CutMeasurements(
    std::span<const std::vector<double>> per_block, double cut_fraction) {
  std::vector<std::vector<double>> out;
  out.reserve(per_block.size());
  for (std::size_t b = 0; b < per_block.size(); ++b) {
    const auto& y = per_block[b];
    if (y.empty()) {
      throw InvalidArgument("block " + std::to_string(b) +
                            " has no measurements to cut");
    }
    const int k = std::min(CutLength(static_cast<int>(y.size()), cut_fraction),
                           static_cast<int>(y.size()));
    out.emplace_back(y.begin(), y.begin() + k);
  }
  return out;
}

std::vector<std::vector<double>> CutMeasurements(const MeasurementSet& mset,
                                                 double cut_fraction) {
  std::vector<std::vector<double>> wide;
  wide.reserve(mset.per_block.size());
  for (const auto& y : mset.per_block) wide.emplace_back(y.begin(), y.end());
  return CutMeasurements(wide, cut_fraction);
}

}  // namespace bacs
