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

#ifndef BACS_SENSING_HPP_
#define BACS_SENSING_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "bacs/config.hpp"
#include "bacs/frame.hpp"

namespace bacs {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Block measurement matrix with orthonormal rows. Row 0 is the constant
// 1/B row, so measurement 0 of a block is B times its mean. The operator is
// nested: its first M rows form the operator for any smaller row count M,
// which is how a measurement taken at the high rate is later down-rated.
class SamplingOperator {
 public:
  SamplingOperator(std::uint64_t seed, int block_size, RowMatrix rows)
      : seed_(seed), block_size_(block_size), rows_(std::move(rows)) {}

  std::uint64_t seed() const { return seed_; }
  int block_size() const { return block_size_; }
  int block_pixels() const { return block_size_ * block_size_; }
  int max_rows() const { return static_cast<int>(rows_.rows()); }
  const RowMatrix& rows() const { return rows_; }

 private:
  std::uint64_t seed_;
  int block_size_;
  RowMatrix rows_;
};

// Deterministic in (seed, block_size, high_sr): Gaussian rows drawn from a
// seeded mt19937_64 are orthonormalized against the fixed DC row and each
// other in order. Throws ConfigError when floor(high_sr * B^2) < 2.
SamplingOperator BuildOperator(const CodecConfig& cfg, std::uint64_t seed);
SamplingOperator BuildOperator(int block_size, int rows, std::uint64_t seed);

// y = Phi_M x for the first `rows` rows. Throws InvalidArgument when rows is
// outside [1, max_rows] or the block has the wrong length.
std::vector<double> MeasureBlock(const SamplingOperator& op,
                                 std::span<const double> block, int rows);

// Every block of `frame` measured with the first `rows` rows.
std::vector<std::vector<double>> MeasureFrame(const SamplingOperator& op,
                                              const Frame& frame, int rows);

// Length of the low-frequency prefix kept for detection:
// max(1, floor(cut_fraction * rows)).
int CutLength(int rows, double cut_fraction);

// First CutLength(M_b) entries of each block's measurements. Throws
// InvalidArgument if any block has no measurements.
std::vector<std::vector<double>> CutMeasurements(
    std::span<const std::vector<double>> per_block, double cut_fraction);
std::vector<std::vector<double>> CutMeasurements(const MeasurementSet& mset,
                                                 double cut_fraction);

}  // namespace bacs

#endif  // BACS_SENSING_HPP_
