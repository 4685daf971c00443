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

#ifndef BACS_RECONSTRUCTION_HPP_
#define BACS_RECONSTRUCTION_HPP_

#include <span>
#include <utility>
#include <vector>

#include "bacs/config.hpp"
#include "bacs/dct.hpp"
#include "bacs/frame.hpp"
#include "bacs/sensing.hpp"

namespace bacs {

// Decoder-side memory of the most recently transmitted measurements of each
// block position.
class ReferenceBuffer {
 public:
  ReferenceBuffer() = default;
  explicit ReferenceBuffer(int block_count) : blocks_(block_count) {}

  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<float>& block(int index) const { return blocks_[index]; }
  int rows(int index) const { return static_cast<int>(blocks_[index].size()); }
  const std::vector<std::vector<float>>& blocks() const { return blocks_; }

  void Refresh(int index, std::vector<float> measurements) {
    blocks_[index] = std::move(measurements);
  }

  friend bool operator==(const ReferenceBuffer&,
                         const ReferenceBuffer&) = default;

 private:
  std::vector<std::vector<float>> blocks_;
};

struct AssembleResult {
  // Full-frame measurements: moving blocks from the new set, the rest
  // borrowed from the reference.
  std::vector<std::vector<float>> measurements;
  ReferenceBuffer updated;
};

// Throws InvalidArgument when the block counts disagree or a moving block
// carries no measurements.
AssembleResult Assemble(const ReferenceBuffer& ref, const MeasurementSet& mset);

struct SolverOptions {
  int iterations = 60;
  double step_size = 1.0;
  double shrink_init = 20.0;
  double shrink_decay = 0.9;

  static SolverOptions FromConfig(const CodecConfig& cfg);
};

struct SolverTrace {
  // ||Phi x - y'||_2 over all blocks: entry 0 for the adjoint start, then one
  // entry after every iteration.
  std::vector<double> residuals;
};

// Proximal-gradient recovery. Each iteration takes a gradient step on
// 1/2 ||Phi_b x_b - y'_b||^2 block by block (each block uses its own row
// count), then soft-thresholds the 2-D DCT of the whole padded frame with
// lambda_k = shrink_init * shrink_decay^k. The frame-wide transform couples
// neighbouring blocks and suppresses blocking artifacts.
class Reconstructor {
 public:
  Reconstructor(const SamplingOperator& op, int width, int height,
                SolverOptions options);

  // Throws InvalidArgument on a block with zero rows, more rows than the
  // operator, or non-finite values. Output is clamped to [0, 255].
  Frame Reconstruct(std::span<const std::vector<float>> measurements,
                    SolverTrace* trace = nullptr);

  const SolverOptions& options() const { return options_; }

 private:
  const SamplingOperator& op_;
  int width_;
  int height_;
  int padded_width_;
  int padded_height_;
  SolverOptions options_;
  Dct2d dct_;
};

Frame Reconstruct(const SamplingOperator& op,
                  std::span<const std::vector<float>> measurements, int width,
                  int height, const CodecConfig& cfg,
                  SolverTrace* trace = nullptr);

// Phi_b^T (Phi_b x_b - y_b) for every block, where Phi_b is the first
// y_b.size() rows. Exposed for gradient checks.
std::vector<std::vector<double>> DataFidelityGradient(
    const SamplingOperator& op, std::span<const std::vector<double>> blocks,
    std::span<const std::vector<double>> measurements);

// 1/2 sum_b ||Phi_b x_b - y_b||^2.
double DataFidelity(const SamplingOperator& op,
                    std::span<const std::vector<double>> blocks,
                    std::span<const std::vector<double>> measurements);

}  // namespace bacs

#endif  // BACS_RECONSTRUCTION_HPP_
