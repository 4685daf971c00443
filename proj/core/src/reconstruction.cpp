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

#include "bacs/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bacs/error.hpp"

namespace bacs {
namespace {

// Block b of a padded row-major image becomes column b of a B^2 x l matrix.
void ImageToBlocks(std::span<const double> image, int padded_width,
                   int block_size, Eigen::MatrixXd& blocks) {
  const int bx = padded_width / block_size;
  for (Eigen::Index b = 0; b < blocks.cols(); ++b) {
    const int x0 = static_cast<int>(b % bx) * block_size;
    const int y0 = static_cast<int>(b / bx) * block_size;
    double* col = blocks.col(b).data();
    for (int y = 0; y < block_size; ++y) {
      const double* row =
          image.data() + static_cast<std::size_t>(y0 + y) * padded_width + x0;
      std::copy_n(row, block_size, col + y * block_size);
    }
  }
}

void BlocksToImage(const Eigen::MatrixXd& blocks, int padded_width,
                   int block_size, std::span<double> image) {
  const int bx = padded_width / block_size;
  for (Eigen::Index b = 0; b < blocks.cols(); ++b) {
    const int x0 = static_cast<int>(b % bx) * block_size;
    const int y0 = static_cast<int>(b / bx) * block_size;
    const double* col = blocks.col(b).data();
    for (int y = 0; y < block_size; ++y) {
      std::copy_n(col + y * block_size, block_size,
                  image.data() +
                      static_cast<std::size_t>(y0 + y) * padded_width + x0);
    }
  }
}

// Phi x - y with rows beyond each block's own count zeroed.
void MaskedResidual(const RowMatrix& phi, const Eigen::MatrixXd& x,
                    const Eigen::MatrixXd& y, std::span<const int> rows,
                    Eigen::MatrixXd& residual) {
  residual.noalias() = phi * x;
  residual -= y;
  const Eigen::Index max_rows = residual.rows();
  for (Eigen::Index b = 0; b < residual.cols(); ++b) {
    if (rows[b] < max_rows) {
      residual.col(b).tail(max_rows - rows[b]).setZero();
    }
  }
}

}  // namespace

AssembleResult Assemble(const ReferenceBuffer& ref,
                        const MeasurementSet& mset) {
  if (mset.block_map.size() != ref.block_count() ||
      mset.block_count() != ref.block_count()) {
    throw InvalidArgument("measurement set has " +
                          std::to_string(mset.block_count()) +
                          " blocks, reference buffer has " +
                          std::to_string(ref.block_count()));
  }
  AssembleResult out{ref.blocks(), ref};
  for (int b = 0; b < ref.block_count(); ++b) {
    if (!mset.block_map.moving(b)) continue;
    if (mset.per_block[b].empty()) {
      throw InvalidArgument("moving block " + std::to_string(b) +
                            " carries no measurements");
    }
    out.measurements[b] = mset.per_block[b];
    out.updated.Refresh(b, mset.per_block[b]);
  }
  return out;
}

SolverOptions SolverOptions::FromConfig(const CodecConfig& cfg) {
  return SolverOptions{cfg.solver_iterations, cfg.step_size, cfg.shrink_init,
                       cfg.shrink_decay};
}

Reconstructor::Reconstructor(const SamplingOperator& op, int width,
                             int height, SolverOptions options)
    : op_(op),
      width_(width),
      height_(height),
      padded_width_(PaddedExtent(width, op.block_size())),
      padded_height_(PaddedExtent(height, op.block_size())),
      options_(options),
      dct_(padded_width_, padded_height_) {}

Frame Reconstructor::Reconstruct(
    std::span<const std::vector<float>> measurements, SolverTrace* trace) {
  const int block_size = op_.block_size();
  const int block_count = BlockCount(width_, height_, block_size);
  if (static_cast<int>(measurements.size()) != block_count) {
    throw InvalidArgument("expected " + std::to_string(block_count) +
                          " blocks of measurements, got " +
                          std::to_string(measurements.size()));
  }
  std::vector<int> rows(block_count);
  int max_rows = 0;
  for (int b = 0; b < block_count; ++b) {
    rows[b] = static_cast<int>(measurements[b].size());
    if (rows[b] == 0) {
      throw InvalidArgument("block " + std::to_string(b) +
                            " has no measurements");
    }
    if (rows[b] > op_.max_rows()) {
      throw InvalidArgument("block " + std::to_string(b) +
                            " has more rows than the operator");
    }
    for (float v : measurements[b]) {
      if (!std::isfinite(v)) {
        throw InvalidArgument("non-finite measurement in block " +
                              std::to_string(b));
      }
    }
    max_rows = std::max(max_rows, rows[b]);
  }

  const RowMatrix phi = op_.rows().topRows(max_rows);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(max_rows, block_count);
  for (int b = 0; b < block_count; ++b) {
    for (int j = 0; j < rows[b]; ++j) y(j, b) = measurements[b][j];
  }

  // Adjoint start; y is zero past each block's row count.
  Eigen::MatrixXd x = phi.transpose() * y;
  Eigen::MatrixXd residual(max_rows, block_count);
  std::vector<double> image(static_cast<std::size_t>(padded_width_) *
                            padded_height_);
  if (trace != nullptr) trace->residuals.clear();

  double lambda = options_.shrink_init;
  for (int k = 0; k < options_.iterations; ++k) {
    MaskedResidual(phi, x, y, rows, residual);
    if (trace != nullptr) trace->residuals.push_back(residual.norm());
    x.noalias() -= options_.step_size * (phi.transpose() * residual);

    BlocksToImage(x, padded_width_, block_size, image);
    dct_.Forward(image, image);
    SoftThreshold(image, lambda);
    dct_.Inverse(image, image);
    ImageToBlocks(image, padded_width_, block_size, x);
    lambda *= options_.shrink_decay;
  }
  if (trace != nullptr) {
    MaskedResidual(phi, x, y, rows, residual);
    trace->residuals.push_back(residual.norm());
  }

  x = x.cwiseMax(0.0).cwiseMin(255.0);
  std::vector<std::vector<double>> blocks(block_count);
  for (int b = 0; b < block_count; ++b) {
    blocks[b].assign(x.col(b).data(), x.col(b).data() + x.rows());
  }
  return FrameFromBlocks(width_, height_, block_size, blocks);
}

Frame Reconstruct(const SamplingOperator& op,
                  std::span<const std::vector<float>> measurements, int width,
                  int height, const CodecConfig& cfg, SolverTrace* trace) {
  Reconstructor solver(op, width, height, SolverOptions::FromConfig(cfg));
  return solver.Reconstruct(measurements, trace);
}

std::vector<std::vector<double>> DataFidelityGradient(
    const SamplingOperator& op, std::span<const std::vector<double>> blocks,
    std::span<const std::vector<double>> measurements) {
  if (blocks.size() != measurements.size()) {
    throw InvalidArgument("block and measurement counts differ");
  }
  std::vector<std::vector<double>> grad(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const int m = static_cast<int>(measurements[b].size());
    const auto phi = op.rows().topRows(m);
    const Eigen::Map<const Eigen::VectorXd> x(
        blocks[b].data(), static_cast<Eigen::Index>(blocks[b].size()));
    const Eigen::Map<const Eigen::VectorXd> y(measurements[b].data(), m);
    const Eigen::VectorXd g = phi.transpose() * (phi * x - y);
    grad[b].assign(g.data(), g.data() + g.size());
  }
  return grad;
}

double DataFidelity(const SamplingOperator& op,
                    std::span<const std::vector<double>> blocks,
                    std::span<const std::vector<double>> measurements) {
  if (blocks.size() != measurements.size()) {
    throw InvalidArgument("block and measurement counts differ");
  }
  double total = 0.0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const int m = static_cast<int>(measurements[b].size());
    const Eigen::Map<const Eigen::VectorXd> x(
        blocks[b].data(), static_cast<Eigen::Index>(blocks[b].size()));
    const Eigen::Map<const Eigen::VectorXd> y(measurements[b].data(), m);
    total += 0.5 * (op.rows().topRows(m) * x - y).squaredNorm();
  }
  return total;
}

}  // namespace bacs
