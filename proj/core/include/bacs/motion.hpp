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

#ifndef BACS_MOTION_HPP_
#define BACS_MOTION_HPP_

#include <span>
#include <vector>

#include "bacs/frame.hpp"

namespace bacs {

// Low-frequency measurement prefixes of two consecutive frames. Both sides
// must have the same block count and the same per-block length.
struct DetectionInput {
  std::span<const std::vector<double>> prev_cut;
  std::span<const std::vector<double>> curr_cut;
  int block_size = 32;
  double threshold = 0.0;
};

// Mean absolute difference of each block's cut measurements, divided by the
// block size so that a DC change of d gray levels scores about d / k.
std::vector<double> BlockScores(const DetectionInput& input);

// A block moves when its score is strictly above the threshold.
BlockMap Classify(std::span<const double> scores, double threshold);

inline BlockMap DetectMovingBlocks(const DetectionInput& input) {
  return Classify(BlockScores(input), input.threshold);
}

}  // namespace bacs

#endif  // BACS_MOTION_HPP_
