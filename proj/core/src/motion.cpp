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

#include "bacs/motion.hpp"

#include <cmath>
#include <string>

#include "bacs/error.hpp"

namespace bacs {

std::vector<double> BlockScores(const DetectionInput& input) {
  if (input.prev_cut.size() != input.curr_cut.size()) {
    throw InvalidArgument("detection inputs have different block counts");
  }
  if (input.block_size <= 0) throw InvalidArgument("invalid block size");
  std::vector<double> scores(input.curr_cut.size());
  for (std::size_t b = 0; b < scores.size(); ++b) {
    const auto& prev = input.prev_cut[b];
    const auto& curr = input.curr_cut[b];
    if (prev.size() != curr.size() || curr.empty()) {
      throw InvalidArgument("cut length mismatch at block " +
                            std::to_string(b));
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < curr.size(); ++j) {
      sum += std::abs(curr[j] - prev[j]);
    }
    scores[b] = sum / (static_cast<double>(curr.size()) * input.block_size);
  }
  return scores;
}

BlockMap Classify(std::span<const double> scores, double threshold) {
  if (!(threshold >= 0.0)) throw InvalidArgument("threshold must be >= 0");
  std::vector<bool> flags(scores.size());
  for (std::size_t b = 0; b < scores.size(); ++b) {
    flags[b] = scores[b] > threshold;
  }
  return BlockMap(std::move(flags));
}

}  // namespace bacs
