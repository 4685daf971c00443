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

#ifndef BACS_RATE_CONTROL_HPP_
#define BACS_RATE_CONTROL_HPP_

#include "bacs/config.hpp"

namespace bacs {

// Initial storage and per-frame refill, in blocks. Chosen so that spending
// all of it at the high rate lands exactly on the target average:
//   high_sr * (b_ini + b_add * (n - 1)) / l == n * target_sr - high_sr.
struct BudgetConstants {
  double b_ini = 0.0;
  double b_add = 0.0;
};

// Throws ConfigError when n < 2 or n * target_sr <= high_sr. b_ini is
// initial_storage_fraction * l, lowered if needed so that b_add >= 0.
BudgetConstants ComputeBudgetConstants(const CodecConfig& cfg, int block_count,
                                       int frame_count);

// Block storage controller state for one stream. `frame` is the next
// inter frame to be allocated (starts at 1).
struct ControllerState {
  double storage = 0.0;
  double threshold = 0.0;
  int frame = 1;

  BudgetConstants budget;
  int block_count = 0;
  int frame_count = 0;
  double high_sr = 0.0;
  double threshold_gamma = 0.0;
  double threshold_min = 0.0;
  double threshold_max = 0.0;
};

ControllerState InitialControllerState(const CodecConfig& cfg, int block_count,
                                       int frame_count);

struct Allocation {
  double sr_m = 0.0;
  ControllerState next;
};

// One step of the block storage system: refill by b_add, then either pay
// for all moving blocks at the high rate or spread what is left over them.
Allocation Allocate(const ControllerState& state, int moving_blocks);

// Threshold for the next frame from this frame's motion load and its
// post-allocation storage. Pressure p = m / (b + 1); p > 1 raises the
// threshold, p < 1 lowers it, and the result is clamped to
// [threshold_min, threshold_max].
double UpdateThreshold(const ControllerState& state, int moving_blocks,
                       double storage_after);

// floor(sr * B^2). Flooring keeps the transmitted scalars within budget.
int QuantizeRows(double sr, int block_size);

}  // namespace bacs

#endif  // BACS_RATE_CONTROL_HPP_
