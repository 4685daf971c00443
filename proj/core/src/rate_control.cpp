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

#include "bacs/rate_control.hpp"

#include <algorithm>
#include <cmath>

#include "bacs/error.hpp"

namespace bacs {

BudgetConstants ComputeBudgetConstants(const CodecConfig& cfg, int block_count,
                                       int frame_count) {
  if (frame_count < 2) {
    throw ConfigError("at least 2 frames are needed for an inter-frame budget");
  }
  if (block_count < 1) throw ConfigError("frame has no blocks");
  const double l = block_count;
  const double n = frame_count;
  const double sr_h = cfg.high_sr;
  const double spare = n * cfg.target_sr - sr_h;
  if (!(spare > 0.0)) {
    throw ConfigError("infeasible budget: frame_count * target_sr <= high_sr");
  }
  // Total blocks the inter frames may send at the high rate.
  const double total_blocks = l * spare / sr_h;

  BudgetConstants c;
  c.b_ini = std::min(cfg.initial_storage_fraction * l, total_blocks);
  c.b_add = (l * spare - c.b_ini * sr_h) / (sr_h * (n - 1.0));
  c.b_add = std::max(c.b_add, 0.0);
  return c;
}

ControllerState InitialControllerState(const CodecConfig& cfg, int block_count,
                                       int frame_count) {
  ControllerState s;
  s.budget = ComputeBudgetConstants(cfg, block_count, frame_count);
  s.storage = s.budget.b_ini;
  s.threshold = cfg.threshold_init;
  s.frame = 1;
  s.block_count = block_count;
  s.frame_count = frame_count;
  s.high_sr = cfg.high_sr;
  s.threshold_gamma = cfg.threshold_gamma;
  s.threshold_min = cfg.threshold_min;
  s.threshold_max = cfg.threshold_max;
  return s;
}

Allocation Allocate(const ControllerState& state, int moving_blocks) {
  Allocation out;
  out.next = state;
  double b = state.storage + state.budget.b_add;
  if (moving_blocks <= b) {
    out.sr_m = state.high_sr;
    b -= moving_blocks;
  } else {
    out.sr_m = state.high_sr * b / moving_blocks;
    b = 0.0;
  }
  out.next.storage = b;
  out.next.frame = state.frame + 1;
  return out;
}

double UpdateThreshold(const ControllerState& state, int moving_blocks,
                       double storage_after) {
  const double pressure = moving_blocks / (storage_after + 1.0);
  const double theta =
      state.threshold * (1.0 + state.threshold_gamma * (pressure - 1.0));
  return std::clamp(theta, state.threshold_min, state.threshold_max);
}

int QuantizeRows(double sr, int block_size) {
  return static_cast<int>(
      std::floor(sr * static_cast<double>(block_size) * block_size));
}

}  // namespace bacs
