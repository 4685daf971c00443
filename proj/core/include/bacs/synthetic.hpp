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

#ifndef BACS_SYNTHETIC_HPP_
#define BACS_SYNTHETIC_HPP_

#include <cstdint>
#include <vector>

#include "bacs/frame.hpp"

namespace bacs {

// Fixed-camera test sequence: a smooth textured background with textured
// squares that bounce around the frame, plus per-frame sensor noise. The
// squares alternate between `active_frames` frames of motion and
// `idle_frames` frames at rest, which gives the rate controller both busy
// and quiet spans. Samples are rounded to 8-bit levels.
struct SyntheticOptions {
  int width = 256;
  int height = 256;
  int frames = 100;
  std::uint64_t seed = 7;
  double noise_sigma = 1.0;
  int objects = 3;
  int object_size = 48;
  double speed = 4.0;
  int active_frames = 15;
  int idle_frames = 10;
};

std::vector<Image> GenerateSequence(const SyntheticOptions& options);

// Whether the squares move between frame `index - 1` and `index`.
bool IsActiveFrame(const SyntheticOptions& options, int index);

}  // namespace bacs

#endif  // BACS_SYNTHETIC_HPP_
