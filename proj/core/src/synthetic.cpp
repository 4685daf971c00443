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

#include "bacs/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bacs/error.hpp"
#include "gaussian.hpp"

namespace bacs {
namespace {

struct Square {
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  double base = 0.0;
  int cell = 8;
};

}  // namespace

bool IsActiveFrame(const SyntheticOptions& options, int index) {
  if (index <= 0) return false;
  const int period = options.active_frames + options.idle_frames;
  if (period <= 0 || options.idle_frames == 0) return true;
  return (index - 1) % period < options.active_frames;
}

std::vector<Image> GenerateSequence(const SyntheticOptions& options) {
  if (options.width <= 0 || options.height <= 0 || options.frames < 0) {
    throw InvalidArgument("invalid synthetic sequence geometry");
  }
  internal::GaussianSource rng(options.seed);
  const int w = options.width;
  const int h = options.height;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  const double p1 = kTwoPi * rng.Uniform();
  const double p2 = kTwoPi * rng.Uniform();
  Image background(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      background.at(x, y) =
          100.0 + 35.0 * std::sin(kTwoPi * x / 71.0 + p1) *
                      std::cos(kTwoPi * y / 57.0 + p2) +
          40.0 * x / w + 15.0 * std::sin(kTwoPi * (x + 2 * y) / 23.0);
    }
  }
  // A few flat-shaded rectangles give the background sharp edges.
  for (int r = 0; r < 6; ++r) {
    const int x0 = static_cast<int>(rng.Uniform() * w * 0.8);
    const int y0 = static_cast<int>(rng.Uniform() * h * 0.8);
    const int rw = 10 + static_cast<int>(rng.Uniform() * w * 0.25);
    const int rh = 10 + static_cast<int>(rng.Uniform() * h * 0.25);
    const double shade = 30.0 + 180.0 * rng.Uniform();
    for (int y = y0; y < std::min(h, y0 + rh); ++y) {
      for (int x = x0; x < std::min(w, x0 + rw); ++x) {
        background.at(x, y) = 0.5 * background.at(x, y) + 0.5 * shade;
      }
    }
  }

  const int size = std::min({options.object_size, w, h});
  std::vector<Square> squares(std::max(options.objects, 0));
  for (Square& s : squares) {
    s.x = rng.Uniform() * (w - size);
    s.y = rng.Uniform() * (h - size);
    const double angle = kTwoPi * rng.Uniform();
    s.vx = options.speed * std::cos(angle);
    s.vy = options.speed * std::sin(angle);
    s.base = 40.0 + 170.0 * rng.Uniform();
    s.cell = 6 + static_cast<int>(rng.Uniform() * 6.0);
  }

  std::vector<Image> frames;
  frames.reserve(options.frames);
  for (int k = 0; k < options.frames; ++k) {
    if (IsActiveFrame(options, k)) {
      for (Square& s : squares) {
        s.x += s.vx;
        s.y += s.vy;
        if (s.x < 0.0 || s.x > w - size) {
          s.vx = -s.vx;
          s.x = std::clamp(s.x, 0.0, static_cast<double>(w - size));
        }
        if (s.y < 0.0 || s.y > h - size) {
          s.vy = -s.vy;
          s.y = std::clamp(s.y, 0.0, static_cast<double>(h - size));
        }
      }
    }
    Image img = background;
    for (const Square& s : squares) {
      const int x0 = static_cast<int>(std::lround(s.x));
      const int y0 = static_cast<int>(std::lround(s.y));
      for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
          const bool dark = ((x / s.cell) + (y / s.cell)) % 2 == 0;
          img.at(x0 + x, y0 + y) = s.base + (dark ? -25.0 : 25.0);
        }
      }
    }
    for (double& v : img.pixels) {
      if (options.noise_sigma > 0.0) v += options.noise_sigma * rng.Next();
      v = std::clamp(std::round(v), 0.0, 255.0);
    }
    frames.push_back(std::move(img));
  }
  return frames;
}

}  // namespace bacs
