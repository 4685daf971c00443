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

#include "bacs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "bacs/error.hpp"

namespace bacs {
namespace {

constexpr double kPeak = 255.0;
constexpr int kWindow = 11;
constexpr double kSigma = 1.5;

void CheckSameSize(const Image& a, const Image& b) {
  if (a.width != b.width || a.height != b.height) {
    throw InvalidArgument("image dimensions differ");
  }
  if (a.width <= 0 || a.height <= 0) throw InvalidArgument("empty image");
}

std::vector<double> GaussianTaps(int size) {
  std::vector<double> taps(size);
  const int r = size / 2;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    const double d = i - r;
    taps[i] = std::exp(-d * d / (2.0 * kSigma * kSigma));
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

// Valid-region separable filter: output is (w - size + 1) x (h - size + 1).
std::vector<double> FilterValid(const std::vector<double>& in, int w, int h,
                                const std::vector<double>& taps) {
  const int size = static_cast<int>(taps.size());
  const int ow = w - size + 1;
  const int oh = h - size + 1;
  std::vector<double> tmp(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int t = 0; t < size; ++t) {
        acc += taps[t] * in[static_cast<std::size_t>(y) * w + x + t];
      }
      tmp[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int t = 0; t < size; ++t) {
        acc += taps[t] * tmp[static_cast<std::size_t>(y + t) * ow + x];
      }
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

}  // namespace

double Psnr(const Image& reference, const Image& test) {
  CheckSameSize(reference, test);
  double sse = 0.0;
  for (std::size_t i = 0; i < reference.pixels.size(); ++i) {
    const double d = reference.pixels[i] - test.pixels[i];
    sse += d * d;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / static_cast<double>(reference.pixels.size());
  return 10.0 * std::log10(kPeak * kPeak / mse);
}

double Psnr(const Frame& reference, const Frame& test) {
  return Psnr(Crop(reference), Crop(test));
}

double Ssim(const Image& reference, const Image& test) {
  CheckSameSize(reference, test);
  if (reference.pixels == test.pixels) return 1.0;

  int size = std::min({kWindow, reference.width, reference.height});
  if (size % 2 == 0) --size;
  const auto taps = GaussianTaps(size);
  const int w = reference.width;
  const int h = reference.height;
  const std::size_t n = reference.pixels.size();

  std::vector<double> xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = reference.pixels[i];
    const double b = test.pixels[i];
    xx[i] = a * a;
    yy[i] = b * b;
    xy[i] = a * b;
  }
  const auto mu_x = FilterValid(reference.pixels, w, h, taps);
  const auto mu_y = FilterValid(test.pixels, w, h, taps);
  const auto e_xx = FilterValid(xx, w, h, taps);
  const auto e_yy = FilterValid(yy, w, h, taps);
  const auto e_xy = FilterValid(xy, w, h, taps);

  const double c1 = (0.01 * kPeak) * (0.01 * kPeak);
  const double c2 = (0.03 * kPeak) * (0.03 * kPeak);
  double total = 0.0;
  for (std::size_t i = 0; i < mu_x.size(); ++i) {
    const double mx = mu_x[i];
    const double my = mu_y[i];
    const double vx = e_xx[i] - mx * mx;
    const double vy = e_yy[i] - my * my;
    const double cov = e_xy[i] - mx * my;
    total += ((2.0 * mx * my + c1) * (2.0 * cov + c2)) /
             ((mx * mx + my * my + c1) * (vx + vy + c2));
  }
  return total / static_cast<double>(mu_x.size());
}

double Ssim(const Frame& reference, const Frame& test) {
  return Ssim(Crop(reference), Crop(test));
}

std::string FormatDb(double db) {
  if (std::isinf(db)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", db);
  return buf;
}

}  // namespace bacs
