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

#include "bacs/dct.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <utility>

#include "bacs/error.hpp"

namespace bacs {
namespace {

// The FFTW planner is not thread-safe.
std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

// FFTW's REDFT10 is 2x an unnormalized DCT-II; these factors make the pair
// orthonormal along one axis.
double ForwardScale(int k, int n) {
  return k == 0 ? std::sqrt(1.0 / (4.0 * n)) : std::sqrt(1.0 / (2.0 * n));
}
double InverseScale(int k, int n) {
  return k == 0 ? std::sqrt(1.0 / n) : std::sqrt(1.0 / (2.0 * n));
}

}  // namespace

Dct2d::Dct2d(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw InvalidArgument("empty DCT size");
  const std::size_t n = static_cast<std::size_t>(width) * height;
  std::lock_guard<std::mutex> lock(PlannerMutex());
  buffer_ = fftw_alloc_real(n);
  forward_ = fftw_plan_r2r_2d(height, width, buffer_, buffer_, FFTW_REDFT10,
                              FFTW_REDFT10, FFTW_ESTIMATE);
  inverse_ = fftw_plan_r2r_2d(height, width, buffer_, buffer_, FFTW_REDFT01,
                              FFTW_REDFT01, FFTW_ESTIMATE);
}

Dct2d::~Dct2d() { Release(); }

Dct2d::Dct2d(Dct2d&& other) noexcept
    : width_(other.width_),
      height_(other.height_),
      buffer_(std::exchange(other.buffer_, nullptr)),
      forward_(std::exchange(other.forward_, nullptr)),
      inverse_(std::exchange(other.inverse_, nullptr)) {}

Dct2d& Dct2d::operator=(Dct2d&& other) noexcept {
  if (this != &other) {
    Release();
    width_ = other.width_;
    height_ = other.height_;
    buffer_ = std::exchange(other.buffer_, nullptr);
    forward_ = std::exchange(other.forward_, nullptr);
    inverse_ = std::exchange(other.inverse_, nullptr);
  }
  return *this;
}

void Dct2d::Release() {
  if (buffer_ == nullptr) return;
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_));
  fftw_free(buffer_);
  buffer_ = nullptr;
}

void Dct2d::Forward(std::span<const double> in, std::span<double> out) {
  const std::size_t n = static_cast<std::size_t>(width_) * height_;
  if (in.size() != n || out.size() != n) {
    throw InvalidArgument("DCT buffer size mismatch");
  }
  std::copy(in.begin(), in.end(), buffer_);
  fftw_execute(static_cast<fftw_plan>(forward_));
  for (int v = 0; v < height_; ++v) {
    const double sv = ForwardScale(v, height_);
    for (int u = 0; u < width_; ++u) {
      const std::size_t i = static_cast<std::size_t>(v) * width_ + u;
      out[i] = buffer_[i] * sv * ForwardScale(u, width_);
    }
  }
}

void Dct2d::Inverse(std::span<const double> in, std::span<double> out) {
  const std::size_t n = static_cast<std::size_t>(width_) * height_;
  if (in.size() != n || out.size() != n) {
    throw InvalidArgument("DCT buffer size mismatch");
  }
  for (int v = 0; v < height_; ++v) {
    const double sv = InverseScale(v, height_);
    for (int u = 0; u < width_; ++u) {
      const std::size_t i = static_cast<std::size_t>(v) * width_ + u;
      buffer_[i] = in[i] * sv * InverseScale(u, width_);
    }
  }
  fftw_execute(static_cast<fftw_plan>(inverse_));
  std::copy(buffer_, buffer_ + n, out.begin());
}

void SoftThreshold(std::span<double> coeffs, double lambda) {
  for (double& c : coeffs) {
    const double mag = std::abs(c) - lambda;
    c = mag > 0.0 ? std::copysign(mag, c) : 0.0;
  }
}

}  // namespace bacs
