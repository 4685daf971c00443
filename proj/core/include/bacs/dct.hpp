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

#ifndef BACS_DCT_HPP_
#define BACS_DCT_HPP_

#include <span>

namespace bacs {

// Orthonormal 2-D DCT-II (and its inverse) over a row-major width x height
// array. Backed by FFTW plans created with FFTW_ESTIMATE, so results are
// reproducible run to run. Not thread-safe per instance.
class Dct2d {
 public:
  Dct2d(int width, int height);
  ~Dct2d();

  Dct2d(const Dct2d&) = delete;
  Dct2d& operator=(const Dct2d&) = delete;
  Dct2d(Dct2d&& other) noexcept;
  Dct2d& operator=(Dct2d&& other) noexcept;

  int width() const { return width_; }
  int height() const { return height_; }

  // `in` and `out` may alias.
  void Forward(std::span<const double> in, std::span<double> out);
  void Inverse(std::span<const double> in, std::span<double> out);

 private:
  void Release();

  int width_ = 0;
  int height_ = 0;
  double* buffer_ = nullptr;
  void* forward_ = nullptr;
  void* inverse_ = nullptr;
};

// Coefficient-wise sign(c) * max(|c| - lambda, 0), in place.
void SoftThreshold(std::span<double> coeffs, double lambda);

}  // namespace bacs

#endif  // BACS_DCT_HPP_
