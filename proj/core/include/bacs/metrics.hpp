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

#ifndef BACS_METRICS_HPP_
#define BACS_METRICS_HPP_

#include <string>

#include "bacs/frame.hpp"

namespace bacs {

// 10 log10(255^2 / MSE) over the unpadded region; +infinity when the images
// are identical. Throws InvalidArgument on a size mismatch.
double Psnr(const Image& reference, const Image& test);
double Psnr(const Frame& reference, const Frame& test);

// Mean SSIM over all fully-contained 11x11 Gaussian (sigma 1.5) windows with
// K1 = 0.01, K2 = 0.03, L = 255. Images smaller than 11 pixels on a side use
// the largest odd window that fits.
double Ssim(const Image& reference, const Image& test);
double Ssim(const Frame& reference, const Frame& test);

// "inf" for an infinite PSNR, fixed-point otherwise.
std::string FormatDb(double db);

}  // namespace bacs

#endif  // BACS_METRICS_HPP_
