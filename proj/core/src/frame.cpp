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

#include "bacs/frame.hpp"

#include <algorithm>
#include <string>

#include "bacs/error.hpp"

namespace bacs {

Image::Image(int w, int h, double fill)
    : width(w),
      height(h),
      pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

Image LumaFromRgb(int width, int height, std::span<const std::uint8_t> rgb) {
  if (width <= 0 || height <= 0) throw InvalidArgument("empty RGB image");
  if (rgb.size() != static_cast<std::size_t>(width) * height * 3) {
    throw InvalidArgument("RGB buffer size does not match dimensions");
  }
  Image out(width, height);
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    out.pixels[i] = 0.299 * rgb[3 * i] + 0.587 * rgb[3 * i + 1] +
                    0.114 * rgb[3 * i + 2];
  }
  return out;
}

int PaddedExtent(int extent, int block_size) {
  return (extent + block_size - 1) / block_size * block_size;
}

int BlockCount(int width, int height, int block_size) {
  return (PaddedExtent(width, block_size) / block_size) *
         (PaddedExtent(height, block_size) / block_size);
}

Frame PadFrame(const Image& raw, int block_size) {
  if (raw.width <= 0 || raw.height <= 0) {
    throw InvalidArgument("cannot pad an empty image");
  }
  if (block_size <= 0) throw InvalidArgument("block size must be positive");
  if (raw.pixels.size() != static_cast<std::size_t>(raw.width) * raw.height) {
    throw InvalidArgument("image buffer size does not match dimensions");
  }
  Frame f;
  f.width_ = raw.width;
  f.height_ = raw.height;
  f.block_size_ = block_size;
  f.padded_width_ = PaddedExtent(raw.width, block_size);
  f.padded_height_ = PaddedExtent(raw.height, block_size);
  f.pixels_.resize(static_cast<std::size_t>(f.padded_width_) *
                   f.padded_height_);
  for (int y = 0; y < f.padded_height_; ++y) {
    const int sy = std::min(y, raw.height - 1);
    for (int x = 0; x < f.padded_width_; ++x) {
      const int sx = std::min(x, raw.width - 1);
      f.pixels_[static_cast<std::size_t>(y) * f.padded_width_ + x] =
          raw.at(sx, sy);
    }
  }
  return f;
}

Image Crop(const Frame& frame) {
  Image out(frame.width(), frame.height());
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) out.at(x, y) = frame.at(x, y);
  }
  return out;
}

std::vector<double> BlockView(const Frame& frame, int index) {
  if (index < 0 || index >= frame.block_count()) {
    throw InvalidArgument("block index " + std::to_string(index) +
                          " out of range");
  }
  const int b = frame.block_size();
  const int x0 = (index % frame.blocks_x()) * b;
  const int y0 = (index / frame.blocks_x()) * b;
  std::vector<double> out(static_cast<std::size_t>(b) * b);
  for (int y = 0; y < b; ++y) {
    const auto row = frame.pixels().subspan(
        static_cast<std::size_t>(y0 + y) * frame.padded_width() + x0, b);
    std::copy(row.begin(), row.end(), out.begin() + y * b);
  }
  return out;
}

Frame FrameFromBlocks(int width, int height, int block_size,
                      std::span<const std::vector<double>> blocks) {
  if (width <= 0 || height <= 0 || block_size <= 0) {
    throw InvalidArgument("invalid frame geometry");
  }
  Frame f;
  f.width_ = width;
  f.height_ = height;
  f.block_size_ = block_size;
  f.padded_width_ = PaddedExtent(width, block_size);
  f.padded_height_ = PaddedExtent(height, block_size);
  if (static_cast<int>(blocks.size()) != f.block_count()) {
    throw InvalidArgument("block count does not match frame geometry");
  }
  f.pixels_.resize(static_cast<std::size_t>(f.padded_width_) *
                   f.padded_height_);
  const int bx = f.blocks_x();
  for (int i = 0; i < f.block_count(); ++i) {
    const auto& block = blocks[i];
    if (block.size() != static_cast<std::size_t>(block_size) * block_size) {
      throw InvalidArgument("block " + std::to_string(i) + " has wrong size");
    }
    const int x0 = (i % bx) * block_size;
    const int y0 = (i / bx) * block_size;
    for (int y = 0; y < block_size; ++y) {
      std::copy_n(block.begin() + y * block_size, block_size,
                  f.pixels_.begin() +
                      static_cast<std::ptrdiff_t>(y0 + y) * f.padded_width_ +
                      x0);
    }
  }
  return f;
}

BlockMap::BlockMap(std::vector<bool> flags)
    : flags_(std::move(flags)),
      moving_(static_cast<int>(
          std::count(flags_.begin(), flags_.end(), true))) {}

BlockMap BlockMap::AllMoving(int block_count) {
  return BlockMap(std::vector<bool>(block_count, true));
}

BlockMap BlockMap::NoneMoving(int block_count) {
  return BlockMap(std::vector<bool>(block_count, false));
}

int MeasurementSet::rows_per_block() const {
  for (const auto& v : per_block) {
    if (!v.empty()) return static_cast<int>(v.size());
  }
  return 0;
}

std::size_t MeasurementSet::scalar_count() const {
  std::size_t n = 0;
  for (const auto& v : per_block) n += v.size();
  return n;
}

}  // namespace bacs
