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

#ifndef BACS_FRAME_HPP_
#define BACS_FRAME_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bacs {

// Unpadded grayscale image, row-major, samples in [0, 255].
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;

  Image() = default;
  Image(int w, int h, double fill = 0.0);

  double at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
  double& at(int x, int y) {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }

  friend bool operator==(const Image&, const Image&) = default;
};

// BT.601 luma from interleaved 8-bit RGB.
Image LumaFromRgb(int width, int height, std::span<const std::uint8_t> rgb);

// An image padded by edge replication to whole B x B blocks. Blocks are
// enumerated row-major over the block grid.
class Frame {
 public:
  Frame() = default;

  int width() const { return width_; }
  int height() const { return height_; }
  int padded_width() const { return padded_width_; }
  int padded_height() const { return padded_height_; }
  int block_size() const { return block_size_; }
  int blocks_x() const { return padded_width_ / block_size_; }
  int blocks_y() const { return padded_height_ / block_size_; }
  int block_count() const { return blocks_x() * blocks_y(); }

  std::span<const double> pixels() const { return pixels_; }
  double at(int x, int y) const {
    return pixels_[static_cast<std::size_t>(y) * padded_width_ + x];
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  friend Frame PadFrame(const Image& raw, int block_size);
  friend Frame FrameFromBlocks(int width, int height, int block_size,
                               std::span<const std::vector<double>> blocks);

  int width_ = 0;
  int height_ = 0;
  int padded_width_ = 0;
  int padded_height_ = 0;
  int block_size_ = 0;
  std::vector<double> pixels_;
};

int PaddedExtent(int extent, int block_size);
int BlockCount(int width, int height, int block_size);

// Throws InvalidArgument on an empty image or a non-positive block size.
Frame PadFrame(const Image& raw, int block_size);

// The original (unpadded) region.
Image Crop(const Frame& frame);

// Raster-order flattening of block `index` (B*B values).
std::vector<double> BlockView(const Frame& frame, int index);

// Inverse of taking every BlockView. `blocks` holds one B*B vector per block
// of the padded grid for an image of width x height.
Frame FrameFromBlocks(int width, int height, int block_size,
                      std::span<const std::vector<double>> blocks);

// Moving-block flags in raster block order.
class BlockMap {
 public:
  BlockMap() = default;
  explicit BlockMap(std::vector<bool> flags);
  static BlockMap AllMoving(int block_count);
  static BlockMap NoneMoving(int block_count);

  int size() const { return static_cast<int>(flags_.size()); }
  int moving_count() const { return moving_; }
  bool moving(int index) const { return flags_[index]; }
  const std::vector<bool>& flags() const { return flags_; }

  friend bool operator==(const BlockMap&, const BlockMap&) = default;

 private:
  std::vector<bool> flags_;
  int moving_ = 0;
};

// Measurements of one frame as transmitted. Blocks that are not transmitted
// carry an empty vector. Scalars are stored at wire precision.
struct MeasurementSet {
  std::uint32_t frame_index = 0;
  std::vector<std::vector<float>> per_block;
  BlockMap block_map;
  float sr_m = 0.0f;
  float threshold_used = 0.0f;

  int block_count() const { return static_cast<int>(per_block.size()); }
  // Rows carried by each transmitted block (0 when nothing is transmitted).
  int rows_per_block() const;
  std::size_t scalar_count() const;

  friend bool operator==(const MeasurementSet&,
                         const MeasurementSet&) = default;
};

}  // namespace bacs

#endif  // BACS_FRAME_HPP_
