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

#ifndef BACS_BITSTREAM_HPP_
#define BACS_BITSTREAM_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bacs/config.hpp"
#include "bacs/frame.hpp"

namespace bacs {

// Stream layout, all little-endian:
//
//   header   "BACS" | version u8 | width u16 | height u16 | B u16 |
//            high_sr f32 | target_sr f32 | n u32 | seed u64          (31 B)
//   frame    index u32 | threshold f32 | sr_m f32 |
//            bitmap ceil(l/8) B | m u32 | m * rows f32
//
// Bitmap bit b is bit (b % 8) of byte b / 8, set for a transmitted block;
// unused high bits of the last byte are zero. rows = floor(sr_m * B^2).
// Frame 0 transmits every block.
inline constexpr std::uint8_t kStreamVersion = 1;
inline constexpr std::size_t kStreamHeaderSize = 31;

struct StreamHeader {
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::uint16_t block_size = 0;
  float high_sr = 0.0f;
  float target_sr = 0.0f;
  std::uint32_t frame_count = 0;
  std::uint64_t seed = 0;

  int block_count() const;
  int high_rows() const;

  friend bool operator==(const StreamHeader&, const StreamHeader&) = default;
};

// Throws InvalidArgument when the geometry does not fit the u16 fields.
StreamHeader MakeStreamHeader(const CodecConfig& cfg, int width, int height,
                              std::uint32_t frame_count);

// Rows carried per transmitted block for a wire sampling rate.
int RowsFromWireSr(float sr, int block_size);

// A float sampling rate, as close to `sr` as possible, from which
// RowsFromWireSr recovers exactly `rows`.
float WireSamplingRate(double sr, int rows, int block_size);

// Throws InvalidArgument when a frame is inconsistent with the header (block
// count, row counts, non-contiguous indices, frame_count != frames.size()).
std::vector<std::uint8_t> WriteStream(const StreamHeader& header,
                                      std::span<const MeasurementSet> frames);

struct DecodedStream {
  StreamHeader header;
  std::vector<MeasurementSet> frames;
};

// Exact inverse of WriteStream. Throws StreamError with a distinct code for
// each corruption class; frame-level errors name the frame.
DecodedStream ReadStream(std::span<const std::uint8_t> bytes);

// Measurement scalars / (n * l * B^2).
double AuditedSamplingRate(const StreamHeader& header,
                           std::span<const MeasurementSet> frames);

}  // namespace bacs

#endif  // BACS_BITSTREAM_HPP_
