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

#include "bacs/bitstream.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "bacs/error.hpp"

namespace bacs {
namespace {

constexpr char kMagic[4] = {'B', 'A', 'C', 'S'};

class ByteWriter {
 public:
  explicit ByteWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  void U8(std::uint8_t v) { out_.push_back(v); }
  void U16(std::uint16_t v) { Le(v, 2); }
  void U32(std::uint32_t v) { Le(v, 4); }
  void U64(std::uint64_t v) { Le(v, 8); }
  void F32(float v) { U32(std::bit_cast<std::uint32_t>(v)); }
  void F32s(std::span<const float> v) {
    if constexpr (std::endian::native == std::endian::little) {
      const std::size_t at = out_.size();
      out_.resize(at + 4 * v.size());
      std::memcpy(out_.data() + at, v.data(), 4 * v.size());
    } else {
      for (float f : v) F32(f);
    }
  }
  void Bytes(std::span<const std::uint8_t> b) {
    out_.insert(out_.end(), b.begin(), b.end());
  }

 private:
  void Le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t>& out_;
};

// Reads little-endian fields; every read reports whether enough bytes were
// left so the caller can attach the right error code.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::size_t remaining() const { return in_.size() - pos_; }

  bool U8(std::uint8_t& v) {
    std::uint64_t t;
    if (!Le(t, 1)) return false;
    v = static_cast<std::uint8_t>(t);
    return true;
  }
  bool U16(std::uint16_t& v) {
    std::uint64_t t;
    if (!Le(t, 2)) return false;
    v = static_cast<std::uint16_t>(t);
    return true;
  }
  bool U32(std::uint32_t& v) {
    std::uint64_t t;
    if (!Le(t, 4)) return false;
    v = static_cast<std::uint32_t>(t);
    return true;
  }
  bool U64(std::uint64_t& v) { return Le(v, 8); }
  bool F32(float& v) {
    std::uint32_t t;
    if (!U32(t)) return false;
    v = std::bit_cast<float>(t);
    return true;
  }
  bool F32s(std::span<float> v) {
    if (remaining() / 4 < v.size()) return false;
    if constexpr (std::endian::native == std::endian::little) {
      std::memcpy(v.data(), in_.data() + pos_, 4 * v.size());
      pos_ += 4 * v.size();
    } else {
      for (float& f : v) F32(f);
    }
    return true;
  }
  bool Bytes(std::size_t n, std::span<const std::uint8_t>& out) {
    if (remaining() < n) return false;
    out = in_.subspan(pos_, n);
    pos_ += n;
    return true;
  }

 private:
  bool Le(std::uint64_t& v, int n) {
    if (remaining() < static_cast<std::size_t>(n)) return false;
    v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<std::uint64_t>(in_[pos_ + i]) << (8 * i);
    }
    pos_ += n;
    return true;
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::size_t BitmapBytes(int block_count) {
  return (static_cast<std::size_t>(block_count) + 7) / 8;
}

[[noreturn]] void FrameError(StreamErrorCode code, std::uint32_t frame,
                             const std::string& what) {
  throw StreamError(code,
                    std::string(ToString(code)) + " " + std::to_string(frame) +
                        ": " + what,
                    frame);
}

// Row count a frame must carry per transmitted block, validating the frame
// against the header. Shared by writer and reader so both enforce one rule.
int ExpectedRows(const StreamHeader& h, std::uint32_t index, float sr_m,
                 int moving, std::string& problem) {
  if (!std::isfinite(sr_m) || sr_m < 0.0f) {
    problem = "sampling rate is not a finite non-negative value";
    return -1;
  }
  const int rows = RowsFromWireSr(sr_m, h.block_size);
  if (rows > h.high_rows()) {
    problem = "row count " + std::to_string(rows) + " exceeds the high rate";
    return -1;
  }
  if (index == 0) {
    if (moving != h.block_count() || rows != h.high_rows()) {
      problem = "key frame must carry every block at the high rate";
      return -1;
    }
  }
  if (moving > 0 && rows == 0) {
    problem = "moving blocks with zero rows";
    return -1;
  }
  return rows;
}

}  // namespace

const char* ToString(StreamErrorCode code) {
  switch (code) {
    case StreamErrorCode::kBadMagic:
      return "bad magic";
    case StreamErrorCode::kVersionMismatch:
      return "version mismatch";
    case StreamErrorCode::kTruncatedHeader:
      return "truncated header";
    case StreamErrorCode::kTruncatedFrame:
      return "truncated frame";
    case StreamErrorCode::kTrailingData:
      return "trailing data";
    case StreamErrorCode::kInconsistentFrame:
      return "inconsistent frame";
    case StreamErrorCode::kBadHeader:
      return "bad header";
  }
  return "unknown";
}

int StreamHeader::block_count() const {
  return BlockCount(width, height, block_size);
}

int StreamHeader::high_rows() const {
  return RowsFromWireSr(high_sr, block_size);
}

StreamHeader MakeStreamHeader(const CodecConfig& cfg, int width, int height,
                              std::uint32_t frame_count) {
  constexpr int kMax = std::numeric_limits<std::uint16_t>::max();
  if (width <= 0 || height <= 0 || width > kMax || height > kMax ||
      cfg.block_size > kMax) {
    throw InvalidArgument("frame geometry does not fit the stream header");
  }
  StreamHeader h;
  h.width = static_cast<std::uint16_t>(width);
  h.height = static_cast<std::uint16_t>(height);
  h.block_size = static_cast<std::uint16_t>(cfg.block_size);
  h.high_sr = WireSamplingRate(cfg.high_sr, cfg.HighRows(), cfg.block_size);
  h.target_sr = static_cast<float>(cfg.target_sr);
  h.frame_count = frame_count;
  h.seed = cfg.seed;
  return h;
}

int RowsFromWireSr(float sr, int block_size) {
  return static_cast<int>(std::floor(static_cast<double>(sr) *
                                     (static_cast<double>(block_size) *
                                      block_size)));
}

float WireSamplingRate(double sr, int rows, int block_size) {
  float f = static_cast<float>(sr);
  while (f > 0.0f && RowsFromWireSr(f, block_size) > rows) {
    f = std::nextafter(f, 0.0f);
  }
  while (RowsFromWireSr(f, block_size) < rows) {
    f = std::nextafter(f, std::numeric_limits<float>::infinity());
  }
  return f;
}

std::vector<std::uint8_t> WriteStream(const StreamHeader& header,
                                      std::span<const MeasurementSet> frames) {
  if (header.frame_count != frames.size()) {
    throw InvalidArgument("header frame count does not match frames");
  }
  if (header.block_size == 0 || header.width == 0 || header.height == 0) {
    throw InvalidArgument("header has empty geometry");
  }
  const int l = header.block_count();
  std::vector<std::uint8_t> out;
  std::size_t size = kStreamHeaderSize;
  for (const MeasurementSet& f : frames) {
    size += 16 + BitmapBytes(l) + 4 * f.scalar_count();
  }
  out.reserve(size);
  ByteWriter w(out);
  w.Bytes(std::span(reinterpret_cast<const std::uint8_t*>(kMagic), 4));
  w.U8(kStreamVersion);
  w.U16(header.width);
  w.U16(header.height);
  w.U16(header.block_size);
  w.F32(header.high_sr);
  w.F32(header.target_sr);
  w.U32(header.frame_count);
  w.U64(header.seed);

  for (std::size_t k = 0; k < frames.size(); ++k) {
    const MeasurementSet& f = frames[k];
    const std::string where = "frame " + std::to_string(k) + ": ";
    if (f.frame_index != k) {
      throw InvalidArgument(where + "frame indices must be contiguous from 0");
    }
    if (f.block_count() != l || f.block_map.size() != l) {
      throw InvalidArgument(where + "block count does not match header (" +
                            std::to_string(l) + ")");
    }
    std::string problem;
    const int rows = ExpectedRows(header, f.frame_index, f.sr_m,
                                  f.block_map.moving_count(), problem);
    if (rows < 0) throw InvalidArgument(where + problem);
    for (int b = 0; b < l; ++b) {
      const std::size_t expect = f.block_map.moving(b) ? rows : 0;
      if (f.per_block[b].size() != expect) {
        throw InvalidArgument(where + "block " + std::to_string(b) +
                              " carries " +
                              std::to_string(f.per_block[b].size()) +
                              " rows, expected " + std::to_string(expect));
      }
    }

    w.U32(f.frame_index);
    w.F32(f.threshold_used);
    w.F32(f.sr_m);
    std::vector<std::uint8_t> bitmap(BitmapBytes(l), 0);
    for (int b = 0; b < l; ++b) {
      if (f.block_map.moving(b)) bitmap[b / 8] |= std::uint8_t(1u << (b % 8));
    }
    w.Bytes(bitmap);
    w.U32(static_cast<std::uint32_t>(f.block_map.moving_count()));
    for (int b = 0; b < l; ++b) w.F32s(f.per_block[b]);
  }
  return out;
}

DecodedStream ReadStream(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  std::span<const std::uint8_t> magic;
  if (!r.Bytes(4, magic)) {
    throw StreamError(StreamErrorCode::kTruncatedHeader,
                      "truncated header: stream shorter than magic");
  }
  if (std::memcmp(magic.data(), kMagic, 4) != 0) {
    throw StreamError(StreamErrorCode::kBadMagic, "bad magic");
  }
  std::uint8_t version = 0;
  if (!r.U8(version)) {
    throw StreamError(StreamErrorCode::kTruncatedHeader, "truncated header");
  }
  if (version != kStreamVersion) {
    throw StreamError(StreamErrorCode::kVersionMismatch,
                      "version mismatch: stream version " +
                          std::to_string(version) + ", expected " +
                          std::to_string(kStreamVersion));
  }
  DecodedStream out;
  StreamHeader& h = out.header;
  if (!(r.U16(h.width) && r.U16(h.height) && r.U16(h.block_size) &&
        r.F32(h.high_sr) && r.F32(h.target_sr) && r.U32(h.frame_count) &&
        r.U64(h.seed))) {
    throw StreamError(StreamErrorCode::kTruncatedHeader, "truncated header");
  }
  if (h.width == 0 || h.height == 0 || h.block_size == 0 ||
      !std::isfinite(h.high_sr) || !(h.high_sr > 0.0f && h.high_sr <= 1.0f) ||
      h.high_rows() < 1) {
    throw StreamError(StreamErrorCode::kBadHeader,
                      "bad header: invalid geometry or sampling rate");
  }

  const int l = h.block_count();
  out.frames.reserve(std::min<std::size_t>(h.frame_count, 1u << 16));
  for (std::uint32_t k = 0; k < h.frame_count; ++k) {
    MeasurementSet f;
    std::span<const std::uint8_t> bitmap;
    std::uint32_t moving = 0;
    if (!(r.U32(f.frame_index) && r.F32(f.threshold_used) && r.F32(f.sr_m) &&
          r.Bytes(BitmapBytes(l), bitmap) && r.U32(moving))) {
      FrameError(StreamErrorCode::kTruncatedFrame, k, "frame header cut short");
    }
    if (f.frame_index != k) {
      FrameError(StreamErrorCode::kInconsistentFrame, k,
                 "frame index " + std::to_string(f.frame_index));
    }
    std::vector<bool> flags(l);
    for (int b = 0; b < l; ++b) flags[b] = (bitmap[b / 8] >> (b % 8)) & 1u;
    if (l % 8 != 0 && (bitmap.back() >> (l % 8)) != 0) {
      FrameError(StreamErrorCode::kInconsistentFrame, k,
                 "bitmap padding bits set");
    }
    f.block_map = BlockMap(std::move(flags));
    if (static_cast<std::uint32_t>(f.block_map.moving_count()) != moving) {
      FrameError(StreamErrorCode::kInconsistentFrame, k,
                 "moving count does not match bitmap");
    }
    std::string problem;
    const int rows =
        ExpectedRows(h, k, f.sr_m, static_cast<int>(moving), problem);
    if (rows < 0) FrameError(StreamErrorCode::kInconsistentFrame, k, problem);

    f.per_block.resize(l);
    for (int b = 0; b < l; ++b) {
      if (!f.block_map.moving(b)) continue;
      auto& y = f.per_block[b];
      if (r.remaining() / 4 < static_cast<std::size_t>(rows)) {
        FrameError(StreamErrorCode::kTruncatedFrame, k, "payload cut short");
      }
      y.resize(rows);
      r.F32s(y);
    }
    out.frames.push_back(std::move(f));
  }
  if (r.remaining() != 0) {
    throw StreamError(StreamErrorCode::kTrailingData,
                      "trailing data: " + std::to_string(r.remaining()) +
                          " bytes after the last frame");
  }
  return out;
}

double AuditedSamplingRate(const StreamHeader& header,
                           std::span<const MeasurementSet> frames) {
  if (frames.empty()) return 0.0;
  std::size_t scalars = 0;
  for (const auto& f : frames) scalars += f.scalar_count();
  const double denom = static_cast<double>(frames.size()) *
                       header.block_count() *
                       (static_cast<double>(header.block_size) *
                        header.block_size);
  return static_cast<double>(scalars) / denom;
}

}  // namespace bacs
