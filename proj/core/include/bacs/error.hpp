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

#ifndef BACS_ERROR_HPP_
#define BACS_ERROR_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace bacs {

// Failure categories. The CLI maps each category to its process exit code.
enum class ErrorCategory : std::uint8_t {
  kConfig = 2,
  kIo = 3,
  kStream = 4,
  kInvalidArgument = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error(ErrorCategory::kConfig, "config error: " + message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorCategory::kIo, "I/O error: " + message) {}
};

// Precondition violations on library calls (out-of-range block index,
// mismatched lengths, ...).
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error(ErrorCategory::kInvalidArgument, message) {}
};

enum class StreamErrorCode : std::uint8_t {
  kBadMagic = 1,
  kVersionMismatch = 2,
  kTruncatedHeader = 3,
  kTruncatedFrame = 4,
  kTrailingData = 5,
  kInconsistentFrame = 6,
  kBadHeader = 7,
};

const char* ToString(StreamErrorCode code);

class StreamError : public Error {
 public:
  StreamError(StreamErrorCode code, const std::string& message,
              std::optional<std::uint32_t> frame = std::nullopt)
      : Error(ErrorCategory::kStream, message), code_(code), frame_(frame) {}

  StreamErrorCode code() const { return code_; }
  // Index of the frame being parsed when the error was detected, if any.
  std::optional<std::uint32_t> frame() const { return frame_; }

 private:
  StreamErrorCode code_;
  std::optional<std::uint32_t> frame_;
};

}  // namespace bacs

#endif  // BACS_ERROR_HPP_
