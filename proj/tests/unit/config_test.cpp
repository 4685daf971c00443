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

#include "bacs/config.hpp"

#include <gtest/gtest.h>

#include "bacs/error.hpp"

namespace bacs {
namespace {

TEST(ConfigTest, DefaultsAreValid) {
  CodecConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  EXPECT_EQ(cfg.block_size, 32);
  EXPECT_EQ(cfg.HighRows(), 204);
  EXPECT_DOUBLE_EQ(cfg.initial_storage_fraction, 0.5);
}

TEST(ConfigTest, ParsesKeyValueText) {
  const CodecConfig cfg = ParseConfig(
      "# comment\n"
      "high_sr = 0.3\n"
      "\n"
      "target_sr=0.05\n"
      "seed = 42\n"
      "dynamic_threshold = false\n");
  EXPECT_DOUBLE_EQ(cfg.high_sr, 0.3);
  EXPECT_DOUBLE_EQ(cfg.target_sr, 0.05);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_FALSE(cfg.dynamic_threshold);
}

TEST(ConfigTest, RejectsUnknownKey) {
  EXPECT_THROW(ParseConfig("high_sr = 0.2\nbogus = 1\n"), ConfigError);
}

TEST(ConfigTest, RejectsDuplicateAndMalformed) {
  EXPECT_THROW(ParseConfig("seed = 1\nseed = 2\n"), ConfigError);
  EXPECT_THROW(ParseConfig("high_sr\n"), ConfigError);
  EXPECT_THROW(ParseConfig("high_sr = 0.2x\n"), ConfigError);
  EXPECT_THROW(ParseConfig("block_storage = maybe\n"), ConfigError);
}

TEST(ConfigTest, HighRateMustExceedTarget) {
  EXPECT_THROW(ParseConfig("high_sr = 0.1\ntarget_sr = 0.1\n"), ConfigError);
  EXPECT_THROW(ParseConfig("high_sr = 0.1\ntarget_sr = 0.2\n"), ConfigError);
}

TEST(ConfigTest, ThresholdOrdering) {
  EXPECT_THROW(ParseConfig("threshold_min = 0.05\n"), ConfigError);
  EXPECT_THROW(ParseConfig("threshold_max = 0.01\n"), ConfigError);
  EXPECT_THROW(ParseConfig("threshold_min = 0\n"), ConfigError);
}

TEST(ConfigTest, BlockGeometryLimits) {
  EXPECT_THROW(ParseConfig("block_size = 4\n"), ConfigError);
  // 8x8 blocks at SR 0.02 give a single row: no room for detail.
  EXPECT_THROW(ParseConfig("block_size = 8\nhigh_sr = 0.02\ntarget_sr = 0.01\n"),
               ConfigError);
  EXPECT_NO_THROW(
      ParseConfig("block_size = 8\nhigh_sr = 0.04\ntarget_sr = 0.01\n"));
}

TEST(ConfigTest, FormatRoundTrips) {
  CodecConfig cfg;
  cfg.high_sr = 0.3;
  cfg.threshold_gamma = 0.125;
  cfg.block_storage = false;
  cfg.seed = 99;
  EXPECT_EQ(FormatConfig(ParseConfig(FormatConfig(cfg))), FormatConfig(cfg));
}

TEST(ConfigTest, EveryKeyIsSettable) {
  for (const std::string& key : ConfigKeys()) {
    CodecConfig cfg;
    const bool is_bool = key == "block_storage" || key == "dynamic_threshold";
    EXPECT_NO_THROW(SetConfigValue(cfg, key, is_bool ? "true" : "1")) << key;
  }
}

}  // namespace
}  // namespace bacs
