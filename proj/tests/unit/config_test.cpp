// Copyright 2026 The Novelscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "novelscope/config.hpp"

#include <cstdlib>
#include <fstream>

#include <gtest/gtest.h>

#include "novelscope/error.hpp"
#include "test_support.hpp"

namespace novelscope {
namespace {

TEST(Config, DefaultsAreDocumented) {
  const Config c;
  EXPECT_EQ(c.get_int("seed"), 42);
  EXPECT_EQ(c.get_int("network.window"), 30);
  EXPECT_EQ(c.get_int("network.min_co"), 5);
  EXPECT_EQ(c.get_int("corpus.ranks"), 9);
  EXPECT_DOUBLE_EQ(c.get_double("corpus.outlier_threshold"), 10.0);
  EXPECT_EQ(c.get_int("embed.min_count"), 100);
  EXPECT_TRUE(c.get_bool("embed.train_words"));
}

TEST(Config, RejectsUnknownKeys) {
  Config c;
  try {
    c.set("netwrok.window", "3");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  EXPECT_THROW(c.get("nope"), Error);
}

TEST(Config, MergeTextSkipsCommentsAndBlankLines) {
  Config c;
  c.merge_text("# comment\n\nseed = 7  # trailing\nnetwork.window=12\n", "test");
  EXPECT_EQ(c.get_int("seed"), 7);
  EXPECT_EQ(c.get_int("network.window"), 12);
  try {
    c.merge_text("seed 7\n", "bad.conf");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("bad.conf:1"), std::string::npos);
  }
}

TEST(Config, TypedGettersValidate) {
  Config c;
  c.set("seed", "abc");
  EXPECT_THROW(c.get_int("seed"), Error);
  c.set("embed.train_words", "maybe");
  EXPECT_THROW(c.get_bool("embed.train_words"), Error);
}

TEST(Config, EnvironmentOverridesFile) {
  EXPECT_EQ(Config::env_name("network.min_co"), "NOVELSCOPE_NETWORK_MIN_CO");
  ::setenv("NOVELSCOPE_NETWORK_MIN_CO", "9", 1);
  Config c;
  c.merge_text("network.min_co = 3\n", "file");
  c.apply_environment();
  ::unsetenv("NOVELSCOPE_NETWORK_MIN_CO");
  EXPECT_EQ(c.get_int("network.min_co"), 9);
}

TEST(Config, FromFileReadsAndReportsMissing) {
  testing::TempDir dir;
  {
    std::ofstream out(dir / "a.conf");
    out << "similar.k = 4\n";
  }
  EXPECT_EQ(Config::from_file(dir / "a.conf").get_int("similar.k"), 4);
  try {
    Config::from_file(dir / "missing.conf");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(Config, DigestTracksOnlyNamedKeys) {
  Config a;
  Config b;
  b.set("seed", "43");
  EXPECT_EQ(a.digest_of({"network.window"}), b.digest_of({"network.window"}));
  EXPECT_NE(a.digest_of({"seed"}), b.digest_of({"seed"}));
}

}  // namespace
}  // namespace novelscope
