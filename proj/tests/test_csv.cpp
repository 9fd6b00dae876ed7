/*
 Copyright 2026 The laxsynth Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include "laxsynth/csv.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <sstream>

namespace laxsynth::csv {
namespace {

TEST(Csv, ShortestRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    EXPECT_EQ(parse_double(format_double(x)), x);
  }
  EXPECT_EQ(format_double(0.25), "0.25");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(1.0), "1");
}

TEST(Csv, ParseRejectsGarbage) {
  EXPECT_THROW(parse_double("1.0x"), std::runtime_error);
  EXPECT_THROW(parse_double(""), std::runtime_error);
  EXPECT_DOUBLE_EQ(parse_double("+2.5"), 2.5);
  EXPECT_DOUBLE_EQ(parse_double("-1e-3"), -1e-3);
}

TEST(Csv, ReadWriteTable) {
  std::ostringstream os;
  write_row(os, {"t", "u1"});
  write_row(os, {"0", "1"});
  write_row(os, {"0.5", ""});
  EXPECT_EQ(os.str(), "t,u1\n0,1\n0.5,\n");
  std::istringstream is(os.str());
  const Table t = read(is);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.column("u1"), 1);
  EXPECT_EQ(t.column("u2"), -1);
  EXPECT_EQ(t.rows[1][1], "");
}

TEST(Csv, RaggedRowsRejected) {
  std::istringstream is("a,b\n1,2,3\n");
  EXPECT_THROW(read(is), std::runtime_error);
  std::istringstream empty("");
  EXPECT_THROW(read(empty), std::runtime_error);
}

TEST(Csv, CarriageReturnsIgnored) {
  std::istringstream is("a,b\r\n1,2\r\n");
  const Table t = read(is);
  EXPECT_EQ(t.header[1], "b");
  EXPECT_EQ(t.rows[0][1], "2");
}

}  // namespace
}  // namespace laxsynth::csv
