// Copyright 2026 The entfid Authors
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

#include <numbers>
#include <sstream>
#include <string>

#include "entfid/channel_io.hpp"
#include "entfid/scenario.hpp"
#include "gtest/gtest.h"
#include "support/random.hpp"

using namespace entfid;
using entfid::fixtures::Rng;

namespace {

KrausChannel parse_channel(const std::string& text) {
  std::istringstream in(text);
  return io::read_channel(in);
}

// Expects a ParseError at (line, column).
void expect_parse_error(const std::string& text, std::size_t line, std::size_t column) {
  try {
    parse_channel(text);
    ADD_FAILURE() << "no error for:\n" << text;
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
  }
}

}  // namespace

TEST(channel_io, parses_identity_channel) {
  const auto ch = parse_channel("dim=2 ops=1\n1+0j 0+0j\n0+0j 1+0j\n");
  EXPECT_EQ(ch.dim(), 2u);
  ASSERT_EQ(ch.operators().size(), 1u);
  EXPECT_EQ(ch.operators()[0], ComplexMatrix::identity(2));
  EXPECT_EQ(ch.tolerance(), io::load_tolerance);
}

TEST(channel_io, complex_entry_forms) {
  const auto ch = parse_channel(
      "dim=2 ops=1\n"
      "\n"
      "  0.5-0.5j\t-0.5-0.5j\n"
      "+0.5+0.5e0j -5e-1+5E-1j\n");
  const auto& e = ch.operators()[0];
  EXPECT_EQ(e(0, 0), complex(0.5, -0.5));
  EXPECT_EQ(e(0, 1), complex(-0.5, -0.5));
  EXPECT_EQ(e(1, 0), complex(0.5, 0.5));
  EXPECT_EQ(e(1, 1), complex(-0.5, 0.5));
}

TEST(channel_io, round_trip_is_exact) {
  Rng rng(211);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ch = fixtures::random_channel(rng, 2 + trial % 2, 2);
    std::ostringstream out;
    io::write_channel(out, ch);
    const auto back = parse_channel(out.str());
    ASSERT_EQ(back.operators().size(), ch.operators().size());
    for (std::size_t k = 0; k < ch.operators().size(); ++k) EXPECT_EQ(back.operators()[k], ch.operators()[k]);
    std::ostringstream again;
    io::write_channel(again, back);
    EXPECT_EQ(again.str(), out.str());
  }
}

TEST(channel_io, state_round_trip_is_exact) {
  Rng rng(223);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = fixtures::random_density(rng, 3);
    std::ostringstream out;
    io::write_density_matrix(out, rho);
    std::istringstream in(out.str());
    EXPECT_EQ(io::read_density_matrix(in).matrix(), rho.matrix());
  }
}

TEST(channel_io, exported_scenario_channel_acts_identically) {
  const auto ch = scenario::scenario_channel({std::numbers::pi / 3});
  std::ostringstream out;
  io::write_channel(out, ch);
  EXPECT_LT(max_action_difference(parse_channel(out.str()), ch), 1e-15);
}

TEST(channel_io, malformed_input_reports_position) {
  expect_parse_error("", 1, 1);
  expect_parse_error("dim=2\n", 1, 1);
  expect_parse_error("dim=x ops=1\n", 1, 5);
  expect_parse_error("dim=2 opz=1\n", 1, 7);
  expect_parse_error("dim=2 ops=0\n", 1, 11);
  expect_parse_error("dim=2 ops=1\n1+0j 0+0j\n0+0j\n", 3, 5);       // short row
  expect_parse_error("dim=2 ops=1\n1+0j 0+0j 0+0j\n", 2, 11);        // long row
  expect_parse_error("dim=2 ops=1\n1+0j 0+0j\n0+0j 1.0\n", 3, 6);    // missing j
  expect_parse_error("dim=2 ops=1\n1+0j 0+0j\n0+0j abc+1j\n", 3, 6);  // bad real part
  expect_parse_error("dim=2 ops=1\n1+0j 0+0j\n0+0j 1+-1j\n", 3, 6);  // doubled sign
  expect_parse_error("dim=2 ops=1\n1+0j 0+0j\n", 3, 1);              // truncated
  expect_parse_error("dim=2 ops=1\n1+0j 0+0j\n0+0j 1+0j\n  extra\n", 4, 3);
}

TEST(channel_io, completeness_is_checked_on_load) {
  EXPECT_THROW(parse_channel("dim=2 ops=1\n1+0j 0+0j\n0+0j 0.5+0j\n"), NotTracePreserving);
  // Deviations inside the load tolerance are accepted.
  EXPECT_NO_THROW(parse_channel("dim=2 ops=1\n1.000000001+0j 0+0j\n0+0j 1+0j\n"));
  EXPECT_THROW(parse_channel("dim=2 ops=1\n1.0000001+0j 0+0j\n0+0j 1+0j\n"), NotTracePreserving);
}

TEST(channel_io, state_file_validation) {
  std::istringstream ok("dim=2\n0.5+0j 0+0j\n0+0j 0.5+0j\n");
  EXPECT_LT(max_abs_diff(io::read_density_matrix(ok).matrix(), maximally_mixed(2).matrix()), 1e-16);
  std::istringstream bad_trace("dim=2\n1+0j 0+0j\n0+0j 1+0j\n");
  EXPECT_THROW(io::read_density_matrix(bad_trace), InvalidState);
  std::istringstream bad_header("dim=2 ops=1\n1+0j 0+0j\n0+0j 0+0j\n");
  EXPECT_THROW(io::read_density_matrix(bad_header), io::ParseError);
}
