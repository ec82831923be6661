#include <doctest.h>

#include <random>
#include <sstream>

#include "carpool/adversary.hpp"
#include "carpool/stream_io.hpp"

using namespace carpool;

namespace {

void expect_parse_error(const std::string& text, ErrorCode code, std::size_t line) {
  try {
    io::parse_stream(text);
    FAIL("expected a parse error for: " << text);
  } catch (const ParseError& e) {
    CHECK(e.code() == code);
    CHECK(e.line() == line);
  }
}

}  // namespace

TEST_CASE("parse examples") {
  const auto s = io::parse_stream("n 4\n+ 0 1\n- 0 1\n");
  CHECK(s.n == 4);
  REQUIRE(s.events.size() == 2);
  CHECK(s.events[0].kind == EventKind::Insert);
  CHECK(s.events[1].kind == EventKind::DeleteByPair);

  const auto by_id = io::parse_stream("# hello\n\nn 3\n+ 2 1\n-# 0\n");
  REQUIRE(by_id.events.size() == 2);
  CHECK(by_id.events[1].kind == EventKind::DeleteById);
  CHECK(by_id.events[1].id == 0);

  const auto tagged = io::parse_stream("# generator random seed 17\nn 5\n");
  CHECK(tagged.generator == "random");
  CHECK(tagged.seed == 17);
}

TEST_CASE("parse errors carry code and line") {
  expect_parse_error("n 4\n+ 0 0\n", ErrorCode::SelfLoop, 2);
  expect_parse_error("n 4\n-# 7\n", ErrorCode::UnknownEdge, 2);
  expect_parse_error("n 4\n+ 0 1\n-# 0\n-# 0\n", ErrorCode::DeadEdge, 4);
  expect_parse_error("n 4\n+ 0 1\n- 2 3\n", ErrorCode::NoLiveEdge, 3);
  expect_parse_error("n 4\n+ 0 4\n", ErrorCode::VertexOutOfRange, 2);
  expect_parse_error("+ 0 1\n", ErrorCode::MissingHeader, 1);
  expect_parse_error("", ErrorCode::MissingHeader, 1);
  expect_parse_error("n 0\n", ErrorCode::InvalidSize, 1);
  expect_parse_error("n 4\n* 0 1\n", ErrorCode::Malformed, 2);
  expect_parse_error("n 4\n+ 0\n", ErrorCode::Malformed, 2);
  expect_parse_error("n 4\n+ 0 1 2\n", ErrorCode::Malformed, 2);
  expect_parse_error("n 4\nn 4\n", ErrorCode::Malformed, 2);
}

TEST_CASE("serialize and parse round-trip") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 40;
    const auto s = adversary::gen_random(n, rng() % 400, 0.4, rng());
    const auto text = io::serialize_stream(s);
    const auto back = io::parse_stream(text);
    REQUIRE(back == s);
    REQUIRE(io::serialize_stream(back) == text);
  }
}

TEST_CASE("trace replay reconstructs the engine orientation") {
  const auto s = adversary::gen_cycle_churn(16, 1500, 3);
  Engine e(s.n);
  io::TraceReplayer replay(s.n);
  for (std::size_t i = 0; i < s.events.size(); ++i) {
    const auto r = e.apply(s.events[i]);
    replay.apply_line(io::trace_line(i, s.events[i], r));
    REQUIRE(replay.orientation() == e.orientation_snapshot());
  }
  CHECK_THROWS_AS(replay.apply_line("not json"), Error);
}
