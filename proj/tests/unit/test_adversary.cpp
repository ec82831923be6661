#include <doctest.h>

#include <set>

#include "carpool/adversary.hpp"
#include "carpool/oracle.hpp"
#include "carpool/stream_io.hpp"

using namespace carpool;

namespace {

/// Replays a stream's edge set, checking legality on the way; calls `each`
/// with the live edges after every event.
template <typename Fn>
void replay_edges(const UpdateStream& s, Fn&& each) {
  std::vector<oracle::Edge> all;
  std::vector<bool> live;
  for (const auto& ev : s.events) {
    switch (ev.kind) {
      case EventKind::Insert:
        REQUIRE(ev.u < s.n);
        REQUIRE(ev.v < s.n);
        REQUIRE(ev.u != ev.v);
        all.push_back({all.size(), ev.u, ev.v});
        live.push_back(true);
        break;
      case EventKind::DeleteById:
        REQUIRE(ev.id < all.size());
        REQUIRE(live[ev.id]);
        live[ev.id] = false;
        break;
      case EventKind::DeleteByPair:
        FAIL("generators emit deletions by id");
    }
    std::vector<oracle::Edge> current;
    for (const auto& e : all) {
      if (live[e.id]) current.push_back(e);
    }
    each(current);
  }
}

}  // namespace

TEST_CASE("gen_random basics") {
  CHECK(adversary::gen_random(8, 0, 0.3, 1).events.empty());
  const auto inserts = adversary::gen_random(8, 50, 0.0, 1);
  CHECK(inserts.events.size() == 50);
  for (const auto& ev : inserts.events) CHECK(ev.kind == EventKind::Insert);
  CHECK(adversary::gen_random(16, 500, 0.4, 9) == adversary::gen_random(16, 500, 0.4, 9));
  CHECK_FALSE(adversary::gen_random(16, 500, 0.4, 9) == adversary::gen_random(16, 500, 0.4, 10));
  CHECK_THROWS_AS(adversary::gen_random(1, 5, 0.0, 1), Error);
  CHECK_THROWS_AS(adversary::gen_random(4, 5, 1.0, 1), Error);
  replay_edges(adversary::gen_random(5, 2000, 0.5, 3), [](const auto&) {});
}

TEST_CASE("forest streams stay acyclic") {
  const auto s = adversary::gen_high_girth(32, 1500, 2, 0.2, true);
  CHECK(s.events.size() == 1500);
  replay_edges(s, [&](const auto& edges) {
    REQUIRE_FALSE(oracle::brute_girth(s.n, edges).has_value());
  });
}

TEST_CASE("high-girth streams keep girth >= 2 log_n + 1 after every event") {
  for (std::size_t n : {2u, 3u, 8u, 16u, 64u}) {
    const auto t = girth_threshold(n);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto s = adversary::gen_high_girth(n, 1500, seed);
      REQUIRE(s.events.size() == 1500);
      replay_edges(s, [&](const auto& edges) {
        const auto g = oracle::brute_girth(n, edges);
        REQUIRE((!g || *g >= t.girth_min));
      });
    }
  }
}

TEST_CASE("cycle churn streams are legal and deterministic") {
  for (std::size_t n : {2u, 3u, 8u, 64u, 512u}) {
    const auto s = adversary::gen_cycle_churn(n, 3000, 5);
    CHECK(s.events.size() == 3000);
    CHECK(s == adversary::gen_cycle_churn(n, 3000, 5));
    replay_edges(s, [](const auto&) {});
  }
}

TEST_CASE("adaptive runs replay to the identical trace") {
  Engine live(24);
  const auto run = adversary::gen_adaptive_greedy(live, 3000, 12);
  REQUIRE(run.stream.events.size() == 3000);
  replay_edges(run.stream, [](const auto&) {});

  Engine fresh(24);
  for (std::size_t i = 0; i < run.stream.events.size(); ++i) {
    const auto r = fresh.apply(run.stream.events[i]);
    REQUIRE(io::trace_line(i, run.stream.events[i], r) ==
            io::trace_line(i, run.stream.events[i], run.results[i]));
  }
  CHECK(live.metrics().max_discrepancy_ever <= 3);
  CHECK_THROWS_AS(adversary::gen_adaptive_greedy(live, 1, 1), Error);
}

TEST_CASE("bounded draws stay in range") {
  adversary::Rng rng(1);
  for (std::uint64_t bound : {1ull, 2ull, 3ull, 7ull, 1000ull}) {
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
      const auto x = rng.below(bound);
      REQUIRE(x < bound);
      seen.insert(x);
    }
    if (bound <= 7) CHECK(seen.size() == bound);
  }
}
