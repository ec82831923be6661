#include <doctest.h>

#include "carpool/adversary.hpp"
#include "carpool/engine.hpp"
#include "carpool/fault.hpp"
#include "carpool/oracle.hpp"
#include "carpool/stream_io.hpp"

using namespace carpool;

TEST_CASE("first edge, then its antiparallel partner") {
  Engine e(4);
  auto r = e.insert(0, 1);
  CHECK(r.assigned_id == std::optional<EdgeId>{0});
  CHECK(r.recourse == 0);
  CHECK(r.max_discrepancy == 1);
  CHECK(r.route == UpdateRoute::InsertGirth);

  r = e.insert(1, 0);
  CHECK(r.route == UpdateRoute::InsertCycle);
  const auto d = e.discrepancy();
  CHECK(d.per_vertex[0] == 0);
  CHECK(d.per_vertex[1] == 0);
  CHECK(r.max_discrepancy == 0);
}

TEST_CASE("snapshots") {
  Engine e(5);
  CHECK(e.orientation_snapshot().empty());
  e.insert(2, 4);
  const auto snap = e.orientation_snapshot();
  CHECK(snap.size() == 1);
  CHECK(snap.contains(0));
}

TEST_CASE("fresh metrics are zero") {
  Engine e(16);
  const auto& m = e.metrics();
  CHECK(m.updates_applied == 0);
  CHECK(m.max_discrepancy_ever == 0);
  CHECK(m.max_recourse_single_update == 0);
  CHECK(m.total_recourse == 0);
  CHECK(m.recourse_histogram.empty());
  CHECK(m.amortized_recourse() == 0.0);
}

TEST_CASE("scripted n = 8 cycle extraction") {
  Engine e(8);
  for (VertexId i = 0; i < 6; ++i) e.insert(i, i + 1);
  CHECK(e.insert(0, 6).route == UpdateRoute::InsertGirth);
  CHECK(e.insert(0, 3).route == UpdateRoute::InsertCycle);
  CHECK(e.metrics().max_discrepancy_ever <= 3);
  CHECK(e.partition().cycles().size() == 1);
  CHECK(oracle::check_all_invariants(e).empty());
}

TEST_CASE("input errors leave the engine untouched") {
  Engine e(4);
  e.insert(0, 1);
  auto code_of = [&](const UpdateEvent& ev) {
    try {
      e.apply(ev);
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::Io;
  };
  CHECK(code_of(UpdateEvent::insert(2, 2)) == ErrorCode::SelfLoop);
  CHECK(code_of(UpdateEvent::insert(0, 9)) == ErrorCode::VertexOutOfRange);
  CHECK(code_of(UpdateEvent::erase(5)) == ErrorCode::UnknownEdge);
  CHECK(code_of(UpdateEvent::erase_between(2, 3)) == ErrorCode::NoLiveEdge);
  e.erase(0);
  CHECK(code_of(UpdateEvent::erase(0)) == ErrorCode::DeadEdge);
  CHECK_FALSE(e.poisoned());
  CHECK(e.metrics().updates_applied == 2);
  CHECK(e.insert(1, 2).assigned_id == std::optional<EdgeId>{1});
}

TEST_CASE("delete by pair removes the most recent parallel edge") {
  Engine e(3);
  e.insert(0, 1);
  e.insert(1, 2);
  e.insert(1, 0);
  const auto r = e.erase_between(0, 1);
  CHECK(r.edge == 2);
  CHECK(e.graph().is_live(0));
  CHECK_FALSE(e.graph().is_live(2));
}

TEST_CASE("flips are exactly the surviving edges whose direction changed") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto stream = adversary::gen_random(16, 3000, 0.4, seed);
    Engine e(16);
    for (const auto& ev : stream.events) {
      const auto before = e.orientation_snapshot();
      const auto r = e.apply(ev);
      const auto after = e.orientation_snapshot();
      std::vector<EdgeId> expected;
      for (const auto& [id, arc] : before.entries()) {
        if (const auto now = after.find(id); now && *now != arc) expected.push_back(id);
      }
      REQUIRE(r.flips == expected);
      REQUIRE(r.recourse == expected.size());
      REQUIRE(r.max_discrepancy == discrepancy(after).max);
    }
  }
}

TEST_CASE("per-route recourse bounds on random streams") {
  for (std::size_t n : {2u, 3u, 8u, 64u}) {
    const auto t = girth_threshold(n);
    for (double p : {0.0, 0.3, 0.6}) {
      const auto stream = adversary::gen_random(n, 5000, p, 17);
      Engine e(n);
      for (const auto& ev : stream.events) {
        const auto r = e.apply(ev);
        REQUIRE(r.max_discrepancy <= 3);
        REQUIRE(r.recourse <= recourse_ceiling(t));
        if (r.route == UpdateRoute::InsertGirth) {
          REQUIRE(r.recourse <= girth_insert_recourse_bound(t));
        }
        if (r.route == UpdateRoute::DeleteGirth) REQUIRE(r.recourse <= 1);
      }
      const auto& hist = e.metrics().recourse_histogram;
      if (const auto it = hist.find(UpdateRoute::DeleteGirth); it != hist.end()) {
        CHECK(it->second.rbegin()->first <= 1);
      }
    }
  }
}

TEST_CASE("snapshot equals replaying the trace") {
  const auto stream = adversary::gen_cycle_churn(32, 2000, 4);
  Engine e(32);
  io::TraceReplayer replay(32);
  for (std::size_t i = 0; i < stream.events.size(); ++i) {
    const auto r = e.apply(stream.events[i]);
    replay.apply_line(io::trace_line(i, stream.events[i], r));
    REQUIRE(replay.orientation() == e.orientation_snapshot());
  }
}

TEST_CASE("a corrupted engine refuses further updates") {
  Engine e(8);
  e.insert(0, 1);
  e.insert(0, 1);
  REQUIRE(fault::inject(e, fault::Fault::ReverseCycleEdge));
  CHECK(e.poisoned());
  try {
    e.insert(2, 3);
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::InvariantViolation);
  }
}

TEST_CASE("recourse bound helpers") {
  const auto t = girth_threshold(64);  // log_n = 6
  CHECK(girth_insert_recourse_bound(t) == 21);
  CHECK(recourse_ceiling(t) == 12 * (21 + 12));
}
