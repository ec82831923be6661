#include <doctest.h>

#include <algorithm>
#include <deque>
#include <optional>
#include <set>

#include "carpool/adversary.hpp"
#include "carpool/girth_labeller.hpp"
#include "test_access.hpp"

using namespace carpool;
using carpool::testing::Access;

namespace {

/// Directed BFS over the labeller's arcs, rebuilt from arc(id) for every
/// edge rather than from the out-lists.  Returns the distance of every vertex.
std::vector<std::optional<std::size_t>> directed_distances(const GirthLabeller& h, VertexId start,
                                                           std::size_t n) {
  std::vector<std::vector<VertexId>> out(n);
  for (EdgeId id : h.edges()) out[h.arc(id).tail].push_back(h.arc(id).head);
  std::vector<std::optional<std::size_t>> dist(n);
  dist[start] = 0;
  std::deque<VertexId> q{start};
  while (!q.empty()) {
    const auto x = q.front();
    q.pop_front();
    for (auto y : out[x]) {
      if (!dist[y]) {
        dist[y] = *dist[x] + 1;
        q.push_back(y);
      }
    }
  }
  return dist;
}

std::optional<std::size_t> nearest_sink_distance(const GirthLabeller& h, VertexId start,
                                                 std::size_t n) {
  const auto dist = directed_distances(h, start, n);
  std::optional<std::size_t> best;
  for (VertexId v = 0; v < n; ++v) {
    if (dist[v] && h.out_degree(v) <= 1 && (!best || *dist[v] < *best)) best = dist[v];
  }
  return best;
}

void check_path_shape(const GirthLabeller& h, VertexId start, const std::vector<EdgeId>& path) {
  VertexId x = start;
  for (EdgeId id : path) {
    REQUIRE(h.arc(id).tail == x);
    x = h.arc(id).head;
  }
  REQUIRE(h.out_degree(x) <= 1);
}

}  // namespace

TEST_CASE("first insert takes the tie-break orientation and needs no repair") {
  GirthLabeller h(girth_threshold(8));
  const auto delta = h.insert({0, 0, 1, true});
  CHECK(h.arc(0) == Arc{0, 1});
  CHECK(h.out_degree(0) == 1);
  REQUIRE(delta.inserted.has_value());
  CHECK(delta.inserted->first == 0);
  CHECK(delta.inserted->second == 1);
  CHECK(delta.relabeled.empty());
  CHECK(delta.path_length == 0);
}

TEST_CASE("insert leaves the endpoint with smaller out-degree") {
  GirthLabeller h(girth_threshold(8));
  Access::adopt(h, 0, {0, 1});
  Access::adopt(h, 1, {0, 2});
  const auto delta = h.insert({2, 0, 3, true});
  CHECK(h.arc(2) == Arc{3, 0});
  CHECK(delta.relabeled.empty());
  CHECK(delta.inserted->second == 0);
}

TEST_CASE("out-degree 3 triggers a one-edge repair path") {
  GirthLabeller h(girth_threshold(8));
  Access::adopt(h, 0, {0, 1});
  Access::adopt(h, 1, {0, 2});
  Access::adopt(h, 2, {3, 4});
  Access::adopt(h, 3, {3, 5});

  // Independent replay: after orienting 0 -> 3 the nearest sink is at distance 1.
  GirthLabeller probe = h;
  Access::adopt(probe, 4, {0, 3});
  CHECK(nearest_sink_distance(probe, 0, 8) == std::optional<std::size_t>{1});

  const auto delta = h.insert({4, 0, 3, true});
  CHECK(h.arc(4) == Arc{0, 3});
  CHECK(h.arc(0) == Arc{1, 0});
  REQUIRE(delta.relabeled.size() == 1);
  CHECK(delta.relabeled[0].id == 0);
  CHECK(delta.relabeled[0].old_label == 1);
  CHECK(delta.relabeled[0].new_label == 0);
  CHECK(delta.inserted->second == 3);
  CHECK(delta.path_length == 1);
  for (VertexId v = 0; v < 8; ++v) CHECK(h.out_degree(v) <= 2);
}

TEST_CASE("find_flip_path reaches a distance-one sink") {
  GirthLabeller h(girth_threshold(8));
  Access::adopt(h, 0, {0, 1});
  Access::adopt(h, 1, {0, 2});
  Access::adopt(h, 2, {0, 3});
  Access::adopt(h, 3, {2, 4});
  Access::adopt(h, 4, {2, 5});
  const auto path = h.find_flip_path(0);
  CHECK(path == std::vector<EdgeId>{0});
}

TEST_CASE("complete binary arborescences: path length equals depth, levels double") {
  for (std::size_t depth = 1; depth <= 7; ++depth) {
    const std::size_t n = (std::size_t{1} << (depth + 1)) - 1;
    GirthLabeller h(girth_threshold(n));
    REQUIRE(h.threshold().log_n >= depth);
    EdgeId id = 0;
    for (VertexId p = 0; 2 * p + 2 < n; ++p) {
      Access::adopt(h, id++, {p, 2 * p + 1});
      Access::adopt(h, id++, {p, 2 * p + 2});
    }
    const auto path = h.find_flip_path(0);
    CHECK(path.size() == depth);
    check_path_shape(h, 0, path);
    // first leaf in ascending-id BFS order is the leftmost one
    CHECK(h.arc(path.back()).head == (std::size_t{1} << depth) - 1);

    const auto dist = directed_distances(h, 0, n);
    for (std::size_t level = 0; level <= depth; ++level) {
      const auto count = std::count(dist.begin(), dist.end(), std::optional<std::size_t>{level});
      CHECK(static_cast<std::size_t>(count) >= (std::size_t{1} << level));
    }
  }
}

TEST_CASE("no sink within log_n hops is an invariant violation") {
  // Every vertex has out-degree 2: impossible under the girth precondition.
  GirthLabeller h(girth_threshold(4));
  const Arc arcs[] = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {2, 0}, {3, 0}, {3, 1}};
  EdgeId id = 0;
  for (const auto& a : arcs) Access::adopt(h, id++, a);
  try {
    h.find_flip_path(0);
    FAIL("expected an invariant violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvariantViolation);
  }
}

TEST_CASE("deletion never flips") {
  SUBCASE("only edge") {
    GirthLabeller h(girth_threshold(4));
    h.insert({0, 0, 1, true});
    const auto delta = h.erase(0);
    REQUIRE(delta.deleted.has_value());
    CHECK(delta.deleted->first == 0);
    CHECK(delta.deleted->second == 1);
    CHECK(delta.relabeled.empty());
    CHECK(h.size() == 0);
  }
  SUBCASE("neighbour untouched") {
    GirthLabeller h(girth_threshold(4));
    Access::adopt(h, 0, {0, 1});
    Access::adopt(h, 1, {1, 2});
    h.erase(0);
    CHECK(h.arc(1) == Arc{1, 2});
    CHECK(h.out_degree(1) == 1);
  }
  SUBCASE("wrong partition") {
    GirthLabeller h(girth_threshold(4));
    try {
      h.erase(3);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::WrongPartition);
    }
  }
}

TEST_CASE("high-girth streams keep out-degree <= 2 with short repair paths") {
  std::size_t repairs = 0;
  for (std::size_t n : {8u, 16u, 64u, 256u}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const auto stream = adversary::gen_high_girth(n, 3000, seed, 0.2);
      const auto t = girth_threshold(n);
      GirthLabeller h(t);
      std::vector<std::pair<VertexId, VertexId>> ends;
      for (const auto& ev : stream.events) {
        if (ev.kind == EventKind::Insert) {
          const EdgeId id = ends.size();
          ends.emplace_back(ev.u, ev.v);

          // replay the orientation rule on a copy and measure the sink distance
          GirthLabeller probe = h;
          VertexId tail = std::min(ev.u, ev.v), head = std::max(ev.u, ev.v);
          if (probe.out_degree(head) < probe.out_degree(tail)) std::swap(tail, head);
          Access::adopt(probe, id, {tail, head});
          std::optional<std::size_t> expected;
          if (probe.out_degree(tail) == 3) expected = nearest_sink_distance(probe, tail, n);

          const auto delta = h.insert({id, ev.u, ev.v, true});
          if (expected) {
            ++repairs;
            REQUIRE(delta.path_length == *expected);
          } else {
            REQUIRE(delta.path_length == 0);
          }
          REQUIRE(delta.path_length <= t.log_n);
          REQUIRE(delta.label_changes() <= t.log_n + 1);
          std::set<EdgeId> seen{id};
          for (const auto& c : delta.relabeled) {
            REQUIRE(c.old_label != c.new_label);
            REQUIRE(seen.insert(c.id).second);
            const auto [a, b] = ends[c.id];
            REQUIRE(((c.old_label == a && c.new_label == b) ||
                     (c.old_label == b && c.new_label == a)));
          }
        } else {
          const auto delta = h.erase(ev.id);
          REQUIRE(delta.relabeled.empty());
        }
        std::vector<std::size_t> foreign(n, 0);
        for (EdgeId id : h.edges()) {
          const auto [a, b] = ends[id];
          ++foreign[h.label(id) == a ? b : a];
        }
        for (VertexId v = 0; v < n; ++v) {
          REQUIRE(h.out_degree(v) <= 2);
          REQUIRE(foreign[v] <= 2);
        }
      }
    }
  }
  CHECK(repairs > 0);
}
