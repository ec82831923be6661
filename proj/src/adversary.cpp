#include "carpool/adversary.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>

namespace carpool::adversary {

std::uint64_t Rng::below(std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % bound;
  }
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

namespace {

void require_pairs(std::size_t n, std::size_t steps) {
  girth_threshold(n);
  if (n < 2 && steps > 0) {
    throw Error(ErrorCode::InvalidSize, "a stream with updates needs at least two vertices");
  }
}

std::pair<VertexId, VertexId> random_pair(Rng& rng, std::size_t n) {
  const auto u = static_cast<VertexId>(rng.below(n));
  auto v = static_cast<VertexId>(rng.below(n - 1));
  if (v >= u) ++v;
  return {u, v};
}

/// Live edge bookkeeping shared by the oblivious generators: a simple graph
/// with adjacency, a swap-remove list of live ids, and id assignment that
/// mirrors the engine's.
class Tracker {
 public:
  explicit Tracker(std::size_t n) : adjacency_(n), slot_(), seen_(n, 0) {}

  EdgeId insert(VertexId u, VertexId v, UpdateStream& stream) {
    const EdgeId id = next_id_++;
    ends_.emplace_back(u, v);
    slot_.push_back(live_.size());
    live_.push_back(id);
    adjacency_[u].emplace_back(v, id);
    adjacency_[v].emplace_back(u, id);
    stream.events.push_back(UpdateEvent::insert(u, v));
    return id;
  }

  void erase(EdgeId id, UpdateStream& stream) {
    const auto [u, v] = ends_[id];
    const std::size_t at = slot_[id];
    live_[at] = live_.back();
    slot_[live_[at]] = at;
    live_.pop_back();
    for (VertexId x : {u, v}) {
      std::erase_if(adjacency_[x], [id](const auto& entry) { return entry.second == id; });
    }
    stream.events.push_back(UpdateEvent::erase(id));
  }

  std::pair<VertexId, VertexId> ends(EdgeId id) const { return ends_[id]; }
  const std::vector<EdgeId>& live() const { return live_; }

  /// True when v is within `cap` hops of u (any distance when cap == 0).
  bool within(VertexId u, VertexId v, std::size_t cap) {
    ++stamp_;
    seen_[u] = stamp_;
    std::vector<VertexId> frontier{u};
    std::vector<VertexId> next;
    for (std::size_t depth = 1; !frontier.empty() && (cap == 0 || depth <= cap); ++depth) {
      next.clear();
      for (VertexId x : frontier) {
        for (const auto& [y, id] : adjacency_[x]) {
          if (y == v) return true;
          if (seen_[y] == stamp_) continue;
          seen_[y] = stamp_;
          next.push_back(y);
        }
      }
      frontier.swap(next);
    }
    return false;
  }

 private:
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adjacency_;
  std::vector<std::pair<VertexId, VertexId>> ends_;
  std::vector<std::size_t> slot_;
  std::vector<EdgeId> live_;
  EdgeId next_id_ = 0;
  std::vector<std::uint64_t> seen_;
  std::uint64_t stamp_ = 0;
};

/// Tries a few random pairs and inserts the first that keeps the girth bound.
bool try_girth_insert(Tracker& tracker, Rng& rng, std::size_t n, std::size_t cap,
                      bool forest_only, UpdateStream& stream, std::size_t attempts = 32) {
  for (std::size_t i = 0; i < attempts; ++i) {
    const auto [u, v] = random_pair(rng, n);
    if (!tracker.within(u, v, forest_only ? 0 : cap)) {
      tracker.insert(u, v, stream);
      return true;
    }
  }
  return false;
}

}  // namespace

UpdateStream gen_random(std::size_t n, std::size_t steps, double p_delete, std::uint64_t seed) {
  require_pairs(n, steps);
  if (!(p_delete >= 0.0 && p_delete < 1.0)) {
    throw Error(ErrorCode::InvalidSize, "p_delete must lie in [0, 1)");
  }
  UpdateStream stream{n, {}, "random", seed};
  stream.events.reserve(steps);
  Rng rng(seed);
  std::vector<EdgeId> live;
  EdgeId next_id = 0;
  for (std::size_t step = 0; step < steps; ++step) {
    if (!live.empty() && rng.chance(p_delete)) {
      const std::size_t at = rng.below(live.size());
      stream.events.push_back(UpdateEvent::erase(live[at]));
      live[at] = live.back();
      live.pop_back();
    } else {
      const auto [u, v] = random_pair(rng, n);
      stream.events.push_back(UpdateEvent::insert(u, v));
      live.push_back(next_id++);
    }
  }
  return stream;
}

UpdateStream gen_high_girth(std::size_t n, std::size_t steps, std::uint64_t seed,
                            double p_delete, bool forest_only) {
  require_pairs(n, steps);
  const auto t = girth_threshold(n);
  const std::size_t cap = t.short_cycle_max - 1;
  UpdateStream stream{n, {}, forest_only ? "forest" : "high_girth", seed};
  Rng rng(seed);
  Tracker tracker(n);
  while (stream.events.size() < steps) {
    const bool want_delete = !tracker.live().empty() && rng.chance(p_delete);
    if (!want_delete && try_girth_insert(tracker, rng, n, cap, forest_only, stream)) continue;
    if (tracker.live().empty()) break;  // nothing can be inserted or deleted
    const auto& live = tracker.live();
    tracker.erase(live[rng.below(live.size())], stream);
  }
  return stream;
}

UpdateStream gen_cycle_churn(std::size_t n, std::size_t steps, std::uint64_t seed) {
  require_pairs(n, steps);
  const auto t = girth_threshold(n);
  const std::size_t length = std::min(t.short_cycle_max, n);
  UpdateStream stream{n, {}, "cycle_churn", seed};
  Rng rng(seed);
  Tracker tracker(n);

  for (std::size_t i = 0; i < 2 * n && stream.events.size() < steps; ++i) {
    try_girth_insert(tracker, rng, n, t.short_cycle_max - 1, false, stream, 1);
  }

  const std::size_t cycle_count = std::clamp<std::size_t>(n / (2 * length), 1, 8);
  std::vector<std::vector<EdgeId>> cycles;
  std::vector<VertexId> pool(n);
  for (std::size_t c = 0; c < cycle_count && stream.events.size() < steps; ++c) {
    std::iota(pool.begin(), pool.end(), VertexId{0});
    for (std::size_t i = 0; i < length; ++i) {
      std::swap(pool[i], pool[i + rng.below(n - i)]);
    }
    std::vector<EdgeId> ids;
    for (std::size_t i = 0; i < length; ++i) {
      const VertexId a = pool[i];
      const VertexId b = pool[(i + 1) % length];
      ids.push_back(tracker.insert(a, b, stream));
      if (length == 2) break;  // a 2-cycle needs a second parallel edge, added below
    }
    if (length == 2) ids.push_back(tracker.insert(pool[0], pool[1], stream));
    cycles.push_back(std::move(ids));
  }

  while (stream.events.size() < steps && !cycles.empty()) {
    auto& ids = cycles[rng.below(cycles.size())];
    const std::size_t at = rng.below(ids.size());
    const auto [u, v] = tracker.ends(ids[at]);
    tracker.erase(ids[at], stream);
    ids[at] = tracker.insert(u, v, stream);
  }
  stream.events.resize(std::min(stream.events.size(), steps));
  return stream;
}

AdaptiveRun gen_adaptive_greedy(Engine& engine, std::size_t steps, std::uint64_t seed) {
  const std::size_t n = engine.vertex_count();
  require_pairs(n, steps);
  if (engine.graph().next_id() != 0) {
    throw Error(ErrorCode::StateCorruption, "the adaptive driver needs a fresh engine");
  }
  AdaptiveRun run;
  run.stream = UpdateStream{n, {}, "adaptive", seed};
  Rng rng(seed);
  std::optional<EdgeId> recent;
  std::vector<VertexId> order(n);

  for (std::size_t step = 0; step < steps; ++step) {
    UpdateEvent event;
    if (recent && engine.graph().is_live(*recent) && rng.chance(0.15)) {
      event = UpdateEvent::erase(*recent);
    } else {
      const auto& imbalance = engine.orientation().imbalances();
      std::iota(order.begin(), order.end(), VertexId{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](VertexId a, VertexId b) { return imbalance[a] > imbalance[b]; });
      const auto high = std::min(imbalance[order[0]], imbalance[order[1]]);
      const auto low = std::min(-imbalance[order[n - 1]], -imbalance[order[n - 2]]);
      if (high <= 0 && low <= 0) {
        const auto [u, v] = random_pair(rng, n);
        event = UpdateEvent::insert(u, v);
      } else if (high >= low) {
        event = UpdateEvent::insert(order[0], order[1]);
      } else {
        event = UpdateEvent::insert(std::min(order[n - 1], order[n - 2]),
                                    std::max(order[n - 1], order[n - 2]));
      }
    }
    auto result = engine.apply(event);
    if (!result.flips.empty()) recent = result.flips.back();
    run.stream.events.push_back(event);
    run.results.push_back(std::move(result));
  }
  return run;
}

}  // namespace carpool::adversary
