#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "carpool/engine.hpp"

namespace carpool {

/// Ordered update events over a fixed vertex universe.  Delete-by-id events
/// refer to ids as the engine assigns them: the k-th insert gets id k - 1.
struct UpdateStream {
  std::size_t n = 0;
  std::vector<UpdateEvent> events;
  std::string generator;  // provenance only
  std::uint64_t seed = 0;

  friend bool operator==(const UpdateStream& a, const UpdateStream& b) {
    return a.n == b.n && a.events == b.events;
  }
};

namespace adversary {

/// Seeded 64-bit source with a portable bounded draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [0, 1).
  double unit();
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Each step deletes a uniformly random live edge with probability p_delete
/// (when one exists) and otherwise inserts a uniformly random non-loop pair.
/// Throws InvalidSize for n < 2 with steps > 0, or p_delete outside [0, 1).
UpdateStream gen_random(std::size_t n, std::size_t steps, double p_delete, std::uint64_t seed);

/// Keeps the underlying graph at girth >= 2 log_n + 1 by rejecting inserts
/// that would close a shorter cycle.  With forest_only, only inserts joining
/// two components are accepted and the graph stays acyclic.
UpdateStream gen_high_girth(std::size_t n, std::size_t steps, std::uint64_t seed,
                            double p_delete = 0.2, bool forest_only = false);

/// Builds a sparse high-girth background plus a handful of cycles of length
/// min(2 log_n, n), then repeatedly deletes one edge of a churn cycle and
/// re-inserts the same pair.  Every deletion of a stored cycle forces a full
/// dissolution and re-insertion of its survivors.
UpdateStream gen_cycle_churn(std::size_t n, std::size_t steps, std::uint64_t seed);

struct AdaptiveRun {
  UpdateStream stream;
  std::vector<UpdateResult> results;
};

/// Drives `engine` directly.  Each step reads the current orientation and
/// joins the two vertices with the largest same-sign imbalance; with
/// probability 0.15 it instead deletes the edge the engine flipped most
/// recently (if still live).  The realized stream is returned for replay.
AdaptiveRun gen_adaptive_greedy(Engine& engine, std::size_t steps, std::uint64_t seed);

}  // namespace adversary
}  // namespace carpool
