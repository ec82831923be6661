#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "carpool/core_graph.hpp"

namespace carpool {

/// The public orientation as mutated by the balancer and the cycle layer.
///
/// On top of the plain mapping it keeps per-vertex signed imbalance, a
/// histogram of |imbalance| (so the global maximum is O(1) to read), and a
/// per-update journal holding the first-seen direction of every touched edge.
/// The engine diffs that journal against the final state to get the exact set
/// of flipped edges.
class LiveOrientation {
 public:
  explicit LiveOrientation(std::size_t n);

  const Orientation& view() const { return map_; }
  bool contains(EdgeId id) const { return map_.contains(id); }
  Arc at(EdgeId id) const { return map_.at(id); }

  void set(EdgeId id, Arc arc);
  void flip(EdgeId id);
  void erase(EdgeId id);

  std::int64_t imbalance(VertexId v) const { return imbalance_[v]; }
  const std::vector<std::int64_t>& imbalances() const { return imbalance_; }
  std::int64_t max_discrepancy() const { return max_abs_; }

  struct JournalEntry {
    EdgeId id;
    std::optional<Arc> before;
  };

  /// Starts a fresh journal; every edge touched afterwards is recorded once.
  void begin_journal();
  const std::vector<JournalEntry>& journal() const { return journal_; }

 private:
  void touch(EdgeId id);
  void shift(VertexId v, std::int64_t delta);

  Orientation map_;
  std::vector<std::int64_t> imbalance_;
  std::vector<std::size_t> abs_histogram_;
  std::int64_t max_abs_ = 0;

  std::vector<JournalEntry> journal_;
  std::vector<std::uint64_t> journal_stamp_;
  std::uint64_t epoch_ = 1;
};

}  // namespace carpool
