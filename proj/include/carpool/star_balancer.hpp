#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "carpool/core_graph.hpp"
#include "carpool/girth_labeller.hpp"
#include "carpool/live_orientation.hpp"

namespace carpool {

namespace fault { class Injector; }
namespace testing { struct Access; }

struct FlipSet {
  std::vector<EdgeId> flips;                               // reversed edges, no repeats
  std::optional<std::pair<EdgeId, Arc>> newly_oriented;    // initial direction of an insert
};

/// Keeps the public direction of high-girth edges balanced per label class:
/// at every vertex v, the edges labelled v that leave v and those that enter v
/// differ in number by at most one.  A flip only touches the class of the
/// flipped edge's label, so vertices are repaired independently.
class StarBalancer {
 public:
  explicit StarBalancer(std::size_t n);

  /// Applies a labeller delta: removes the deleted edge, moves relabelled
  /// edges between classes, orients an inserted edge to shrink its class's
  /// imbalance (out of the label vertex on a tie), then repairs every touched
  /// vertex in ascending order by flipping floor(k/2) smallest-id edges from
  /// the larger side.  Throws StateCorruption on edges it does not track.
  FlipSet apply(const LabelDelta& delta, const Multigraph& graph, LiveOrientation& orientation);

  /// Drops an edge from its class and repairs that class (at most one flip).
  /// The edge's public direction is left to the caller.
  FlipSet remove(EdgeId id, VertexId old_label, LiveOrientation& orientation);

  bool tracks(EdgeId id) const { return id < label_.size() && label_[id] != kNoVertex; }
  VertexId label_of(EdgeId id) const;
  /// Edges labelled v directed out of v / into v, ascending ids.
  const std::set<EdgeId>& label_out(VertexId v) const { return out_[v]; }
  const std::set<EdgeId>& label_in(VertexId v) const { return in_[v]; }

 private:
  friend class fault::Injector;
  friend struct testing::Access;

  void track(EdgeId id, VertexId label, const Arc& arc);
  void untrack(EdgeId id, VertexId expected_label);
  void repair(VertexId v, LiveOrientation& orientation, std::vector<EdgeId>& flips);

  std::vector<VertexId> label_;
  std::vector<std::set<EdgeId>> out_;
  std::vector<std::set<EdgeId>> in_;
};

}  // namespace carpool
