#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "carpool/core_graph.hpp"
#include "carpool/girth_labeller.hpp"
#include "carpool/live_orientation.hpp"
#include "carpool/star_balancer.hpp"

namespace carpool {

namespace fault { class Injector; }
namespace testing { struct Access; }

using CycleId = std::uint64_t;

/// A short cycle v0 v1 ... v(k-1); edges[i] joins vertices[i] and
/// vertices[(i + 1) % k] and is directed that way in the public orientation.
struct CycleRecord {
  CycleId id = 0;
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  std::size_t length() const { return edges.size(); }
};

enum class Home : std::uint8_t { None, Girth, Cycle };

struct EdgeHome {
  Home kind = Home::None;
  CycleId cycle = 0;
};

/// What one add/remove did inside the partition.
struct PartitionOutcome {
  bool joined_girth = false;        // add_edge: new edge went to the high-girth set
  bool left_girth = false;          // remove_edge: removed edge was a high-girth edge
  std::size_t cycles_formed = 0;
  std::size_t cycles_dissolved = 0;
  std::size_t reinserted = 0;
  std::size_t longest_flip_path = 0;
  std::size_t label_changes = 0;
  std::size_t balancer_flips = 0;   // raw flip operations, before any diffing
};

/// Splits the live edges into a high-girth set (girth >= 2 log_n + 1, handled
/// by the labeller and balancer) and short cycles (length <= 2 log_n) that are
/// directed cyclically and so add nothing to any vertex's discrepancy.
///
/// An arriving edge whose endpoints are within 2 log_n - 1 hops in the
/// high-girth set closes a short cycle: the path edges leave the high-girth
/// set and the cycle is stored, directed starting with the new edge u -> v.
/// Deleting a cycle edge dissolves its cycle and re-adds the survivors in
/// ascending id order.
class CyclePartition {
 public:
  explicit CyclePartition(const GirthThreshold& threshold);

  /// The edge must be live in `graph` and not yet homed here.
  PartitionOutcome add_edge(EdgeId id, const Multigraph& graph, LiveOrientation& orientation);
  /// The edge must still be live in `graph`; the caller erases it afterwards.
  PartitionOutcome remove_edge(EdgeId id, const Multigraph& graph, LiveOrientation& orientation);

  /// Shortest path from min(u, v) to max(u, v) through high-girth edges with at
  /// most 2 log_n - 1 edges; the lexicographically smallest vertex sequence
  /// among the shortest ones.
  std::optional<std::vector<VertexId>> find_short_cycle(VertexId u, VertexId v) const;

  EdgeHome home(EdgeId id) const { return id < home_.size() ? home_[id] : EdgeHome{}; }
  const std::map<CycleId, CycleRecord>& cycles() const { return cycles_; }
  std::size_t girth_edge_count() const { return labeller_.size(); }
  std::vector<EdgeId> girth_edges() const { return labeller_.edges(); }
  /// High-girth neighbours of v as (neighbour, edge) pairs.
  const std::vector<std::pair<VertexId, EdgeId>>& girth_adjacency(VertexId v) const {
    return adjacency_[v];
  }

  const GirthLabeller& labeller() const { return labeller_; }
  const StarBalancer& balancer() const { return balancer_; }
  const GirthThreshold& threshold() const { return threshold_; }

 private:
  friend class fault::Injector;
  friend struct testing::Access;

  void add_to_girth(const EdgeRecord& edge, const Multigraph& graph,
                    LiveOrientation& orientation, PartitionOutcome& outcome);
  void remove_from_girth(EdgeId id, LiveOrientation& orientation, PartitionOutcome& outcome);
  void form_cycle(const EdgeRecord& edge, const std::vector<VertexId>& path,
                  LiveOrientation& orientation, PartitionOutcome& outcome);
  EdgeId girth_edge_between(VertexId a, VertexId b) const;

  GirthThreshold threshold_;
  GirthLabeller labeller_;
  StarBalancer balancer_;
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adjacency_;
  std::vector<EdgeHome> home_;
  std::map<CycleId, CycleRecord> cycles_;
  CycleId next_cycle_ = 0;

  mutable std::vector<std::uint64_t> seen_;
  mutable std::vector<std::size_t> dist_;
  mutable std::uint64_t stamp_ = 0;
};

}  // namespace carpool
