#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "carpool/core_graph.hpp"
#include "carpool/cycle_partition.hpp"
#include "carpool/live_orientation.hpp"

namespace carpool {

namespace fault { class Injector; }
namespace testing { struct Access; }

enum class EventKind : std::uint8_t { Insert, DeleteById, DeleteByPair };

struct UpdateEvent {
  EventKind kind = EventKind::Insert;
  VertexId u = 0;
  VertexId v = 0;
  EdgeId id = 0;

  static UpdateEvent insert(VertexId u, VertexId v) { return {EventKind::Insert, u, v, 0}; }
  static UpdateEvent erase(EdgeId id) { return {EventKind::DeleteById, 0, 0, id}; }
  static UpdateEvent erase_between(VertexId u, VertexId v) {
    return {EventKind::DeleteByPair, u, v, 0};
  }
  friend bool operator==(const UpdateEvent&, const UpdateEvent&) = default;
};

/// Where an update was routed; used to bucket recourse.
enum class UpdateRoute : std::uint8_t { InsertGirth, InsertCycle, DeleteGirth, DeleteCycle };

std::string_view to_string(UpdateRoute route);

struct UpdateResult {
  UpdateRoute route = UpdateRoute::InsertGirth;
  EdgeId edge = 0;                       // inserted or deleted edge
  std::optional<EdgeId> assigned_id;     // set for inserts
  std::optional<Arc> inserted_arc;       // direction of the inserted edge after the update
  std::vector<EdgeId> flips;             // surviving edges whose direction changed, ascending
  std::size_t recourse = 0;              // == flips.size()
  std::int64_t max_discrepancy = 0;      // global discrepancy after the update
  std::size_t longest_flip_path = 0;
  std::size_t label_changes = 0;
};

struct MetricsReport {
  std::uint64_t updates_applied = 0;
  std::int64_t max_discrepancy_ever = 0;
  std::size_t max_recourse_single_update = 0;
  std::uint64_t total_recourse = 0;
  std::size_t longest_flip_path = 0;
  /// route -> (recourse -> number of updates)
  std::map<UpdateRoute, std::map<std::size_t, std::uint64_t>> recourse_histogram;

  double amortized_recourse() const {
    return updates_applied == 0 ? 0.0
                                : static_cast<double>(total_recourse) /
                                      static_cast<double>(updates_applied);
  }
};

/// Recourse bound for an insertion that lands in the high-girth set:
/// 3 * (log_n + 1).
std::size_t girth_insert_recourse_bound(const GirthThreshold& t);

/// Closed-form per-update ceiling covering cycle dissolution:
/// 2 log_n * (3 (log_n + 1) + 2 log_n).  Chosen envelope, not a tight constant.
std::size_t recourse_ceiling(const GirthThreshold& t);

/// Fully-dynamic orientation of a multigraph with discrepancy at most 3.
///
/// Single-writer.  Input errors (bad vertex, self-loop, unknown or dead edge)
/// leave the state untouched.  Internal invariant failures poison the
/// instance: the error is rethrown with a state summary, and every later
/// call fails with InvariantViolation.
class Engine {
 public:
  explicit Engine(std::size_t n);

  UpdateResult apply(const UpdateEvent& event);
  UpdateResult insert(VertexId u, VertexId v) { return apply(UpdateEvent::insert(u, v)); }
  UpdateResult erase(EdgeId id) { return apply(UpdateEvent::erase(id)); }
  UpdateResult erase_between(VertexId u, VertexId v) {
    return apply(UpdateEvent::erase_between(u, v));
  }

  Orientation orientation_snapshot() const { return orientation_.view(); }
  const MetricsReport& metrics() const { return metrics_; }
  DiscrepancyReport discrepancy() const { return carpool::discrepancy(orientation_.view()); }

  std::size_t vertex_count() const { return graph_.vertex_count(); }
  const GirthThreshold& threshold() const { return graph_.threshold(); }
  const Multigraph& graph() const { return graph_; }
  const CyclePartition& partition() const { return partition_; }
  const LiveOrientation& orientation() const { return orientation_; }
  bool poisoned() const { return poisoned_; }

  std::string state_summary() const;

 private:
  friend class fault::Injector;
  friend struct testing::Access;

  UpdateResult apply_unchecked(const UpdateEvent& event);
  void record(const UpdateResult& result);

  Multigraph graph_;
  LiveOrientation orientation_;
  CyclePartition partition_;
  MetricsReport metrics_;
  bool poisoned_ = false;
};

}  // namespace carpool
