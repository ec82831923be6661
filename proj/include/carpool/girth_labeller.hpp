#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "carpool/core_graph.hpp"

namespace carpool {

namespace fault { class Injector; }
namespace testing { struct Access; }

struct LabelChange {
  EdgeId id;
  VertexId old_label;
  VertexId new_label;
};

/// Label changes produced by one labeller operation, consumed by the balancer.
struct LabelDelta {
  std::vector<LabelChange> relabeled;
  std::optional<std::pair<EdgeId, VertexId>> inserted;  // (edge, final label)
  std::optional<std::pair<EdgeId, VertexId>> deleted;   // (edge, label it had)
  std::size_t path_length = 0;                          // repair path, 0 if none

  std::size_t label_changes() const { return relabeled.size() + (inserted ? 1 : 0); }
};

/// Orientation of a high-girth edge set with every out-degree at most 2.
///
/// Inserted edges leave the endpoint with the smaller out-degree (smaller id on
/// ties).  When that pushes the tail to out-degree 3, the shortest directed
/// path to a vertex of out-degree <= 1 is reversed.  The caller keeps the girth
/// above 2 * log_n, which bounds that path by log_n; deletions never flip.
///
/// The label of an edge is its internal head, so a vertex v carries at most
/// two incident edges labelled with something other than v (its out-edges).
class GirthLabeller {
 public:
  explicit GirthLabeller(const GirthThreshold& threshold);

  /// Throws WrongPartition if the edge is already present and
  /// InvariantViolation if no repair path of length <= log_n exists.
  LabelDelta insert(const EdgeRecord& edge);
  /// Throws WrongPartition if the edge is not held here.
  LabelDelta erase(EdgeId id);

  /// Shortest directed path from `start` to a vertex with out-degree <= 1.
  /// Out-edges are explored in ascending id order; the first qualifying vertex
  /// reached wins.  Empty when `start` itself qualifies.
  std::vector<EdgeId> find_flip_path(VertexId start) const;

  bool contains(EdgeId id) const { return id < arcs_.size() && arcs_[id].valid(); }
  Arc arc(EdgeId id) const;
  VertexId label(EdgeId id) const { return arc(id).head; }
  std::size_t out_degree(VertexId v) const { return out_lists_[v].size(); }
  /// Out-edges of v in ascending id order.
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_lists_[v]; }
  std::size_t size() const { return size_; }
  std::vector<EdgeId> edges() const;
  const GirthThreshold& threshold() const { return threshold_; }

 private:
  friend class fault::Injector;
  friend struct testing::Access;

  void attach(EdgeId id, Arc arc);
  void detach(EdgeId id);

  GirthThreshold threshold_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<EdgeId>> out_lists_;
  std::size_t size_ = 0;

  // BFS scratch, stamped per search
  mutable std::vector<std::uint64_t> seen_;
  mutable std::vector<EdgeId> parent_edge_;
  mutable std::uint64_t stamp_ = 0;
};

}  // namespace carpool
