#pragma once

// Vertex/edge identity, multigraph bookkeeping, orientations and the
// logarithmic girth thresholds shared by every layer.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "carpool/error.hpp"

namespace carpool {

using VertexId = std::uint32_t;
using EdgeId = std::uint64_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// A directed edge tail -> head.
struct Arc {
  VertexId tail = kNoVertex;
  VertexId head = kNoVertex;

  bool valid() const { return tail != kNoVertex; }
  Arc reversed() const { return {head, tail}; }
  friend bool operator==(const Arc&, const Arc&) = default;
};

struct EdgeRecord {
  EdgeId id = 0;
  VertexId u = 0;  // endpoints in the order the edge was inserted
  VertexId v = 0;
  bool live = false;

  VertexId other(VertexId x) const { return x == u ? v : u; }
  bool has_endpoint(VertexId x) const { return x == u || x == v; }
};

/// Thresholds derived from the instance size n.
///   log_n           = ceil(log2 n), or 1 when n <= 2
///   short_cycle_max = 2 * log_n      (longest cycle stored as a cycle)
///   girth_min       = 2 * log_n + 1  (girth kept by the high-girth edge set)
struct GirthThreshold {
  std::size_t n = 0;
  std::size_t log_n = 1;
  std::size_t short_cycle_max = 2;
  std::size_t girth_min = 3;
};

GirthThreshold girth_threshold(std::size_t n);

/// Mapping from live edge ids to their direction.  Dense by id; absent ids
/// hold an invalid Arc.
class Orientation {
 public:
  Orientation() = default;
  explicit Orientation(std::size_t n) : n_(n) {}

  std::size_t vertex_count() const { return n_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool contains(EdgeId id) const { return id < arcs_.size() && arcs_[id].valid(); }
  /// Direction of a contained edge; throws UnknownEdge otherwise.
  Arc at(EdgeId id) const;
  std::optional<Arc> find(EdgeId id) const;

  void set(EdgeId id, Arc arc);
  void erase(EdgeId id);

  /// Entries in ascending id order.
  std::vector<std::pair<EdgeId, Arc>> entries() const;

  friend bool operator==(const Orientation& a, const Orientation& b);

 private:
  std::size_t n_ = 0;
  std::size_t size_ = 0;
  std::vector<Arc> arcs_;
};

struct DiscrepancyReport {
  std::vector<std::int64_t> per_vertex;  // |out - in| for each vertex
  std::int64_t max = 0;
};

/// Out-degree minus in-degree recomputed from scratch.
std::vector<std::int64_t> signed_imbalance(const Orientation& orientation);
DiscrepancyReport discrepancy(const Orientation& orientation);

/// Undirected multigraph over a fixed vertex universe [0, n).  Edge ids are
/// handed out in strictly increasing order and never reused.
class Multigraph {
 public:
  /// Throws InvalidSize when n == 0.
  explicit Multigraph(std::size_t n);

  std::size_t vertex_count() const { return threshold_.n; }
  const GirthThreshold& threshold() const { return threshold_; }

  /// Validates the endpoints (range, distinctness) without inserting.
  void check_pair(VertexId u, VertexId v) const;

  EdgeId insert(VertexId u, VertexId v);
  void erase(EdgeId id);

  bool is_live(EdgeId id) const { return id < records_.size() && records_[id].live; }
  /// Record of any edge ever inserted; throws UnknownEdge otherwise.
  const EdgeRecord& record(EdgeId id) const;
  /// Record of a live edge; throws UnknownEdge or DeadEdge.
  const EdgeRecord& live_record(EdgeId id) const;

  /// Most recently inserted live edge joining u and v.
  std::optional<EdgeId> latest_between(VertexId u, VertexId v) const;

  std::size_t live_count() const { return live_count_; }
  EdgeId next_id() const { return records_.size(); }
  std::vector<EdgeId> live_edges() const;

 private:
  static std::uint64_t pair_key(VertexId u, VertexId v);

  GirthThreshold threshold_;
  std::vector<EdgeRecord> records_;
  std::unordered_map<std::uint64_t, std::set<EdgeId>> parallel_;
  std::size_t live_count_ = 0;
};

}  // namespace carpool
