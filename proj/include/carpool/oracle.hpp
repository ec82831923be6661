#pragma once

// Brute-force verifiers.  Everything here recomputes from raw edges or raw
// engine state and shares no code with the incremental bookkeeping.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carpool/core_graph.hpp"

namespace carpool {

class Engine;

namespace oracle {

struct Edge {
  EdgeId id = 0;
  VertexId u = 0;
  VertexId v = 0;
};

/// Live edges of an engine in ascending id order.
std::vector<Edge> live_edges(const Engine& engine);

/// Exact girth of a multigraph; nullopt for forests.  A parallel pair has
/// girth 2.
std::optional<std::size_t> brute_girth(std::size_t n, std::span<const Edge> edges);

/// Offline orientation with discrepancy <= 1: odd-degree vertices are paired
/// by virtual edges in ascending id order, every component is walked along an
/// Euler circuit, and the virtual edges are dropped again.
Orientation euler_orient(std::size_t n, std::span<const Edge> edges);

inline constexpr std::size_t kExhaustiveEdgeLimit = 20;

/// Minimum discrepancy over all 2^m orientations.  Throws SizeLimit when
/// m > kExhaustiveEdgeLimit.
std::int64_t exhaustive_min_disc(std::size_t n, std::span<const Edge> edges);

namespace invariant {
inline constexpr const char* kOrientationDomain = "orientation_domain";
inline constexpr const char* kDiscrepancyTracking = "discrepancy_tracking";
inline constexpr const char* kDiscrepancy = "discrepancy";
inline constexpr const char* kOutDegree = "out_degree";
inline constexpr const char* kLabelCount = "label_count";
inline constexpr const char* kLabelEndpoint = "label_endpoint";
inline constexpr const char* kForeignLabels = "foreign_label_count";
inline constexpr const char* kStarBalance = "star_balance";
inline constexpr const char* kBalanceSets = "balance_sets";
inline constexpr const char* kGirthDiscrepancy = "girth_discrepancy";
inline constexpr const char* kPartition = "partition_totality";
inline constexpr const char* kCycleShape = "cycle_shape";
inline constexpr const char* kCycleOrientation = "cycle_orientation";
inline constexpr const char* kGirth = "girth";
}  // namespace invariant

struct Violation {
  std::string invariant;
  std::string subject;   // e.g. "vertex 3", "edge 17", "cycle 2"
  std::string observed;
};

using ViolationList = std::vector<Violation>;

/// Full sweep over an engine's state; an empty list means every check held.
ViolationList check_all_invariants(const Engine& engine);

bool mentions(const ViolationList& violations, const std::string& invariant);

}  // namespace oracle
}  // namespace carpool
