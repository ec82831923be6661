#include "carpool/core_graph.hpp"

#include <bit>
#include <cstdlib>
#include <string>

namespace carpool {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSize: return "invalid-size";
    case ErrorCode::VertexOutOfRange: return "vertex-out-of-range";
    case ErrorCode::SelfLoop: return "self-loop";
    case ErrorCode::UnknownEdge: return "unknown-edge";
    case ErrorCode::DeadEdge: return "dead-edge";
    case ErrorCode::NoLiveEdge: return "no-live-edge";
    case ErrorCode::WrongPartition: return "wrong-partition";
    case ErrorCode::StateCorruption: return "state-corruption";
    case ErrorCode::InvariantViolation: return "invariant-violation";
    case ErrorCode::SizeLimit: return "size-limit";
    case ErrorCode::Malformed: return "malformed";
    case ErrorCode::MissingHeader: return "missing-header";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

GirthThreshold girth_threshold(std::size_t n) {
  if (n == 0) {
    throw Error(ErrorCode::InvalidSize, "instance size must be positive");
  }
  GirthThreshold t;
  t.n = n;
  // ceil(log2 n) == bit width of n - 1
  t.log_n = n <= 2 ? 1 : static_cast<std::size_t>(std::bit_width(n - 1));
  t.short_cycle_max = 2 * t.log_n;
  t.girth_min = t.short_cycle_max + 1;
  return t;
}

// ---------------------------------------------------------------------------
// Orientation

Arc Orientation::at(EdgeId id) const {
  if (!contains(id)) {
    throw Error(ErrorCode::UnknownEdge, "edge " + std::to_string(id) + " is not oriented");
  }
  return arcs_[id];
}

std::optional<Arc> Orientation::find(EdgeId id) const {
  if (!contains(id)) return std::nullopt;
  return arcs_[id];
}

void Orientation::set(EdgeId id, Arc arc) {
  if (arc.tail >= n_ || arc.head >= n_) {
    throw Error(ErrorCode::VertexOutOfRange, "arc endpoint out of range");
  }
  if (id >= arcs_.size()) arcs_.resize(id + 1);
  if (!arcs_[id].valid()) ++size_;
  arcs_[id] = arc;
}

void Orientation::erase(EdgeId id) {
  if (!contains(id)) return;
  arcs_[id] = Arc{};
  --size_;
}

std::vector<std::pair<EdgeId, Arc>> Orientation::entries() const {
  std::vector<std::pair<EdgeId, Arc>> out;
  out.reserve(size_);
  for (EdgeId id = 0; id < arcs_.size(); ++id) {
    if (arcs_[id].valid()) out.emplace_back(id, arcs_[id]);
  }
  return out;
}

bool operator==(const Orientation& a, const Orientation& b) {
  return a.n_ == b.n_ && a.size_ == b.size_ && a.entries() == b.entries();
}

std::vector<std::int64_t> signed_imbalance(const Orientation& orientation) {
  std::vector<std::int64_t> imbalance(orientation.vertex_count(), 0);
  for (const auto& [id, arc] : orientation.entries()) {
    ++imbalance[arc.tail];
    --imbalance[arc.head];
  }
  return imbalance;
}

DiscrepancyReport discrepancy(const Orientation& orientation) {
  DiscrepancyReport report;
  report.per_vertex = signed_imbalance(orientation);
  for (auto& value : report.per_vertex) {
    value = std::abs(value);
    if (value > report.max) report.max = value;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Multigraph

Multigraph::Multigraph(std::size_t n) : threshold_(girth_threshold(n)) {}

std::uint64_t Multigraph::pair_key(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

void Multigraph::check_pair(VertexId u, VertexId v) const {
  const auto n = vertex_count();
  if (u >= n || v >= n) {
    throw Error(ErrorCode::VertexOutOfRange,
                "vertex out of range: (" + std::to_string(u) + ", " + std::to_string(v) +
                    ") with n = " + std::to_string(n));
  }
  if (u == v) {
    throw Error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(u));
  }
}

EdgeId Multigraph::insert(VertexId u, VertexId v) {
  check_pair(u, v);
  const EdgeId id = records_.size();
  records_.push_back(EdgeRecord{id, u, v, true});
  parallel_[pair_key(u, v)].insert(id);
  ++live_count_;
  return id;
}

void Multigraph::erase(EdgeId id) {
  live_record(id);
  auto& rec = records_[id];
  rec.live = false;
  auto it = parallel_.find(pair_key(rec.u, rec.v));
  it->second.erase(id);
  if (it->second.empty()) parallel_.erase(it);
  --live_count_;
}

const EdgeRecord& Multigraph::record(EdgeId id) const {
  if (id >= records_.size()) {
    throw Error(ErrorCode::UnknownEdge, "unknown edge " + std::to_string(id));
  }
  return records_[id];
}

const EdgeRecord& Multigraph::live_record(EdgeId id) const {
  const auto& rec = record(id);
  if (!rec.live) {
    throw Error(ErrorCode::DeadEdge, "edge " + std::to_string(id) + " was already deleted");
  }
  return rec;
}

std::optional<EdgeId> Multigraph::latest_between(VertexId u, VertexId v) const {
  auto it = parallel_.find(pair_key(u, v));
  if (it == parallel_.end() || it->second.empty()) return std::nullopt;
  return *it->second.rbegin();
}

std::vector<EdgeId> Multigraph::live_edges() const {
  std::vector<EdgeId> out;
  out.reserve(live_count_);
  for (const auto& rec : records_) {
    if (rec.live) out.push_back(rec.id);
  }
  return out;
}

}  // namespace carpool
