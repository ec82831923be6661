#include "carpool/cycle_partition.hpp"

#include <algorithm>
#include <string>

namespace carpool {

CyclePartition::CyclePartition(const GirthThreshold& threshold)
    : threshold_(threshold),
      labeller_(threshold),
      balancer_(threshold.n),
      adjacency_(threshold.n),
      seen_(threshold.n, 0),
      dist_(threshold.n, 0) {}

std::optional<std::vector<VertexId>> CyclePartition::find_short_cycle(VertexId u,
                                                                      VertexId v) const {
  const VertexId source = std::min(u, v);
  const VertexId target = std::max(u, v);
  const std::size_t cap = threshold_.short_cycle_max - 1;

  // Distances from the target, level by level, until the source is labelled.
  ++stamp_;
  seen_[target] = stamp_;
  dist_[target] = 0;
  std::vector<VertexId> frontier{target};
  std::vector<VertexId> next;
  bool reached = false;
  for (std::size_t depth = 1; depth <= cap && !reached && !frontier.empty(); ++depth) {
    next.clear();
    for (VertexId x : frontier) {
      for (const auto& [y, id] : adjacency_[x]) {
        if (seen_[y] == stamp_) continue;
        seen_[y] = stamp_;
        dist_[y] = depth;
        if (y == source) reached = true;
        next.push_back(y);
      }
    }
    frontier.swap(next);
  }
  if (!reached) return std::nullopt;

  // Greedy smallest-neighbour descent yields the lexicographically least path.
  std::vector<VertexId> path{source};
  VertexId x = source;
  while (x != target) {
    const std::size_t want = dist_[x] - 1;
    VertexId best = kNoVertex;
    for (const auto& [y, id] : adjacency_[x]) {
      if (seen_[y] == stamp_ && dist_[y] == want && y < best) best = y;
    }
    path.push_back(best);
    x = best;
  }
  return path;
}

EdgeId CyclePartition::girth_edge_between(VertexId a, VertexId b) const {
  for (const auto& [y, id] : adjacency_[a]) {
    if (y == b) return id;
  }
  throw Error(ErrorCode::StateCorruption, "no high-girth edge between " + std::to_string(a) +
                                              " and " + std::to_string(b));
}

void CyclePartition::add_to_girth(const EdgeRecord& edge, const Multigraph& graph,
                                  LiveOrientation& orientation, PartitionOutcome& outcome) {
  const auto delta = labeller_.insert(edge);
  const auto flips = balancer_.apply(delta, graph, orientation);
  adjacency_[edge.u].emplace_back(edge.v, edge.id);
  adjacency_[edge.v].emplace_back(edge.u, edge.id);
  home_[edge.id] = {Home::Girth, 0};
  outcome.longest_flip_path = std::max(outcome.longest_flip_path, delta.path_length);
  outcome.label_changes += delta.label_changes();
  outcome.balancer_flips += flips.flips.size();
}

void CyclePartition::remove_from_girth(EdgeId id, LiveOrientation& orientation,
                                       PartitionOutcome& outcome) {
  const auto delta = labeller_.erase(id);
  const auto flips = balancer_.remove(id, delta.deleted->second, orientation);
  const Arc arc = orientation.at(id);
  for (VertexId end : {arc.tail, arc.head}) {
    auto& list = adjacency_[end];
    std::erase_if(list, [id](const auto& entry) { return entry.second == id; });
  }
  home_[id] = {};
  outcome.balancer_flips += flips.flips.size();
}

void CyclePartition::form_cycle(const EdgeRecord& edge, const std::vector<VertexId>& path,
                                LiveOrientation& orientation, PartitionOutcome& outcome) {
  // Walk u -> v over the new edge, then back from v to u along the path.
  std::vector<VertexId> back(path);
  if (back.front() == edge.v) std::reverse(back.begin(), back.end());
  // back now runs u ... v; the cycle visits u, v, then back in reverse.
  CycleRecord cycle;
  cycle.id = next_cycle_++;
  cycle.vertices.push_back(edge.u);
  for (auto it = back.rbegin(); it + 1 != back.rend(); ++it) cycle.vertices.push_back(*it);

  cycle.edges.push_back(edge.id);
  for (std::size_t i = 1; i < cycle.vertices.size(); ++i) {
    const VertexId a = cycle.vertices[i];
    const VertexId b = cycle.vertices[(i + 1) % cycle.vertices.size()];
    const EdgeId id = girth_edge_between(a, b);
    remove_from_girth(id, orientation, outcome);
    cycle.edges.push_back(id);
  }

  const std::size_t k = cycle.vertices.size();
  for (std::size_t i = 0; i < k; ++i) {
    orientation.set(cycle.edges[i], {cycle.vertices[i], cycle.vertices[(i + 1) % k]});
    home_[cycle.edges[i]] = {Home::Cycle, cycle.id};
  }
  ++outcome.cycles_formed;
  cycles_.emplace(cycle.id, std::move(cycle));
}

PartitionOutcome CyclePartition::add_edge(EdgeId id, const Multigraph& graph,
                                          LiveOrientation& orientation) {
  const EdgeRecord& edge = graph.live_record(id);
  if (id >= home_.size()) home_.resize(id + 1);
  if (home_[id].kind != Home::None) {
    throw Error(ErrorCode::StateCorruption, "edge " + std::to_string(id) + " already homed");
  }

  PartitionOutcome outcome;
  if (auto path = find_short_cycle(edge.u, edge.v)) {
    form_cycle(edge, *path, orientation, outcome);
  } else {
    add_to_girth(edge, graph, orientation, outcome);
    outcome.joined_girth = true;
  }
  return outcome;
}

PartitionOutcome CyclePartition::remove_edge(EdgeId id, const Multigraph& graph,
                                             LiveOrientation& orientation) {
  graph.live_record(id);
  const EdgeHome where = home(id);
  PartitionOutcome outcome;
  switch (where.kind) {
    case Home::None:
      throw Error(ErrorCode::StateCorruption, "edge " + std::to_string(id) + " has no home");
    case Home::Girth:
      remove_from_girth(id, orientation, outcome);
      orientation.erase(id);
      outcome.left_girth = true;
      return outcome;
    case Home::Cycle:
      break;
  }

  auto node = cycles_.extract(where.cycle);
  if (node.empty()) {
    throw Error(ErrorCode::StateCorruption, "edge " + std::to_string(id) +
                                                " points at a missing cycle");
  }
  std::vector<EdgeId> survivors;
  for (EdgeId e : node.mapped().edges) {
    home_[e] = {};
    orientation.erase(e);
    if (e != id) survivors.push_back(e);
  }
  ++outcome.cycles_dissolved;
  std::sort(survivors.begin(), survivors.end());
  for (EdgeId e : survivors) {
    const auto sub = add_edge(e, graph, orientation);
    outcome.cycles_formed += sub.cycles_formed;
    outcome.longest_flip_path = std::max(outcome.longest_flip_path, sub.longest_flip_path);
    outcome.label_changes += sub.label_changes;
    outcome.balancer_flips += sub.balancer_flips;
    ++outcome.reinserted;
  }
  return outcome;
}

}  // namespace carpool
