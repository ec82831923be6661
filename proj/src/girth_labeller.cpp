#include "carpool/girth_labeller.hpp"

#include <algorithm>
#include <string>

namespace carpool {

GirthLabeller::GirthLabeller(const GirthThreshold& threshold)
    : threshold_(threshold),
      out_lists_(threshold.n),
      seen_(threshold.n, 0),
      parent_edge_(threshold.n, 0) {}

Arc GirthLabeller::arc(EdgeId id) const {
  if (!contains(id)) {
    throw Error(ErrorCode::WrongPartition,
                "edge " + std::to_string(id) + " is not in the high-girth set");
  }
  return arcs_[id];
}

std::vector<EdgeId> GirthLabeller::edges() const {
  std::vector<EdgeId> out;
  out.reserve(size_);
  for (EdgeId id = 0; id < arcs_.size(); ++id) {
    if (arcs_[id].valid()) out.push_back(id);
  }
  return out;
}

void GirthLabeller::attach(EdgeId id, Arc arc) {
  if (id >= arcs_.size()) arcs_.resize(id + 1);
  arcs_[id] = arc;
  auto& list = out_lists_[arc.tail];
  list.insert(std::lower_bound(list.begin(), list.end(), id), id);
}

void GirthLabeller::detach(EdgeId id) {
  auto& list = out_lists_[arcs_[id].tail];
  auto it = std::lower_bound(list.begin(), list.end(), id);
  if (it != list.end() && *it == id) list.erase(it);
  arcs_[id] = Arc{};
}

LabelDelta GirthLabeller::insert(const EdgeRecord& edge) {
  if (contains(edge.id)) {
    throw Error(ErrorCode::WrongPartition,
                "edge " + std::to_string(edge.id) + " is already in the high-girth set");
  }
  VertexId tail = std::min(edge.u, edge.v);
  VertexId head = std::max(edge.u, edge.v);
  if (out_degree(head) < out_degree(tail)) std::swap(tail, head);

  attach(edge.id, {tail, head});
  ++size_;

  LabelDelta delta;
  if (out_degree(tail) <= 2) {
    delta.inserted = {{edge.id, head}};
    return delta;
  }

  const auto path = find_flip_path(tail);
  delta.path_length = path.size();
  for (EdgeId id : path) {
    const Arc before = arcs_[id];
    detach(id);
    attach(id, before.reversed());
    if (id != edge.id) delta.relabeled.push_back({id, before.head, before.tail});
  }
  delta.inserted = {{edge.id, arcs_[edge.id].head}};
  return delta;
}

LabelDelta GirthLabeller::erase(EdgeId id) {
  const VertexId old_label = arc(id).head;
  detach(id);
  --size_;
  LabelDelta delta;
  delta.deleted = {{id, old_label}};
  return delta;
}

std::vector<EdgeId> GirthLabeller::find_flip_path(VertexId start) const {
  if (out_degree(start) <= 1) return {};

  ++stamp_;
  seen_[start] = stamp_;
  std::vector<VertexId> frontier{start};
  std::vector<VertexId> next;
  std::optional<VertexId> target;

  for (std::size_t depth = 1; depth <= threshold_.log_n && !target && !frontier.empty();
       ++depth) {
    next.clear();
    for (VertexId x : frontier) {
      for (EdgeId id : out_lists_[x]) {
        const VertexId y = arcs_[id].head;
        if (seen_[y] == stamp_) continue;
        seen_[y] = stamp_;
        parent_edge_[y] = id;
        if (out_degree(y) <= 1) {
          target = y;
          break;
        }
        next.push_back(y);
      }
      if (target) break;
    }
    frontier.swap(next);
  }

  if (!target) {
    throw Error(ErrorCode::InvariantViolation,
                "no vertex of out-degree <= 1 within " + std::to_string(threshold_.log_n) +
                    " hops of vertex " + std::to_string(start) +
                    "; the high-girth precondition is broken");
  }

  std::vector<EdgeId> path;
  for (VertexId y = *target; y != start;) {
    const EdgeId id = parent_edge_[y];
    path.push_back(id);
    y = arcs_[id].tail;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace carpool
