#include "carpool/star_balancer.hpp"

#include <algorithm>
#include <string>

namespace carpool {

namespace {

Error untracked(EdgeId id) {
  return Error(ErrorCode::StateCorruption,
               "balancer does not track edge " + std::to_string(id));
}

}  // namespace

StarBalancer::StarBalancer(std::size_t n) : out_(n), in_(n) {}

VertexId StarBalancer::label_of(EdgeId id) const {
  if (!tracks(id)) throw untracked(id);
  return label_[id];
}

void StarBalancer::track(EdgeId id, VertexId label, const Arc& arc) {
  if (id >= label_.size()) label_.resize(id + 1, kNoVertex);
  label_[id] = label;
  if (arc.tail == label) {
    out_[label].insert(id);
  } else {
    in_[label].insert(id);
  }
}

void StarBalancer::untrack(EdgeId id, VertexId expected_label) {
  if (!tracks(id) || label_[id] != expected_label) throw untracked(id);
  out_[expected_label].erase(id);
  in_[expected_label].erase(id);
  label_[id] = kNoVertex;
}

void StarBalancer::repair(VertexId v, LiveOrientation& orientation,
                          std::vector<EdgeId>& flips) {
  auto& out = out_[v];
  auto& in = in_[v];
  const auto k = static_cast<std::ptrdiff_t>(out.size()) - static_cast<std::ptrdiff_t>(in.size());
  const auto count = std::abs(k) / 2;
  auto& from = k > 0 ? out : in;
  auto& to = k > 0 ? in : out;
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const EdgeId id = *from.begin();
    from.erase(from.begin());
    to.insert(id);
    orientation.flip(id);
    flips.push_back(id);
  }
}

FlipSet StarBalancer::apply(const LabelDelta& delta, const Multigraph& graph,
                            LiveOrientation& orientation) {
  std::vector<VertexId> touched;

  if (delta.deleted) {
    const auto [id, old_label] = *delta.deleted;
    untrack(id, old_label);
    touched.push_back(old_label);
  }

  for (const auto& change : delta.relabeled) {
    untrack(change.id, change.old_label);
    track(change.id, change.new_label, orientation.at(change.id));
    touched.push_back(change.old_label);
    touched.push_back(change.new_label);
  }

  FlipSet result;
  if (delta.inserted) {
    const auto [id, label] = *delta.inserted;
    if (tracks(id)) {
      throw Error(ErrorCode::StateCorruption,
                  "balancer already tracks inserted edge " + std::to_string(id));
    }
    const VertexId other = graph.live_record(id).other(label);
    const bool surplus_out = out_[label].size() > in_[label].size();
    const Arc arc = surplus_out ? Arc{other, label} : Arc{label, other};
    orientation.set(id, arc);
    track(id, label, arc);
    touched.push_back(label);
    result.newly_oriented = {{id, arc}};
  }

  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  for (VertexId v : touched) repair(v, orientation, result.flips);

  if (result.newly_oriented) {
    const EdgeId fresh = result.newly_oriented->first;
    std::erase(result.flips, fresh);
    result.newly_oriented->second = orientation.at(fresh);
  }
  return result;
}

FlipSet StarBalancer::remove(EdgeId id, VertexId old_label, LiveOrientation& orientation) {
  untrack(id, old_label);
  FlipSet result;
  repair(old_label, orientation, result.flips);
  return result;
}

}  // namespace carpool
