#include "carpool/live_orientation.hpp"

#include <cstdlib>

namespace carpool {

LiveOrientation::LiveOrientation(std::size_t n)
    : map_(n), imbalance_(n, 0), abs_histogram_(1, n) {}

void LiveOrientation::shift(VertexId v, std::int64_t delta) {
  auto& value = imbalance_[v];
  const auto old_abs = static_cast<std::size_t>(std::abs(value));
  value += delta;
  const auto new_abs = static_cast<std::size_t>(std::abs(value));
  --abs_histogram_[old_abs];
  if (new_abs >= abs_histogram_.size()) abs_histogram_.resize(new_abs + 1, 0);
  ++abs_histogram_[new_abs];
  if (static_cast<std::int64_t>(new_abs) > max_abs_) {
    max_abs_ = static_cast<std::int64_t>(new_abs);
  }
  while (max_abs_ > 0 && abs_histogram_[static_cast<std::size_t>(max_abs_)] == 0) --max_abs_;
}

void LiveOrientation::touch(EdgeId id) {
  if (id >= journal_stamp_.size()) journal_stamp_.resize(id + 1, 0);
  if (journal_stamp_[id] == epoch_) return;
  journal_stamp_[id] = epoch_;
  journal_.push_back({id, map_.find(id)});
}

void LiveOrientation::begin_journal() {
  ++epoch_;
  journal_.clear();
}

void LiveOrientation::set(EdgeId id, Arc arc) {
  touch(id);
  if (auto old = map_.find(id)) {
    shift(old->tail, -1);
    shift(old->head, +1);
  }
  map_.set(id, arc);
  shift(arc.tail, +1);
  shift(arc.head, -1);
}

void LiveOrientation::flip(EdgeId id) { set(id, map_.at(id).reversed()); }

void LiveOrientation::erase(EdgeId id) {
  auto old = map_.find(id);
  if (!old) return;
  touch(id);
  shift(old->tail, -1);
  shift(old->head, +1);
  map_.erase(id);
}

}  // namespace carpool
