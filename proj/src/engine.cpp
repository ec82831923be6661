#include "carpool/engine.hpp"

#include <algorithm>
#include <sstream>

namespace carpool {

std::string_view to_string(UpdateRoute route) {
  switch (route) {
    case UpdateRoute::InsertGirth: return "insert_girth";
    case UpdateRoute::InsertCycle: return "insert_cycle";
    case UpdateRoute::DeleteGirth: return "delete_girth";
    case UpdateRoute::DeleteCycle: return "delete_cycle";
  }
  return "unknown";
}

std::size_t girth_insert_recourse_bound(const GirthThreshold& t) { return 3 * (t.log_n + 1); }

std::size_t recourse_ceiling(const GirthThreshold& t) {
  return 2 * t.log_n * (3 * (t.log_n + 1) + 2 * t.log_n);
}

Engine::Engine(std::size_t n)
    : graph_(n), orientation_(n), partition_(graph_.threshold()) {}

std::string Engine::state_summary() const {
  std::ostringstream os;
  os << "n=" << graph_.vertex_count() << " live_edges=" << graph_.live_count()
     << " girth_edges=" << partition_.girth_edge_count()
     << " cycles=" << partition_.cycles().size() << " next_id=" << graph_.next_id()
     << " max_discrepancy=" << orientation_.max_discrepancy()
     << " updates=" << metrics_.updates_applied;
  return os.str();
}

UpdateResult Engine::apply(const UpdateEvent& event) {
  if (poisoned_) {
    throw Error(ErrorCode::InvariantViolation,
                "engine is poisoned by an earlier invariant violation");
  }

  // Input validation happens before any mutation.
  switch (event.kind) {
    case EventKind::Insert:
      graph_.check_pair(event.u, event.v);
      break;
    case EventKind::DeleteById:
      graph_.live_record(event.id);
      break;
    case EventKind::DeleteByPair:
      graph_.check_pair(event.u, event.v);
      if (!graph_.latest_between(event.u, event.v)) {
        throw Error(ErrorCode::NoLiveEdge, "no live edge between " + std::to_string(event.u) +
                                               " and " + std::to_string(event.v));
      }
      break;
  }

  try {
    auto result = apply_unchecked(event);
    record(result);
    return result;
  } catch (const Error& e) {
    poisoned_ = true;
    throw Error(ErrorCode::InvariantViolation,
                std::string(e.what()) + " [state: " + state_summary() + "]");
  }
}

UpdateResult Engine::apply_unchecked(const UpdateEvent& event) {
  orientation_.begin_journal();
  UpdateResult result;
  PartitionOutcome outcome;

  if (event.kind == EventKind::Insert) {
    const EdgeId id = graph_.insert(event.u, event.v);
    outcome = partition_.add_edge(id, graph_, orientation_);
    result.route = outcome.joined_girth ? UpdateRoute::InsertGirth : UpdateRoute::InsertCycle;
    result.edge = id;
    result.assigned_id = id;
    result.inserted_arc = orientation_.at(id);
  } else {
    const EdgeId id = event.kind == EventKind::DeleteById
                          ? event.id
                          : *graph_.latest_between(event.u, event.v);
    outcome = partition_.remove_edge(id, graph_, orientation_);
    graph_.erase(id);
    result.route = outcome.left_girth ? UpdateRoute::DeleteGirth : UpdateRoute::DeleteCycle;
    result.edge = id;
  }

  for (const auto& entry : orientation_.journal()) {
    if (!entry.before) continue;
    const auto now = orientation_.view().find(entry.id);
    if (now && *now != *entry.before) result.flips.push_back(entry.id);
  }
  std::sort(result.flips.begin(), result.flips.end());
  result.recourse = result.flips.size();
  result.max_discrepancy = orientation_.max_discrepancy();
  result.longest_flip_path = outcome.longest_flip_path;
  result.label_changes = outcome.label_changes;
  return result;
}

void Engine::record(const UpdateResult& result) {
  ++metrics_.updates_applied;
  metrics_.max_discrepancy_ever = std::max(metrics_.max_discrepancy_ever, result.max_discrepancy);
  metrics_.max_recourse_single_update =
      std::max(metrics_.max_recourse_single_update, result.recourse);
  metrics_.total_recourse += result.recourse;
  metrics_.longest_flip_path = std::max(metrics_.longest_flip_path, result.longest_flip_path);
  ++metrics_.recourse_histogram[result.route][result.recourse];
}

}  // namespace carpool
