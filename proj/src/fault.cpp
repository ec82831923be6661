#include "carpool/fault.hpp"

#include <cstdlib>

#include "carpool/engine.hpp"
#include "carpool/oracle.hpp"

namespace carpool::fault {

std::string_view to_string(Fault fault) {
  switch (fault) {
    case Fault::ReverseCycleEdge: return "reverse_cycle_edge";
    case Fault::LabelMiscount: return "label_miscount";
    case Fault::StarViolation: return "star_violation";
    case Fault::PartitionOrphan: return "partition_orphan";
    case Fault::ShortCycleInGirth: return "short_cycle_in_girth";
  }
  return "unknown";
}

const std::vector<Fault>& all_faults() {
  static const std::vector<Fault> faults{Fault::ReverseCycleEdge, Fault::LabelMiscount,
                                         Fault::StarViolation, Fault::PartitionOrphan,
                                         Fault::ShortCycleInGirth};
  return faults;
}

std::optional<Fault> parse_fault(std::string_view name) {
  for (Fault f : all_faults()) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

std::string_view expected_invariant(Fault fault) {
  namespace inv = oracle::invariant;
  switch (fault) {
    case Fault::ReverseCycleEdge: return inv::kCycleOrientation;
    case Fault::LabelMiscount: return inv::kLabelCount;
    case Fault::StarViolation: return inv::kStarBalance;
    case Fault::PartitionOrphan: return inv::kPartition;
    case Fault::ShortCycleInGirth: return inv::kGirth;
  }
  return "";
}

bool Injector::inject(Engine& engine, Fault fault) {
  auto& partition = engine.partition_;
  auto& labeller = partition.labeller_;
  auto& balancer = partition.balancer_;
  auto& orientation = engine.orientation_;
  const std::size_t n = engine.vertex_count();
  engine.poisoned_ = true;

  switch (fault) {
    case Fault::ReverseCycleEdge: {
      if (partition.cycles_.empty()) return false;
      orientation.flip(partition.cycles_.begin()->second.edges.front());
      return true;
    }
    case Fault::LabelMiscount: {
      for (VertexId v = 0; v < n; ++v) {
        auto& list = labeller.out_lists_[v];
        if (!list.empty()) {
          list.erase(list.begin());
          return true;
        }
      }
      return false;
    }
    case Fault::StarViolation: {
      // Flip one edge of a class with at least two members so that the
      // surplus side grows by two; balancer sets follow the flip.
      for (VertexId v = 0; v < n; ++v) {
        auto& out = balancer.out_[v];
        auto& in = balancer.in_[v];
        if (out.size() + in.size() < 2) continue;
        auto& from = out.size() >= in.size() ? in : out;
        auto& to = out.size() >= in.size() ? out : in;
        if (from.empty()) continue;
        const EdgeId id = *from.begin();
        from.erase(from.begin());
        to.insert(id);
        orientation.flip(id);
        return true;
      }
      return false;
    }
    case Fault::PartitionOrphan: {
      for (EdgeId id : engine.graph_.live_edges()) {
        partition.home_[id] = {};
        return true;
      }
      return false;
    }
    case Fault::ShortCycleInGirth: {
      if (partition.cycles_.empty()) return false;
      auto node = partition.cycles_.extract(partition.cycles_.begin());
      for (EdgeId id : node.mapped().edges) {
        const Arc arc = orientation.at(id);
        labeller.attach(id, arc);
        ++labeller.size_;
        balancer.track(id, arc.head, arc);
        partition.adjacency_[arc.tail].emplace_back(arc.head, id);
        partition.adjacency_[arc.head].emplace_back(arc.tail, id);
        partition.home_[id] = {Home::Girth, 0};
      }
      return true;
    }
  }
  return false;
}

}  // namespace carpool::fault
