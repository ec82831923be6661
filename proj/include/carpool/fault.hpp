#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace carpool {

class Engine;

namespace fault {

/// Deliberate state corruptions used to prove the oracle notices them.
enum class Fault {
  ReverseCycleEdge,   // one cycle edge directed against its cycle
  LabelMiscount,      // an out-list entry dropped while its label remains
  StarViolation,      // a labelled edge flipped towards its class's surplus
  PartitionOrphan,    // a live edge loses its home
  ShortCycleInGirth,  // a stored short cycle pushed into the high-girth set
};

std::string_view to_string(Fault fault);
std::optional<Fault> parse_fault(std::string_view name);
const std::vector<Fault>& all_faults();

/// The oracle invariant each fault is expected to trip.
std::string_view expected_invariant(Fault fault);

class Injector {
 public:
  /// Applies the corruption; false when the current state offers no target
  /// (e.g. no stored cycle).  The engine is unusable for updates afterwards.
  static bool inject(Engine& engine, Fault fault);
};

inline bool inject(Engine& engine, Fault fault) { return Injector::inject(engine, fault); }

}  // namespace fault
}  // namespace carpool
