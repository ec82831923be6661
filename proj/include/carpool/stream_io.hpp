#pragma once

// Line-oriented stream files and JSON-lines traces.
//
// Stream file:
//   n <N>            header, before any event
//   + <u> <v>        insert
//   -# <edge_id>     delete by id (ids count inserts from 0)
//   - <u> <v>        delete the most recent live edge between u and v
//   # ...            comment; "# generator <name> seed <s>" records provenance
//
// Trace: one JSON object per update with keys seq, event, id, dir, flips,
// recourse, max_disc.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include "carpool/adversary.hpp"
#include "carpool/engine.hpp"

namespace carpool::io {

/// Parses and validates a stream; throws ParseError at the first bad line
/// (Malformed, MissingHeader, InvalidSize, VertexOutOfRange, SelfLoop,
/// UnknownEdge, DeadEdge, NoLiveEdge).
UpdateStream parse_stream(std::string_view text);
UpdateStream read_stream_file(const std::string& path);

std::string format_event(const UpdateEvent& event);
std::string serialize_stream(const UpdateStream& stream);
void write_stream_file(const std::string& path, const UpdateStream& stream);

std::string trace_line(std::uint64_t seq, const UpdateEvent& event, const UpdateResult& result);

/// Rebuilds the public orientation from trace lines.  `on_line` sees the
/// orientation after each line (sequence numbers from 0).
class TraceReplayer {
 public:
  explicit TraceReplayer(std::size_t n) : orientation_(n) {}

  /// Throws Malformed on lines that are not trace records or that flip edges
  /// the replay does not know.
  void apply_line(std::string_view line);
  const Orientation& orientation() const { return orientation_; }

 private:
  Orientation orientation_;
};

}  // namespace carpool::io
