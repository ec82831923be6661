#include "carpool/stream_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace carpool::io {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

std::uint64_t parse_number(std::string_view word, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc{} || ptr != word.data() + word.size()) {
    throw ParseError(ErrorCode::Malformed, line_no,
                     "expected a non-negative integer, got '" + std::string(word) + "'");
  }
  return value;
}

std::uint64_t pair_key(std::uint64_t u, std::uint64_t v) {
  if (u > v) std::swap(u, v);
  return (u << 32) | v;
}

}  // namespace

UpdateStream parse_stream(std::string_view text) {
  UpdateStream stream;
  bool have_header = false;
  // live-edge bookkeeping needed to validate deletions
  std::vector<std::pair<VertexId, VertexId>> ends;
  std::vector<bool> live;
  std::unordered_map<std::uint64_t, std::set<EdgeId>> parallel;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    const auto words = split_words(line);
    if (words.empty()) continue;
    if (words[0].front() == '#') {
      if (words.size() == 5 && words[0] == "#" && words[1] == "generator" && words[3] == "seed") {
        stream.generator = std::string(words[2]);
        stream.seed = parse_number(words[4], line_no);
      }
      continue;
    }

    const auto& op = words[0];
    if (op == "n") {
      if (have_header) throw ParseError(ErrorCode::Malformed, line_no, "duplicate header");
      if (words.size() != 2) throw ParseError(ErrorCode::Malformed, line_no, "expected 'n <N>'");
      stream.n = parse_number(words[1], line_no);
      if (stream.n == 0 || stream.n > (std::uint64_t{1} << 32) - 1) {
        throw ParseError(ErrorCode::InvalidSize, line_no, "n must be in [1, 2^32 - 1]");
      }
      have_header = true;
      continue;
    }
    if (!have_header) {
      throw ParseError(ErrorCode::MissingHeader, line_no, "event before the 'n <N>' header");
    }

    auto vertex_pair = [&]() {
      if (words.size() != 3) {
        throw ParseError(ErrorCode::Malformed, line_no, "expected '" + std::string(op) + " <u> <v>'");
      }
      const auto u = parse_number(words[1], line_no);
      const auto v = parse_number(words[2], line_no);
      if (u >= stream.n || v >= stream.n) {
        throw ParseError(ErrorCode::VertexOutOfRange, line_no, "vertex out of range");
      }
      if (u == v) throw ParseError(ErrorCode::SelfLoop, line_no, "self-loop");
      return std::pair{static_cast<VertexId>(u), static_cast<VertexId>(v)};
    };

    if (op == "+") {
      const auto [u, v] = vertex_pair();
      parallel[pair_key(u, v)].insert(ends.size());
      ends.emplace_back(u, v);
      live.push_back(true);
      stream.events.push_back(UpdateEvent::insert(u, v));
    } else if (op == "-#") {
      if (words.size() != 2) throw ParseError(ErrorCode::Malformed, line_no, "expected '-# <id>'");
      const auto id = parse_number(words[1], line_no);
      if (id >= ends.size()) {
        throw ParseError(ErrorCode::UnknownEdge, line_no,
                         "edge " + std::to_string(id) + " was never inserted");
      }
      if (!live[id]) {
        throw ParseError(ErrorCode::DeadEdge, line_no,
                         "edge " + std::to_string(id) + " was already deleted");
      }
      live[id] = false;
      parallel[pair_key(ends[id].first, ends[id].second)].erase(id);
      stream.events.push_back(UpdateEvent::erase(id));
    } else if (op == "-") {
      const auto [u, v] = vertex_pair();
      auto& ids = parallel[pair_key(u, v)];
      if (ids.empty()) {
        throw ParseError(ErrorCode::NoLiveEdge, line_no, "no live edge between the endpoints");
      }
      live[*ids.rbegin()] = false;
      ids.erase(std::prev(ids.end()));
      stream.events.push_back(UpdateEvent::erase_between(u, v));
    } else {
      throw ParseError(ErrorCode::Malformed, line_no, "unknown record '" + std::string(op) + "'");
    }
  }
  if (!have_header) throw ParseError(ErrorCode::MissingHeader, line_no, "missing 'n <N>' header");
  return stream;
}

UpdateStream read_stream_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_stream(buffer.str());
}

std::string format_event(const UpdateEvent& event) {
  switch (event.kind) {
    case EventKind::Insert:
      return "+ " + std::to_string(event.u) + " " + std::to_string(event.v);
    case EventKind::DeleteById:
      return "-# " + std::to_string(event.id);
    case EventKind::DeleteByPair:
      return "- " + std::to_string(event.u) + " " + std::to_string(event.v);
  }
  return "";
}

std::string serialize_stream(const UpdateStream& stream) {
  std::string out;
  if (!stream.generator.empty()) {
    out += "# generator " + stream.generator + " seed " + std::to_string(stream.seed) + "\n";
  }
  out += "n " + std::to_string(stream.n) + "\n";
  for (const auto& event : stream.events) {
    out += format_event(event);
    out += '\n';
  }
  return out;
}

void write_stream_file(const std::string& path, const UpdateStream& stream) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << serialize_stream(stream);
}

std::string trace_line(std::uint64_t seq, const UpdateEvent& event, const UpdateResult& result) {
  nlohmann::json j;
  j["seq"] = seq;
  j["event"] = format_event(event);
  j["id"] = result.edge;
  if (result.inserted_arc) {
    j["dir"] = {result.inserted_arc->tail, result.inserted_arc->head};
  } else {
    j["dir"] = nullptr;
  }
  j["flips"] = result.flips;
  j["recourse"] = result.recourse;
  j["max_disc"] = result.max_discrepancy;
  return j.dump();
}

void TraceReplayer::apply_line(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
    const auto id = j.at("id").get<EdgeId>();
    const auto& event = j.at("event").get_ref<const std::string&>();
    if (!event.empty() && event[0] == '+') {
      const auto dir = j.at("dir").get<std::vector<VertexId>>();
      if (dir.size() != 2) throw Error(ErrorCode::Malformed, "bad dir");
      orientation_.set(id, {dir[0], dir[1]});
    } else {
      orientation_.erase(id);
    }
    for (const auto& flipped : j.at("flips")) {
      const auto e = flipped.get<EdgeId>();
      orientation_.set(e, orientation_.at(e).reversed());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Malformed, std::string("bad trace line: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::Malformed, std::string("bad trace line: ") + e.what());
  }
}

}  // namespace carpool::io
