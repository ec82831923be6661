#include "carpool/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <deque>
#include <map>
#include <utility>

#include "carpool/engine.hpp"

namespace carpool::oracle {

std::vector<Edge> live_edges(const Engine& engine) {
  std::vector<Edge> out;
  for (EdgeId id : engine.graph().live_edges()) {
    const auto& rec = engine.graph().record(id);
    out.push_back({id, rec.u, rec.v});
  }
  return out;
}

std::optional<std::size_t> brute_girth(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(edges.size());
  for (const auto& e : edges) pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(pairs.begin(), pairs.end());
  if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) return 2;

  std::vector<std::vector<std::pair<VertexId, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].u].emplace_back(edges[i].v, i);
    adj[edges[i].v].emplace_back(edges[i].u, i);
  }

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t best = kNone;
  std::vector<std::size_t> dist(n);
  std::vector<std::size_t> via(n);
  for (VertexId root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), kNone);
    dist[root] = 0;
    via[root] = kNone;
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
      const VertexId x = queue.front();
      queue.pop_front();
      if (best != kNone && 2 * dist[x] + 1 >= best) break;
      for (const auto& [y, edge] : adj[x]) {
        if (edge == via[x]) continue;
        if (dist[y] == kNone) {
          dist[y] = dist[x] + 1;
          via[y] = edge;
          queue.push_back(y);
        } else {
          best = std::min(best, dist[x] + dist[y] + 1);
        }
      }
    }
  }
  if (best == kNone) return std::nullopt;
  return best;
}

Orientation euler_orient(std::size_t n, std::span<const Edge> edges) {
  struct WorkEdge {
    VertexId a;
    VertexId b;
    bool real;
    EdgeId id;
  };
  std::vector<WorkEdge> work;
  work.reserve(edges.size() + n / 2);
  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : edges) {
    work.push_back({e.u, e.v, true, e.id});
    ++degree[e.u];
    ++degree[e.v];
  }
  std::vector<VertexId> odd;
  for (VertexId v = 0; v < n; ++v) {
    if (degree[v] % 2 == 1) odd.push_back(v);
  }
  for (std::size_t i = 0; i + 1 < odd.size(); i += 2) {
    work.push_back({odd[i], odd[i + 1], false, 0});
  }

  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t i = 0; i < work.size(); ++i) {
    incident[work[i].a].push_back(i);
    incident[work[i].b].push_back(i);
  }

  // With every degree even, a greedy walk from s that only uses fresh edges
  // can only get stuck at s; each such closed trail is balanced.
  Orientation result(n);
  std::vector<bool> used(work.size(), false);
  std::vector<std::size_t> cursor(n, 0);
  for (VertexId s = 0; s < n; ++s) {
    while (true) {
      VertexId x = s;
      bool moved = false;
      while (true) {
        auto& at = cursor[x];
        while (at < incident[x].size() && used[incident[x][at]]) ++at;
        if (at == incident[x].size()) break;
        const std::size_t i = incident[x][at];
        used[i] = true;
        moved = true;
        const VertexId y = work[i].a == x ? work[i].b : work[i].a;
        if (work[i].real) result.set(work[i].id, {x, y});
        x = y;
      }
      if (!moved) break;
    }
  }
  return result;
}

std::int64_t exhaustive_min_disc(std::size_t n, std::span<const Edge> edges) {
  const std::size_t m = edges.size();
  if (m > kExhaustiveEdgeLimit) {
    throw Error(ErrorCode::SizeLimit, "exhaustive search limited to " +
                                          std::to_string(kExhaustiveEdgeLimit) + " edges");
  }
  std::vector<std::int64_t> imbalance(n, 0);
  std::vector<bool> forward(m, true);
  for (const auto& e : edges) {
    ++imbalance[e.u];
    --imbalance[e.v];
  }
  auto current = [&] {
    std::int64_t worst = 0;
    for (auto value : imbalance) worst = std::max(worst, std::abs(value));
    return worst;
  };
  std::int64_t best = current();
  // Gray code: step i flips edge ctz(i).
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t i = 1; i < total && best > 0; ++i) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(i));
    const auto& e = edges[bit];
    const std::int64_t sign = forward[bit] ? 1 : -1;
    imbalance[e.u] -= 2 * sign;
    imbalance[e.v] += 2 * sign;
    forward[bit] = !forward[bit];
    best = std::min(best, current());
  }
  return best;
}

bool mentions(const ViolationList& violations, const std::string& invariant) {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.invariant == invariant; });
}

namespace {

std::string vertex_subject(VertexId v) { return "vertex " + std::to_string(v); }
std::string edge_subject(EdgeId e) { return "edge " + std::to_string(e); }

bool same_endpoints(const Arc& arc, VertexId u, VertexId v) {
  return (arc.tail == u && arc.head == v) || (arc.tail == v && arc.head == u);
}

}  // namespace

ViolationList check_all_invariants(const Engine& engine) {
  using namespace invariant;
  ViolationList out;
  auto report = [&out](const char* name, std::string subject, std::string observed) {
    out.push_back({name, std::move(subject), std::move(observed)});
  };

  const auto& graph = engine.graph();
  const auto& orientation = engine.orientation().view();
  const auto& partition = engine.partition();
  const auto& labeller = partition.labeller();
  const auto& balancer = partition.balancer();
  const auto& t = engine.threshold();
  const std::size_t n = graph.vertex_count();
  const auto edges = live_edges(engine);

  // Public orientation covers exactly the live edges.
  if (orientation.size() != edges.size()) {
    report(kOrientationDomain, "orientation",
           std::to_string(orientation.size()) + " entries for " + std::to_string(edges.size()) +
               " live edges");
  }
  for (const auto& e : edges) {
    const auto arc = orientation.find(e.id);
    if (!arc || !same_endpoints(*arc, e.u, e.v)) {
      report(kOrientationDomain, edge_subject(e.id), arc ? "endpoint mismatch" : "missing");
    }
  }

  // Discrepancy, from scratch and as tracked.
  const auto scratch = signed_imbalance(orientation);
  const auto& tracked = engine.orientation().imbalances();
  std::int64_t scratch_max = 0;
  for (VertexId v = 0; v < n; ++v) {
    const auto value = std::abs(scratch[v]);
    scratch_max = std::max(scratch_max, value);
    if (scratch[v] != tracked[v]) {
      report(kDiscrepancyTracking, vertex_subject(v),
             "tracked " + std::to_string(tracked[v]) + " vs " + std::to_string(scratch[v]));
    }
    if (value > 3) report(kDiscrepancy, vertex_subject(v), std::to_string(value));
  }
  if (scratch_max != engine.orientation().max_discrepancy()) {
    report(kDiscrepancyTracking, "max",
           "tracked " + std::to_string(engine.orientation().max_discrepancy()) + " vs " +
               std::to_string(scratch_max));
  }

  // Partition totality.
  std::map<EdgeId, std::size_t> cycle_membership;
  for (const auto& [cid, cycle] : partition.cycles()) {
    for (EdgeId e : cycle.edges) ++cycle_membership[e];
  }
  for (const auto& e : edges) {
    const auto home = partition.home(e.id);
    const bool in_girth = labeller.contains(e.id);
    const auto hits = cycle_membership.count(e.id) ? cycle_membership[e.id] : 0;
    const std::string where = "girth=" + std::to_string(in_girth) +
                              " cycles=" + std::to_string(hits);
    switch (home.kind) {
      case Home::None:
        report(kPartition, edge_subject(e.id), "no home (" + where + ")");
        break;
      case Home::Girth:
        if (!in_girth || hits != 0 || !balancer.tracks(e.id)) {
          report(kPartition, edge_subject(e.id), "girth home but " + where);
        }
        break;
      case Home::Cycle: {
        const auto it = partition.cycles().find(home.cycle);
        const bool listed =
            it != partition.cycles().end() &&
            std::count(it->second.edges.begin(), it->second.edges.end(), e.id) == 1;
        if (!listed || in_girth || hits != 1) {
          report(kPartition, edge_subject(e.id), "cycle home but " + where);
        }
        break;
      }
    }
  }
  for (const auto& [e, hits] : cycle_membership) {
    if (!graph.is_live(e)) report(kPartition, edge_subject(e), "dead edge in a cycle");
  }

  // High-girth labelling.
  const auto girth_ids = labeller.edges();
  std::vector<Edge> girth_edges;
  std::vector<std::vector<EdgeId>> expected_out(n);
  std::vector<std::size_t> foreign(n, 0);
  std::vector<std::int64_t> star(n, 0);
  std::vector<std::int64_t> girth_imbalance(n, 0);
  std::size_t balancer_total = 0;
  for (EdgeId id : girth_ids) {
    if (!graph.is_live(id)) {
      report(kPartition, edge_subject(id), "dead edge in the high-girth set");
      continue;
    }
    const auto& rec = graph.record(id);
    girth_edges.push_back({id, rec.u, rec.v});
    const Arc internal = labeller.arc(id);
    if (!same_endpoints(internal, rec.u, rec.v)) {
      report(kLabelEndpoint, edge_subject(id), "label " + std::to_string(internal.head));
      continue;
    }
    expected_out[internal.tail].push_back(id);
    const VertexId label = internal.head;
    ++foreign[rec.other(label)];

    const auto pub = orientation.find(id);
    if (!pub) continue;
    star[label] += pub->tail == label ? 1 : -1;
    ++girth_imbalance[pub->tail];
    --girth_imbalance[pub->head];

    const bool expect_out = pub->tail == label;
    if (!balancer.tracks(id) || balancer.label_of(id) != label ||
        balancer.label_out(label).count(id) != (expect_out ? 1u : 0u) ||
        balancer.label_in(label).count(id) != (expect_out ? 0u : 1u)) {
      report(kBalanceSets, edge_subject(id), "balancer disagrees with label/orientation");
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    balancer_total += balancer.label_out(v).size() + balancer.label_in(v).size();
    if (expected_out[v].size() > 2) {
      report(kOutDegree, vertex_subject(v), std::to_string(expected_out[v].size()));
    }
    if (labeller.out_edges(v) != expected_out[v]) {
      report(kLabelCount, vertex_subject(v),
             "out-list holds " + std::to_string(labeller.out_edges(v).size()) + ", labels give " +
                 std::to_string(expected_out[v].size()));
    }
    if (foreign[v] > 2) report(kForeignLabels, vertex_subject(v), std::to_string(foreign[v]));
    if (std::abs(star[v]) > 1) report(kStarBalance, vertex_subject(v), std::to_string(star[v]));
    if (std::abs(girth_imbalance[v]) > 3) {
      report(kGirthDiscrepancy, vertex_subject(v), std::to_string(girth_imbalance[v]));
    }
  }
  if (balancer_total != girth_ids.size()) {
    report(kBalanceSets, "balancer",
           std::to_string(balancer_total) + " tracked vs " + std::to_string(girth_ids.size()));
  }

  // Short cycles.
  for (const auto& [cid, cycle] : partition.cycles()) {
    const std::string subject = "cycle " + std::to_string(cid);
    const std::size_t k = cycle.edges.size();
    if (k < 2 || k > t.short_cycle_max || cycle.vertices.size() != k) {
      report(kCycleShape, subject, "length " + std::to_string(k));
      continue;
    }
    for (std::size_t i = 0; i < k; ++i) {
      const VertexId a = cycle.vertices[i];
      const VertexId b = cycle.vertices[(i + 1) % k];
      const EdgeId e = cycle.edges[i];
      if (!graph.is_live(e)) continue;
      const auto& rec = graph.record(e);
      if (!((rec.u == a && rec.v == b) || (rec.u == b && rec.v == a))) {
        report(kCycleShape, subject, "edge " + std::to_string(e) + " does not chain");
        continue;
      }
      const auto pub = orientation.find(e);
      if (pub && !(pub->tail == a && pub->head == b)) {
        report(kCycleOrientation, subject, "edge " + std::to_string(e) + " reversed");
      }
    }
  }

  const auto girth = brute_girth(n, girth_edges);
  if (girth && *girth < t.girth_min) {
    report(kGirth, "high-girth set", std::to_string(*girth));
  }
  return out;
}

}  // namespace carpool::oracle
