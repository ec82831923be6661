#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <tuple>

#include "carpool/adversary.hpp"
#include "carpool/engine.hpp"
#include "carpool/oracle.hpp"
#include "carpool/stream_io.hpp"

namespace py = pybind11;
using namespace carpool;

namespace {

using EdgeTuple = std::tuple<VertexId, VertexId>;

std::vector<oracle::Edge> to_edges(const std::vector<EdgeTuple>& pairs) {
  std::vector<oracle::Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) edges.push_back({edges.size(), u, v});
  return edges;
}

std::map<EdgeId, std::pair<VertexId, VertexId>> to_dict(const Orientation& o) {
  std::map<EdgeId, std::pair<VertexId, VertexId>> out;
  for (const auto& [id, arc] : o.entries()) out[id] = {arc.tail, arc.head};
  return out;
}

std::optional<std::pair<VertexId, VertexId>> arc_pair(const std::optional<Arc>& a) {
  if (!a) return std::nullopt;
  return std::make_pair(a->tail, a->head);
}

}  // namespace

PYBIND11_MODULE(_carpool, m) {
  m.doc() = "Dynamic low-discrepancy edge orientation";

  static py::handle error_type =
      py::exception<Error>(m, "CarpoolError", PyExc_RuntimeError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error_type)(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), inst.ptr());
    }
  });

  py::class_<GirthThreshold>(m, "GirthThreshold")
      .def_readonly("n", &GirthThreshold::n)
      .def_readonly("log_n", &GirthThreshold::log_n)
      .def_readonly("short_cycle_max", &GirthThreshold::short_cycle_max)
      .def_readonly("girth_min", &GirthThreshold::girth_min);
  m.def("girth_threshold", &girth_threshold, py::arg("n"));
  m.def("recourse_ceiling", [](std::size_t n) { return recourse_ceiling(girth_threshold(n)); },
        py::arg("n"));

  py::enum_<EventKind>(m, "EventKind")
      .value("INSERT", EventKind::Insert)
      .value("DELETE_BY_ID", EventKind::DeleteById)
      .value("DELETE_BY_PAIR", EventKind::DeleteByPair);

  py::class_<UpdateEvent>(m, "UpdateEvent")
      .def_static("insert", &UpdateEvent::insert, py::arg("u"), py::arg("v"))
      .def_static("erase", &UpdateEvent::erase, py::arg("id"))
      .def_static("erase_between", &UpdateEvent::erase_between, py::arg("u"), py::arg("v"))
      .def_readonly("kind", &UpdateEvent::kind)
      .def_readonly("u", &UpdateEvent::u)
      .def_readonly("v", &UpdateEvent::v)
      .def_readonly("id", &UpdateEvent::id)
      .def("__eq__", [](const UpdateEvent& a, const UpdateEvent& b) { return a == b; })
      .def("__repr__", [](const UpdateEvent& e) { return io::format_event(e); });

  py::class_<UpdateResult>(m, "UpdateResult")
      .def_property_readonly("route",
                             [](const UpdateResult& r) { return std::string(to_string(r.route)); })
      .def_readonly("edge", &UpdateResult::edge)
      .def_readonly("assigned_id", &UpdateResult::assigned_id)
      .def_property_readonly("inserted_arc",
                             [](const UpdateResult& r) { return arc_pair(r.inserted_arc); })
      .def_readonly("flips", &UpdateResult::flips)
      .def_readonly("recourse", &UpdateResult::recourse)
      .def_readonly("max_discrepancy", &UpdateResult::max_discrepancy)
      .def_readonly("longest_flip_path", &UpdateResult::longest_flip_path);

  py::class_<MetricsReport>(m, "MetricsReport")
      .def_readonly("updates_applied", &MetricsReport::updates_applied)
      .def_readonly("max_discrepancy_ever", &MetricsReport::max_discrepancy_ever)
      .def_readonly("max_recourse_single_update", &MetricsReport::max_recourse_single_update)
      .def_readonly("total_recourse", &MetricsReport::total_recourse)
      .def_readonly("longest_flip_path", &MetricsReport::longest_flip_path)
      .def_property_readonly("amortized_recourse", &MetricsReport::amortized_recourse);

  py::class_<Engine>(m, "Engine")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def("apply", &Engine::apply, py::arg("event"))
      .def("insert", &Engine::insert, py::arg("u"), py::arg("v"))
      .def("erase", &Engine::erase, py::arg("id"))
      .def("erase_between", &Engine::erase_between, py::arg("u"), py::arg("v"))
      .def("orientation", [](const Engine& e) { return to_dict(e.orientation_snapshot()); })
      .def("discrepancy",
           [](const Engine& e) {
             const auto d = e.discrepancy();
             return py::make_tuple(d.max, d.per_vertex);
           })
      .def_property_readonly("metrics", &Engine::metrics, py::return_value_policy::copy)
      .def_property_readonly("vertex_count", &Engine::vertex_count)
      .def_property_readonly("threshold", &Engine::threshold, py::return_value_policy::copy)
      .def("cycles",
           [](const Engine& e) {
             std::vector<std::vector<VertexId>> out;
             for (const auto& [id, c] : e.partition().cycles()) out.push_back(c.vertices);
             return out;
           })
      .def("check_invariants",
           [](const Engine& e) {
             std::vector<std::tuple<std::string, std::string, std::string>> out;
             for (const auto& v : oracle::check_all_invariants(e)) {
               out.emplace_back(v.invariant, v.subject, v.observed);
             }
             return out;
           })
      .def("state_summary", &Engine::state_summary);

  py::class_<UpdateStream>(m, "UpdateStream")
      .def_readonly("n", &UpdateStream::n)
      .def_readonly("events", &UpdateStream::events)
      .def_readonly("generator", &UpdateStream::generator)
      .def_readonly("seed", &UpdateStream::seed)
      .def("__len__", [](const UpdateStream& s) { return s.events.size(); })
      .def("__eq__", [](const UpdateStream& a, const UpdateStream& b) { return a == b; });

  py::class_<adversary::AdaptiveRun>(m, "AdaptiveRun")
      .def_readonly("stream", &adversary::AdaptiveRun::stream)
      .def_readonly("results", &adversary::AdaptiveRun::results);

  m.def("gen_random", &adversary::gen_random, py::arg("n"), py::arg("steps"),
        py::arg("p_delete"), py::arg("seed"));
  m.def("gen_high_girth", &adversary::gen_high_girth, py::arg("n"), py::arg("steps"),
        py::arg("seed"), py::arg("p_delete") = 0.2, py::arg("forest_only") = false);
  m.def("gen_cycle_churn", &adversary::gen_cycle_churn, py::arg("n"), py::arg("steps"),
        py::arg("seed"));
  m.def("gen_adaptive_greedy", &adversary::gen_adaptive_greedy, py::arg("engine"),
        py::arg("steps"), py::arg("seed"));

  m.def("parse_stream", &io::parse_stream, py::arg("text"));
  m.def("serialize_stream", &io::serialize_stream, py::arg("stream"));
  m.def("trace_line", &io::trace_line, py::arg("seq"), py::arg("event"), py::arg("result"));

  m.def("brute_girth",
        [](std::size_t n, const std::vector<EdgeTuple>& edges) {
          return oracle::brute_girth(n, to_edges(edges));
        },
        py::arg("n"), py::arg("edges"));
  m.def("euler_orient",
        [](std::size_t n, const std::vector<EdgeTuple>& edges) {
          return to_dict(oracle::euler_orient(n, to_edges(edges)));
        },
        py::arg("n"), py::arg("edges"));
  m.def("exhaustive_min_disc",
        [](std::size_t n, const std::vector<EdgeTuple>& edges) {
          return oracle::exhaustive_min_disc(n, to_edges(edges));
        },
        py::arg("n"), py::arg("edges"));
}
