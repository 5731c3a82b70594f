#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>

#include "ltlfo/bench.hpp"
#include "ltlfo/errors.hpp"
#include "ltlfo/monitor.hpp"
#include "ltlfo/parser.hpp"
#include "ltlfo/progression.hpp"
#include "ltlfo/sa.hpp"
#include "ltlfo/semantics.hpp"
#include "ltlfo/trace.hpp"

namespace py = pybind11;
using namespace ltlfo;

namespace {

Trace trace_from_lines(const std::string& jsonl, const Spec& spec) {
  std::istringstream in(jsonl);
  return read_trace(in, spec.signature);
}

std::string trace_to_lines(const Trace& t) {
  std::ostringstream out;
  write_trace(out, t);
  return out.str();
}

GenConfig config_for(const Spec& spec, const std::string& config_json) {
  return config_json.empty() ? default_gen_config(spec.signature)
                             : parse_gen_config(config_json, spec.signature);
}

py::dict size_dict(const SizeReport& r) {
  py::dict d;
  d["instances"] = r.instances;
  d["buffer_entries"] = r.buffer_entries;
  d["obligation_nodes"] = r.obligation_nodes;
  d["automaton_states"] = r.automaton_states;
  d["headline"] = r.headline();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "First-order temporal monitoring: spawning-automata and progression engines";

  static py::exception<Error> base(m, "LtlfoError");
  py::register_exception<SyntaxError>(m, "SpecSyntaxError", base.ptr());
  py::register_exception<SortError>(m, "SortError", base.ptr());
  py::register_exception<FreeVariableError>(m, "FreeVariableError", base.ptr());
  py::register_exception<TraceError>(m, "TraceError", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());

  py::class_<Spec>(m, "Spec")
      .def_property_readonly("policy", [](const Spec& s) { return to_string(s.policy); })
      .def_property_readonly("depth", [](const Spec& s) { return depth(s.policy); })
      .def_property_readonly("closure_size", [](const Spec& s) { return closure(s.policy).size(); })
      .def("__repr__", [](const Spec& s) { return "<Spec " + to_string(s.policy) + ">"; });

  m.def("parse_spec", [](const std::string& text) { return parse_spec(text); }, py::arg("text"));
  m.def("load_spec", [](const std::string& path) { return load_spec(path); }, py::arg("path"));

  py::class_<Event>(m, "Event")
      .def("to_json", [](const Event& e) { return event_to_json(e); })
      .def("__repr__", [](const Event& e) { return event_to_json(e); });

  m.def("parse_trace", &trace_from_lines, py::arg("jsonl"), py::arg("spec"),
        "Decodes JSON Lines text into a list of events.");
  m.def("dump_trace", &trace_to_lines, py::arg("trace"));
  m.def(
      "gen_trace",
      [](const Spec& spec, std::size_t length, std::uint64_t seed, const std::string& config) {
        return gen_trace(spec.signature, length, seed, config_for(spec, config));
      },
      py::arg("spec"), py::arg("length"), py::arg("seed"), py::arg("config") = "");

  m.def(
      "word_problem",
      [](const Spec& spec, const Trace& t) { return word_problem(spec.policy, t, spec.signature); },
      py::arg("spec"), py::arg("trace"));

  py::class_<Monitor>(m, "Monitor")
      .def(py::init([](const Spec& spec, std::size_t cap) {
             MonitorOptions o;
             o.closure_cap = cap;
             return std::make_unique<Monitor>(spec.signature, spec.policy, Valuation{}, o);
           }),
           py::arg("spec"), py::arg("cap") = kDefaultClosureCap, py::keep_alive<1, 2>())
      .def("step", [](Monitor& mon, const Event& e) { return to_string(mon.step(e)); })
      .def_property_readonly("verdict", [](const Monitor& mon) { return to_string(mon.verdict()); })
      .def("size", [](const Monitor& mon) { return size_dict(mon.size()); });

  py::class_<ProgressionMonitor>(m, "ProgressionMonitor")
      .def(py::init([](const Spec& spec) {
             return std::make_unique<ProgressionMonitor>(spec.signature, spec.policy);
           }),
           py::arg("spec"), py::keep_alive<1, 2>())
      .def("step", [](ProgressionMonitor& mon, const Event& e) { return to_string(mon.step(e)); })
      .def_property_readonly("verdict",
                             [](const ProgressionMonitor& mon) { return to_string(mon.verdict()); })
      .def_property_readonly("formula",
                             [](const ProgressionMonitor& mon) { return to_string(mon.current()); })
      .def("size", &ProgressionMonitor::size);

  m.def(
      "monitor",
      [](const Spec& spec, const Trace& t, const std::string& engine) {
        const EngineRun run = run_engine(parse_engine(engine), spec, t);
        std::vector<std::string> out;
        for (Verdict v : run.verdicts) out.push_back(to_string(v));
        return py::make_tuple(out, run.sizes);
      },
      py::arg("spec"), py::arg("trace"), py::arg("engine") = "sa",
      "Runs one engine over a trace; returns (verdicts, sizes).");

  m.def(
      "compare",
      [](const Spec& spec, std::size_t traces, std::size_t length, std::uint64_t seed,
         const std::string& config) {
        CompareOptions o;
        o.traces = traces;
        o.length = length;
        o.seed = seed;
        o.gen = config_for(spec, config);
        std::ostringstream out;
        run_compare(out, spec, o);
        return out.str();
      },
      py::arg("spec"), py::arg("traces") = 5, py::arg("length") = 100, py::arg("seed") = 0,
      py::arg("config") = "", "CSV text with one row per (trace, step, engine).");

  m.def(
      "automaton_dot",
      [](const Spec& spec, std::size_t cap) { return to_dot(SpawningAutomaton(spec.policy, cap)); },
      py::arg("spec"), py::arg("cap") = kDefaultClosureCap);
}
