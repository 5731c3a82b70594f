#include "ltlfo/bench.hpp"

#include <ostream>
#include <stdexcept>

#include "ltlfo/progression.hpp"

namespace ltlfo {

std::string to_string(Engine e) { return e == Engine::SA ? "sa" : "progression"; }

Engine parse_engine(const std::string& name) {
  if (name == "sa") return Engine::SA;
  if (name == "progression") return Engine::Progression;
  throw std::invalid_argument("unknown engine '" + name + "'");
}

EngineRun run_engine(Engine engine, const Spec& spec, const Trace& trace,
                     const MonitorOptions& opts) {
  EngineRun run;
  run.verdicts.reserve(trace.size());
  run.sizes.reserve(trace.size());
  if (engine == Engine::SA) {
    Monitor m(spec.signature, spec.policy, {}, opts);
    for (const auto& e : trace) {
      run.verdicts.push_back(m.step(e));
      run.reports.push_back(m.size());
      run.sizes.push_back(run.reports.back().headline());
    }
  } else {
    ProgressionMonitor m(spec.signature, spec.policy);
    for (const auto& e : trace) {
      run.verdicts.push_back(m.step(e));
      run.sizes.push_back(m.size());
    }
  }
  return run;
}

void write_stats_csv(std::ostream& out, Engine engine, const EngineRun& run) {
  if (engine == Engine::SA) {
    out << "step,instances,buffer_entries,obligation_nodes,automaton_states,headline,verdict\n";
    for (std::size_t i = 0; i < run.reports.size(); ++i) {
      const SizeReport& r = run.reports[i];
      out << i + 1 << ',' << r.instances << ',' << r.buffer_entries << ',' << r.obligation_nodes
          << ',' << r.automaton_states << ',' << r.headline() << ',' << to_string(run.verdicts[i])
          << '\n';
    }
  } else {
    out << "step,formula_nodes,verdict\n";
    for (std::size_t i = 0; i < run.sizes.size(); ++i) {
      out << i + 1 << ',' << run.sizes[i] << ',' << to_string(run.verdicts[i]) << '\n';
    }
  }
}

void run_compare(std::ostream& out, const Spec& spec, const CompareOptions& opts) {
  out << "trace_id,step,engine,size_metric,verdict\n";
  for (std::size_t t = 0; t < opts.traces; ++t) {
    const Trace trace = gen_trace(spec.signature, opts.length, opts.seed + t, opts.gen);
    for (Engine engine : {Engine::SA, Engine::Progression}) {
      const EngineRun run = run_engine(engine, spec, trace, opts.monitor);
      for (std::size_t i = 0; i < trace.size(); ++i) {
        out << t << ',' << i + 1 << ',' << to_string(engine) << ',' << run.sizes[i] << ','
            << to_string(run.verdicts[i]) << '\n';
      }
    }
  }
}

}  // namespace ltlfo
