#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ltlfo/monitor.hpp"
#include "ltlfo/parser.hpp"
#include "ltlfo/trace.hpp"

namespace ltlfo {

enum class Engine : std::uint8_t { SA, Progression };

std::string to_string(Engine e);
/// "sa" or "progression"; throws std::invalid_argument otherwise.
Engine parse_engine(const std::string& name);

/// Per-step results of one engine over one trace.
struct EngineRun {
  std::vector<Verdict> verdicts;
  /// Headline size for SA, residual node count for progression.
  std::vector<std::size_t> sizes;
  /// SA only.
  std::vector<SizeReport> reports;
};

EngineRun run_engine(Engine engine, const Spec& spec, const Trace& trace,
                     const MonitorOptions& opts = {});

/// stats CSV: `step,instances,buffer_entries,obligation_nodes,automaton_states,headline,verdict`
/// for SA, `step,formula_nodes,verdict` for progression.
void write_stats_csv(std::ostream& out, Engine engine, const EngineRun& run);

struct CompareOptions {
  std::size_t traces = 5;
  std::size_t length = 100;
  std::uint64_t seed = 0;
  GenConfig gen;
  MonitorOptions monitor;
};

/// Trace i is generated with seed + i and run through both engines. Writes
/// `trace_id,step,engine,size_metric,verdict` rows, steps 1-based.
void run_compare(std::ostream& out, const Spec& spec, const CompareOptions& opts);

}  // namespace ltlfo
