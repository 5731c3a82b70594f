// ltlfo: monitor, evaluate and benchmark LTL^FO policies over event traces.
//
//   ltlfo monitor   --spec S (--trace T | --gen L,SEED) [--engine sa|progression]
//                   [--stats CSV] [--cap N] [--dump-sa DOT]
//   ltlfo compare   --spec S [--traces N] [--length L] [--seed SEED] [--out CSV]
//   ltlfo eval      --spec S (--trace T | --gen L,SEED)
//   ltlfo gen-trace --spec S --length L --seed SEED [--out T]
//
// Exit status: 0 on success, 2 for spec errors, 3 for trace errors,
// 4 when the closure cap is exceeded, 1 otherwise.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "ltlfo/bench.hpp"
#include "ltlfo/errors.hpp"
#include "ltlfo/monitor.hpp"
#include "ltlfo/parser.hpp"
#include "ltlfo/sa.hpp"
#include "ltlfo/semantics.hpp"
#include "ltlfo/trace.hpp"

namespace {

using namespace ltlfo;

struct Input {
  std::string spec;
  std::string trace;
  std::vector<std::uint64_t> gen;  // length, seed
  std::string gen_config;
};

void add_input(CLI::App& cmd, Input& in) {
  cmd.add_option("--spec", in.spec, "Spec file")->required()->check(CLI::ExistingFile);
  auto* trace = cmd.add_option("--trace", in.trace, "JSONL trace file")->check(CLI::ExistingFile);
  auto* gen = cmd.add_option("--gen", in.gen, "Generate a trace: LENGTH,SEED")
                  ->delimiter(',')
                  ->expected(2);
  trace->excludes(gen);
  cmd.add_option("--gen-config", in.gen_config, "Generator configuration (JSON)")
      ->check(CLI::ExistingFile);
}

GenConfig gen_config(const Input& in, const Spec& spec) {
  return in.gen_config.empty() ? default_gen_config(spec.signature)
                               : load_gen_config(in.gen_config, spec.signature);
}

Trace obtain_trace(const Input& in, const Spec& spec) {
  Trace t;
  if (!in.trace.empty()) {
    t = read_trace(std::filesystem::path(in.trace), spec.signature);
  } else if (in.gen.size() == 2) {
    t = gen_trace(spec.signature, in.gen[0], in.gen[1], gen_config(in, spec));
  } else {
    throw CLI::ValidationError("one of --trace or --gen is required");
  }
  check_envs(t, required_envs(spec.policy, spec.signature));
  spdlog::debug("trace of {} events", t.size());
  return t;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

int cmd_monitor(const Input& in, const std::string& engine_name, const std::string& stats,
                std::size_t cap, const std::string& dump) {
  const Spec spec = load_spec(in.spec);
  const Engine engine = parse_engine(engine_name);
  MonitorOptions opts;
  opts.closure_cap = cap;
  if (!dump.empty()) {
    auto out = open_out(dump);
    out << to_dot(SpawningAutomaton(spec.policy, cap));
  }
  const Trace trace = obtain_trace(in, spec);
  const EngineRun run = run_engine(engine, spec, trace, opts);
  for (Verdict v : run.verdicts) std::cout << to_string(v) << '\n';
  const Verdict final = run.verdicts.empty() ? Verdict::Unknown : run.verdicts.back();
  std::cout << "final: " << to_string(final) << '\n';
  if (!stats.empty()) {
    auto out = open_out(stats);
    write_stats_csv(out, engine, run);
  }
  return 0;
}

int cmd_eval(const Input& in) {
  const Spec spec = load_spec(in.spec);
  const Trace trace = obtain_trace(in, spec);
  if (trace.empty()) throw CLI::ValidationError("eval needs a non-empty trace");
  std::cout << (word_problem(spec.policy, trace, spec.signature) ? "true" : "false") << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  auto log = spdlog::stderr_color_mt("ltlfo");
  spdlog::set_default_logger(log);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("LTLFO_LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }

  CLI::App app{"Monitoring and benchmarking of first-order temporal policies"};
  app.require_subcommand(1);

  Input mon_in;
  std::string engine = "sa", stats, dump;
  std::size_t cap = kDefaultClosureCap;
  auto* mon = app.add_subcommand("monitor", "Print one verdict per event");
  add_input(*mon, mon_in);
  mon->add_option("--engine", engine, "sa or progression")
      ->check(CLI::IsMember({"sa", "progression"}));
  mon->add_option("--stats", stats, "Write per-step sizes as CSV");
  mon->add_option("--cap", cap, "Closure size cap");
  mon->add_option("--dump-sa", dump, "Write the policy automaton in DOT format");

  std::string cmp_spec, cmp_out, cmp_config;
  CompareOptions cmp;
  auto* compare = app.add_subcommand("compare", "Size and verdict CSV of both engines");
  compare->add_option("--spec", cmp_spec, "Spec file")->required()->check(CLI::ExistingFile);
  compare->add_option("--traces", cmp.traces, "Number of traces");
  compare->add_option("--length", cmp.length, "Trace length");
  compare->add_option("--seed", cmp.seed, "Seed of the first trace");
  compare->add_option("--gen-config", cmp_config, "Generator configuration (JSON)")
      ->check(CLI::ExistingFile);
  compare->add_option("--cap", cmp.monitor.closure_cap, "Closure size cap");
  compare->add_option("--out", cmp_out, "Output file (default: stdout)");

  Input eval_in;
  auto* eval = app.add_subcommand("eval", "Decide the word problem for a finite trace");
  add_input(*eval, eval_in);

  std::string gen_spec, gen_config_path, gen_out;
  std::size_t gen_length = 0;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen-trace", "Write a seeded random trace as JSONL");
  gen->add_option("--spec", gen_spec, "Spec file")->required()->check(CLI::ExistingFile);
  gen->add_option("--length", gen_length, "Number of events")->required();
  gen->add_option("--seed", gen_seed, "Seed")->required();
  gen->add_option("--gen-config", gen_config_path, "Generator configuration (JSON)")
      ->check(CLI::ExistingFile);
  gen->add_option("--out", gen_out, "Output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mon) return cmd_monitor(mon_in, engine, stats, cap, dump);
    if (*eval) return cmd_eval(eval_in);
    if (*compare) {
      const Spec spec = load_spec(cmp_spec);
      cmp.gen = cmp_config.empty() ? default_gen_config(spec.signature)
                                   : load_gen_config(cmp_config, spec.signature);
      if (cmp_out.empty()) {
        run_compare(std::cout, spec, cmp);
      } else {
        auto out = open_out(cmp_out);
        run_compare(out, spec, cmp);
      }
      return 0;
    }
    if (*gen) {
      const Spec spec = load_spec(gen_spec);
      const GenConfig cfg = gen_config_path.empty() ? default_gen_config(spec.signature)
                                                    : load_gen_config(gen_config_path, spec.signature);
      const Trace t = gen_trace(spec.signature, gen_length, gen_seed, cfg);
      if (gen_out.empty()) {
        write_trace(std::cout, t);
      } else {
        auto out = open_out(gen_out);
        write_trace(out, t);
      }
      return 0;
    }
  } catch (const SyntaxError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const SortError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const FreeVariableError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const TraceError& e) {
    spdlog::error("{}", e.what());
    return 3;
  } catch (const MissingEnv& e) {
    spdlog::error("{}", e.what());
    return 3;
  } catch (const CapacityError& e) {
    spdlog::error("{}", e.what());
    return 4;
  } catch (const CLI::ValidationError& e) {
    spdlog::error("{}", e.what());
    return 1;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
