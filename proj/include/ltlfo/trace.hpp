#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ltlfo/formula.hpp"
#include "ltlfo/signature.hpp"
#include "ltlfo/value.hpp"

namespace ltlfo {

/// (p, d): an occurrence of U-operator p with argument tuple d.
struct Action {
  std::string pred;
  Tuple values;
  auto operator<=>(const Action&) const = default;
};

/// A finite set of actions together with the extensional relations that
/// hold at that step.
struct Event {
  std::set<Action> actions;
  EnvMap env;
  bool operator==(const Event&) const = default;
};

using Trace = std::vector<Event>;

// ---------------------------------------------------------------------------
// JSON Lines format: one event per line,
//   {"actions":[[pred,[v,...]],...],"env":{name:[[v,...],...],...}}
// ---------------------------------------------------------------------------

/// Decodes and sort-checks one line. `line_no` is used in errors.
Event parse_event(std::string_view line, const Signature& sig, std::size_t line_no = 1);

/// Reads a whole JSONL stream; blank lines are skipped.
Trace read_trace(std::istream& in, const Signature& sig);
Trace read_trace(const std::filesystem::path& path, const Signature& sig);

/// Canonical single-line encoding (sorted actions; env omitted if empty).
std::string event_to_json(const Event& e);
void write_trace(std::ostream& out, const Trace& t);

/// Env set names read by extensional I-operators that occur in the formula.
std::set<std::string> required_envs(const Formula& f, const Signature& sig);

/// Throws TraceError naming the first event lacking one of the env sets.
void check_envs(const Trace& t, const std::set<std::string>& envs);

// ---------------------------------------------------------------------------
// Seeded random traces
// ---------------------------------------------------------------------------

/// How to draw one argument position: an integer range or a string choice.
struct ArgRange {
  std::int64_t lo = 0;
  std::int64_t hi = 4;
  std::vector<std::string> choices;  // non-empty for Str arguments
};

struct ActionGen {
  std::size_t min_count = 0;
  std::size_t max_count = 2;
  std::vector<ArgRange> args;
};

struct EnvGen {
  /// If set, the relation is this fixed set at every step.
  std::optional<std::set<Tuple>> fixed;
  std::size_t min_count = 0;
  std::size_t max_count = 3;
  std::vector<ArgRange> args;
  /// Redraw at every event instead of once per trace.
  bool redraw = false;
};

struct GenConfig {
  std::map<std::string, ActionGen> actions;  // by U-operator
  std::map<std::string, EnvGen> envs;        // by env set name
};

/// Default configuration: every U-operator 0..2 actions per event with Int
/// arguments in 0..4 and Str arguments from {"a","b","c"}; every env set a
/// random relation of 0..3 tuples drawn once per trace.
GenConfig default_gen_config(const Signature& sig);

/// Parses a JSON generator configuration, filling gaps from the default.
GenConfig parse_gen_config(std::string_view json, const Signature& sig);
GenConfig load_gen_config(const std::filesystem::path& path, const Signature& sig);

/// Deterministic for a given (signature, length, seed, cfg).
Trace gen_trace(const Signature& sig, std::size_t length, std::uint64_t seed, const GenConfig& cfg);

}  // namespace ltlfo
