#include "ltlfo/trace.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ltlfo/errors.hpp"

namespace ltlfo {

using nlohmann::json;

namespace {

Value decode_value(const json& j, Kind k, std::size_t line, const std::string& site) {
  if (k == Kind::Int) {
    if (j.is_number_integer()) {
      if (j.is_number_unsigned() &&
          j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        throw SortMismatch(line, site + ": integer out of range");
      }
      return Value{j.get<std::int64_t>()};
    }
    throw SortMismatch(line, site + ": expected Int, found " + std::string(j.type_name()) + " " + j.dump());
  }
  if (j.is_string()) return Value{j.get<std::string>()};
  throw SortMismatch(line, site + ": expected Str, found " + std::string(j.type_name()) + " " + j.dump());
}

Tuple decode_tuple(const json& j, const std::vector<std::string>& sorts, const Signature& sig,
                   std::size_t line, const std::string& site) {
  if (!j.is_array()) throw TraceParseError(line, site + ": tuple must be an array");
  if (j.size() != sorts.size()) {
    throw SortMismatch(line, site + ": expected " + std::to_string(sorts.size()) +
                                 " values, found " + std::to_string(j.size()));
  }
  Tuple out;
  out.reserve(sorts.size());
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    out.push_back(decode_value(j[i], sig.kind(sorts[i]), line, site));
  }
  return out;
}

json encode_tuple(const Tuple& t) {
  json arr = json::array();
  for (const auto& v : t) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) {
      arr.push_back(*i);
    } else {
      arr.push_back(std::get<std::string>(v));
    }
  }
  return arr;
}

}  // namespace

Event parse_event(std::string_view line, const Signature& sig, std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw TraceParseError(line_no, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw TraceParseError(line_no, "event must be a JSON object");
  Event ev;
  for (const auto& [key, val] : j.items()) {
    if (key == "actions") {
      if (!val.is_array()) throw TraceParseError(line_no, "'actions' must be an array");
      for (const auto& a : val) {
        if (!a.is_array() || a.size() != 2 || !a[0].is_string()) {
          throw TraceParseError(line_no, "action must be [name, [values...]]");
        }
        const std::string name = a[0].get<std::string>();
        const UPredDecl* decl = sig.upred(name);
        if (!decl) throw UnknownPredicate(name, line_no);
        ev.actions.insert(Action{name, decode_tuple(a[1], decl->arg_sorts, sig, line_no, "action " + name)});
      }
    } else if (key == "env") {
      if (!val.is_object()) throw TraceParseError(line_no, "'env' must be an object");
      for (const auto& [name, tuples] : val.items()) {
        const IPredDecl* decl = sig.ipred_for_env(name);
        if (!decl) throw UnknownPredicate(name, line_no);
        if (!tuples.is_array()) throw TraceParseError(line_no, "env set '" + name + "' must be an array");
        auto& set = ev.env[name];
        for (const auto& t : tuples) {
          set.insert(decode_tuple(t, decl->arg_sorts, sig, line_no, "env " + name));
        }
      }
    } else {
      throw TraceParseError(line_no, "unexpected key '" + key + "'");
    }
  }
  return ev;
}

Trace read_trace(std::istream& in, const Signature& sig) {
  Trace out;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_event(line, sig, n));
  }
  return out;
}

Trace read_trace(const std::filesystem::path& path, const Signature& sig) {
  std::ifstream in(path);
  if (!in) throw TraceError(0, "cannot open trace file " + path.string());
  return read_trace(in, sig);
}

std::string event_to_json(const Event& e) {
  json j = json::object();
  json actions = json::array();
  for (const auto& a : e.actions) actions.push_back(json::array({a.pred, encode_tuple(a.values)}));
  j["actions"] = std::move(actions);
  if (!e.env.empty()) {
    json env = json::object();
    for (const auto& [name, tuples] : e.env) {
      json arr = json::array();
      for (const auto& t : tuples) arr.push_back(encode_tuple(t));
      env[name] = std::move(arr);
    }
    j["env"] = std::move(env);
  }
  return j.dump();
}

void write_trace(std::ostream& out, const Trace& t) {
  for (const auto& e : t) out << event_to_json(e) << '\n';
}

namespace {

void collect_envs(const Formula& f, const Signature& sig, std::set<std::string>& out) {
  if (f->op() == Op::IPred) {
    if (const auto* d = sig.ipred(f->name()); d && d->extensional()) out.insert(d->env_set);
  }
  if (f->lhs()) collect_envs(f->lhs(), sig, out);
  if (f->rhs()) collect_envs(f->rhs(), sig, out);
}

}  // namespace

std::set<std::string> required_envs(const Formula& f, const Signature& sig) {
  std::set<std::string> out;
  collect_envs(f, sig, out);
  return out;
}

void check_envs(const Trace& t, const std::set<std::string>& envs) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (const auto& name : envs) {
      if (!t[i].env.contains(name)) {
        throw TraceError(i + 1, "event lacks env set '" + name + "'");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Generator
// ---------------------------------------------------------------------------

namespace {

ArgRange default_range(Kind k) {
  ArgRange r;
  if (k == Kind::Str) r.choices = {"a", "b", "c"};
  return r;
}

std::vector<ArgRange> default_args(const std::vector<std::string>& sorts, const Signature& sig) {
  std::vector<ArgRange> out;
  for (const auto& s : sorts) out.push_back(default_range(sig.kind(s)));
  return out;
}

std::vector<ArgRange> parse_args(const json& j, const std::vector<std::string>& sorts,
                                 const Signature& sig, const std::string& site) {
  if (!j.is_array() || j.size() != sorts.size()) {
    throw Error(site + ": 'args' needs one range per argument");
  }
  std::vector<ArgRange> out;
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    ArgRange r;
    const json& a = j[i];
    if (sig.kind(sorts[i]) == Kind::Int) {
      if (!a.is_array() || a.size() != 2) throw Error(site + ": Int argument range must be [lo, hi]");
      r.lo = a[0].get<std::int64_t>();
      r.hi = a[1].get<std::int64_t>();
      if (r.lo > r.hi) throw Error(site + ": empty range");
    } else {
      if (!a.is_array() || a.empty()) throw Error(site + ": Str argument needs a non-empty choice list");
      for (const auto& c : a) r.choices.push_back(c.get<std::string>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::pair<std::size_t, std::size_t> parse_count(const json& j, const std::string& site) {
  if (!j.is_array() || j.size() != 2) throw Error(site + ": 'count' must be [min, max]");
  auto lo = j[0].get<std::size_t>();
  auto hi = j[1].get<std::size_t>();
  if (lo > hi) throw Error(site + ": empty count range");
  return {lo, hi};
}

/// Uniform draw in [lo, hi] by rejection, independent of the standard
/// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return gen_();
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  std::int64_t in(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(span));
  }

  std::size_t in(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(below(hi - lo + 1));
  }

 private:
  std::mt19937_64 gen_;
};

Tuple draw_tuple(Rng& rng, const std::vector<ArgRange>& args) {
  Tuple t;
  t.reserve(args.size());
  for (const auto& a : args) {
    if (!a.choices.empty()) {
      t.emplace_back(a.choices[rng.below(a.choices.size())]);
    } else {
      t.emplace_back(rng.in(a.lo, a.hi));
    }
  }
  return t;
}

}  // namespace

GenConfig default_gen_config(const Signature& sig) {
  GenConfig cfg;
  for (const auto& [name, p] : sig.upreds()) {
    ActionGen g;
    g.args = default_args(p.arg_sorts, sig);
    cfg.actions.emplace(name, std::move(g));
  }
  for (const auto& [name, p] : sig.ipreds()) {
    if (!p.extensional()) continue;
    EnvGen g;
    g.args = default_args(p.arg_sorts, sig);
    cfg.envs.emplace(p.env_set, std::move(g));
  }
  return cfg;
}

GenConfig parse_gen_config(std::string_view text, const Signature& sig) {
  GenConfig cfg = default_gen_config(sig);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed generator config: ") + e.what());
  }
  try {
    if (j.contains("actions")) {
      for (const auto& [name, spec] : j.at("actions").items()) {
        const UPredDecl* decl = sig.upred(name);
        if (!decl) throw Error("generator config: unknown U-operator '" + name + "'");
        ActionGen& g = cfg.actions.at(name);
        if (spec.contains("count")) std::tie(g.min_count, g.max_count) = parse_count(spec.at("count"), name);
        if (spec.contains("args")) g.args = parse_args(spec.at("args"), decl->arg_sorts, sig, name);
      }
    }
    if (j.contains("env")) {
      for (const auto& [name, spec] : j.at("env").items()) {
        const IPredDecl* decl = sig.ipred_for_env(name);
        if (!decl) throw Error("generator config: unknown env set '" + name + "'");
        EnvGen& g = cfg.envs.at(name);
        if (spec.contains("fixed")) {
          std::set<Tuple> fixed;
          for (const auto& t : spec.at("fixed")) {
            fixed.insert(decode_tuple(t, decl->arg_sorts, sig, 0, "env " + name));
          }
          g.fixed = std::move(fixed);
        }
        if (spec.contains("count")) std::tie(g.min_count, g.max_count) = parse_count(spec.at("count"), name);
        if (spec.contains("args")) g.args = parse_args(spec.at("args"), decl->arg_sorts, sig, name);
        if (spec.contains("redraw")) g.redraw = spec.at("redraw").get<bool>();
      }
    }
  } catch (const json::exception& e) {
    throw Error(std::string("generator config: ") + e.what());
  } catch (const TraceError& e) {
    throw Error(std::string("generator config: ") + e.what());
  }
  return cfg;
}

GenConfig load_gen_config(const std::filesystem::path& path, const Signature& sig) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open generator config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_gen_config(ss.str(), sig);
}

Trace gen_trace(const Signature& sig, std::size_t length, std::uint64_t seed, const GenConfig& cfg) {
  (void)sig;
  Rng rng(seed);
  Trace out;
  out.reserve(length);
  EnvMap persistent;
  for (std::size_t i = 0; i < length; ++i) {
    Event ev;
    for (const auto& [name, g] : cfg.actions) {
      std::size_t n = rng.in(g.min_count, g.max_count);
      for (std::size_t k = 0; k < n; ++k) ev.actions.insert(Action{name, draw_tuple(rng, g.args)});
    }
    for (const auto& [name, g] : cfg.envs) {
      if (g.fixed) {
        ev.env[name] = *g.fixed;
        continue;
      }
      if (i == 0 || g.redraw) {
        std::set<Tuple> rel;
        std::size_t n = rng.in(g.min_count, g.max_count);
        for (std::size_t k = 0; k < n; ++k) rel.insert(draw_tuple(rng, g.args));
        persistent[name] = std::move(rel);
      }
      ev.env[name] = persistent[name];
    }
    out.push_back(std::move(ev));
  }
  return out;
}

}  // namespace ltlfo
