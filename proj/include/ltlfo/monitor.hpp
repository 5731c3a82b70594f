#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ltlfo/formula.hpp"
#include "ltlfo/posbool.hpp"
#include "ltlfo/sa.hpp"
#include "ltlfo/signature.hpp"
#include "ltlfo/trace.hpp"
#include "ltlfo/value.hpp"

namespace ltlfo {

enum class Verdict : std::uint8_t { Unknown, Top, Bottom };

/// "?", "TOP" or "BOTTOM".
std::string to_string(Verdict v);

using InstanceId = std::uint32_t;

/// A reference to a submonitor; `negated` reads its verdict flipped.
struct ChildRef {
  InstanceId id;
  bool negated;
  auto operator<=>(const ChildRef&) const = default;
};

using Obligation = PositiveFormula<ChildRef>;

struct BufferEntry {
  StateId state;
  /// Pending obligations, sorted and without duplicates or true.
  std::vector<Obligation> obligations;
  auto operator<=>(const BufferEntry&) const = default;
};

/// One instance of the run-tracking algorithm over a single automaton.
struct Tracker {
  const SpawningAutomaton* sa = nullptr;
  std::vector<BufferEntry> buffer;
  bool started = false;
};

/// A monitor for one (formula, valuation): a tracker for the formula and
/// one for its negation.
struct Instance {
  Formula formula;  // a negation only at the root
  Valuation valuation;
  std::size_t level = 0;
  Tracker pos;
  Tracker neg;
  Verdict verdict = Verdict::Unknown;
  std::size_t last_step = 0;  // 1-based; 0 before the first event
};

struct SizeReport {
  std::size_t instances = 0;
  std::size_t buffer_entries = 0;
  std::size_t obligation_nodes = 0;
  /// Sum of state counts over the distinct automata in use.
  std::size_t automaton_states = 0;

  std::size_t headline() const { return instances + buffer_entries + obligation_nodes; }
  bool operator==(const SizeReport&) const = default;
};

struct MonitorOptions {
  std::size_t closure_cap = kDefaultClosureCap;
  /// Merge instances whose configurations coincide after every step.
  bool merge_equivalent = true;
};

/// Anticipatory monitor for a sentence, or for a formula under a valuation
/// covering its free variables. Verdicts are monotone: once TOP or BOTTOM
/// is returned, every later step returns it again without work.
class Monitor {
 public:
  Monitor(const Signature& sig, Formula f, Valuation v = {}, MonitorOptions opts = {});
  Monitor(const Monitor&) = delete;
  Monitor& operator=(const Monitor&) = delete;
  Monitor(Monitor&&) = default;
  Monitor& operator=(Monitor&&) = default;

  Verdict step(const Event& e);
  Verdict verdict() const;
  /// Number of events consumed.
  std::size_t steps() const { return step_; }
  /// Frozen once the verdict is conclusive.
  SizeReport size() const;

  const Instance& root() const;
  /// Live instances by id, for inspection.
  const std::map<InstanceId, Instance>& instances() const { return instances_; }
  const SACache& automata() const { return cache_; }

 private:
  InstanceId instance_for(const Formula& f, const Valuation& v);
  void process(InstanceId id, const Event& e, const Structure& s);
  void advance(Tracker& t, const Instance& inst, const Event& e, const Structure& s);
  void resolve(Tracker& t);
  Obligation to_obligation(const SpawnFormula& f);
  void prebuild(const Formula& f);
  void collect_garbage();
  void merge_equivalent();
  SizeReport measure() const;

  const Signature* sig_;
  MonitorOptions opts_;
  SACache cache_;
  std::map<InstanceId, Instance> instances_;
  struct PoolLess {
    bool operator()(const std::pair<Formula, Valuation>& a,
                    const std::pair<Formula, Valuation>& b) const {
      if (auto c = compare(a.first, b.first); c != 0) return c < 0;
      return a.second < b.second;
    }
  };
  // Children created during the current step.
  std::map<std::pair<Formula, Valuation>, InstanceId, PoolLess> pool_;
  InstanceId root_ = 0;
  InstanceId next_id_ = 0;
  std::size_t step_ = 0;
  SizeReport frozen_;
};

}  // namespace ltlfo
