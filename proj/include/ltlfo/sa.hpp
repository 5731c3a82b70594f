#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ltlfo/formula.hpp"
#include "ltlfo/interp.hpp"
#include "ltlfo/posbool.hpp"
#include "ltlfo/trace.hpp"
#include "ltlfo/value.hpp"

namespace ltlfo {

using StateId = std::uint32_t;

/// A submonitor request: monitor `formula` (negated if `negated`) under
/// `valuation`, which binds exactly the free variables of `formula`.
struct ChildSpec {
  Formula formula;
  Valuation valuation;
  bool negated = false;

  friend std::strong_ordering operator<=>(const ChildSpec& a, const ChildSpec& b) {
    if (auto c = compare(a.formula, b.formula); c != 0) return c;
    if (a.valuation < b.valuation) return std::strong_ordering::less;
    if (b.valuation < a.valuation) return std::strong_ordering::greater;
    return a.negated <=> b.negated;
  }
  friend bool operator==(const ChildSpec& a, const ChildSpec& b) { return (a <=> b) == 0; }
};

using SpawnFormula = PositiveFormula<ChildSpec>;

inline constexpr std::size_t kDefaultClosureCap = 30;

/// Truth of the atoms of an automaton's closure under one event and one
/// valuation, as a bitmask over closure_base positions.
using AtomBits = std::uint64_t;

/// The spawning automaton of a formula. States are the complete subsets
/// of cl(formula), each held as a bitmask over base(): bit k set means
/// base()[k] is a member, clear means its negation is. The valuation is
/// not part of the automaton; it is supplied per step.
class SpawningAutomaton {
 public:
  /// Throws CapacityError when |cl(f)| exceeds `cap`.
  explicit SpawningAutomaton(Formula f, std::size_t cap = kDefaultClosureCap);

  const Formula& formula() const { return formula_; }
  std::size_t level() const { return level_; }

  /// Positive representatives of cl(formula); |cl| == 2 * base().size().
  const std::vector<Formula>& base() const { return base_; }
  std::size_t closure_size() const { return 2 * base_.size(); }

  std::size_t num_states() const { return states_.size(); }
  std::uint64_t members(StateId q) const { return states_[q]; }
  /// Membership of any closure element (positive or negated).
  bool contains(StateId q, const Formula& psi) const;

  const std::vector<StateId>& initial() const { return initial_; }
  /// Input-independent X/U propagation edges.
  const std::vector<StateId>& successors(StateId q) const { return succ_[q]; }
  /// successors(q) restricted to live states.
  const std::vector<StateId>& live_successors(StateId q) const { return live_succ_[q]; }
  /// One set per U-element of the closure, in base() order.
  const std::vector<std::vector<StateId>>& acceptance() const { return acceptance_; }
  bool live(StateId q) const { return live_[q]; }

  /// Positions in base() holding U- or I-atoms.
  std::uint64_t atom_mask() const { return atom_mask_; }
  AtomBits eval_atoms(const Event& e, const Structure& s, const Valuation& v) const;
  /// The literal check of the transition relation.
  bool defined(StateId q, AtomBits atoms) const {
    return (states_[q] & atom_mask_) == atoms;
  }

  /// The children demanded by the quantified members of q for this event.
  SpawnFormula spawn(StateId q, const Event& e, const Valuation& v) const;

  struct StepResult {
    const std::vector<StateId>* successors;  // live successors
    SpawnFormula spawn;
  };
  /// nullopt when q's literals disagree with the event.
  std::optional<StepResult> step(StateId q, const Event& e, const Structure& s,
                                 const Valuation& v) const;

 private:
  bool lit(std::uint64_t state, const Formula& psi) const;
  int position(const Formula& positive) const;

  Formula formula_;
  std::size_t level_;
  std::vector<Formula> base_;
  std::map<Formula, int, FormulaLess> index_;
  std::vector<std::uint64_t> states_;
  std::vector<StateId> initial_;
  std::vector<std::vector<StateId>> succ_;
  std::vector<std::vector<StateId>> live_succ_;
  std::vector<std::vector<StateId>> acceptance_;
  std::vector<bool> live_;
  std::uint64_t atom_mask_ = 0;
  std::vector<int> atoms_;     // base positions of atoms
  std::vector<int> foralls_;   // base positions of quantified members
};

/// Graphviz rendering: states with their members, edges, acceptance sets,
/// initial and live marks.
std::string to_dot(const SpawningAutomaton& sa);

/// Automata shared by structure of their formula.
class SACache {
 public:
  explicit SACache(std::size_t cap = kDefaultClosureCap) : cap_(cap) {}
  const SpawningAutomaton& get(const Formula& f);
  std::size_t size() const { return cache_.size(); }

 private:
  std::size_t cap_;
  std::map<Formula, std::unique_ptr<SpawningAutomaton>, FormulaLess> cache_;
};

}  // namespace ltlfo
