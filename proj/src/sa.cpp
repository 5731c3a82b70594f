#include "ltlfo/sa.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "ltlfo/errors.hpp"

namespace ltlfo {

namespace {

// Enumeration is over 2^|base| bitmasks.
constexpr std::size_t kMaxBase = 24;

// Iterative Tarjan; returns the SCC index of every vertex.
std::vector<std::size_t> scc_components(const std::vector<std::vector<StateId>>& g,
                                        std::size_t& count) {
  const std::size_t n = g.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<StateId> stack;
  std::vector<std::pair<StateId, std::size_t>> work;
  std::size_t next = 0;
  count = 0;
  for (StateId root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    work.emplace_back(root, 0);
    while (!work.empty()) {
      auto& [v, child] = work.back();
      if (child == 0 && index[v] == kUnset) {
        index[v] = low[v] = next++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (child < g[v].size()) {
        StateId w = g[v][child++];
        if (index[w] == kUnset) {
          work.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        StateId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      StateId done = v;
      work.pop_back();
      if (!work.empty()) {
        StateId parent = work.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return comp;
}

Valuation restrict(const Valuation& v, const std::set<std::string>& vars) {
  Valuation out;
  for (const auto& x : vars) {
    if (auto it = v.find(x); it != v.end()) out.emplace(x, it->second);
  }
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

SpawningAutomaton::SpawningAutomaton(Formula f, std::size_t cap)
    : formula_(std::move(f)), level_(depth(formula_)), base_(closure_base(formula_)) {
  if (closure_size() > cap) throw CapacityError(closure_size(), cap);
  if (base_.size() > kMaxBase) throw CapacityError(closure_size(), 2 * kMaxBase);
  const std::size_t n = base_.size();
  for (std::size_t k = 0; k < n; ++k) index_.emplace(base_[k], static_cast<int>(k));

  std::vector<int> uses;
  for (std::size_t k = 0; k < n; ++k) {
    const Formula& psi = base_[k];
    if (psi->is_atom()) {
      atoms_.push_back(static_cast<int>(k));
      atom_mask_ |= std::uint64_t{1} << k;
    } else if (psi->op() == Op::Forall) {
      foralls_.push_back(static_cast<int>(k));
    } else if (psi->op() == Op::Until) {
      uses.push_back(static_cast<int>(k));
    }
  }

  auto complete = [&](std::uint64_t m) {
    for (std::size_t k = 0; k < n; ++k) {
      const Formula& psi = base_[k];
      const bool in = (m >> k) & 1U;
      switch (psi->op()) {
        case Op::True:
          if (!in) return false;
          break;
        case Op::And:
          if (in != (lit(m, psi->lhs()) && lit(m, psi->rhs()))) return false;
          break;
        case Op::Until:
          if (in && !lit(m, psi->rhs()) && !lit(m, psi->lhs())) return false;
          if (!in && lit(m, psi->rhs())) return false;
          break;
        default:
          break;
      }
    }
    return true;
  };

  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<std::int32_t> id_of(std::size_t{1} << n, -1);
  for (std::uint64_t m = 0; m <= full; ++m) {
    if (complete(m)) {
      id_of[m] = static_cast<std::int32_t>(states_.size());
      states_.push_back(m);
    }
    if (m == full) break;
  }

  for (StateId q = 0; q < states_.size(); ++q) {
    if (lit(states_[q], formula_)) initial_.push_back(q);
  }

  // Successors: each state fixes some bits of its successor.
  succ_.resize(states_.size());
  for (StateId q = 0; q < states_.size(); ++q) {
    const std::uint64_t m = states_[q];
    std::uint64_t mask = 0, val = 0;
    bool conflict = false;
    auto require = [&](int pos, bool bit) {
      const std::uint64_t b = std::uint64_t{1} << pos;
      if ((mask & b) && (((val & b) != 0) != bit)) conflict = true;
      mask |= b;
      if (bit) val |= b;
    };
    for (std::size_t k = 0; k < n && !conflict; ++k) {
      const Formula& psi = base_[k];
      const bool in = (m >> k) & 1U;
      if (psi->op() == Op::Next) {
        const Formula& a = psi->lhs();
        require(position(positive_form(a)), in != is_negative(a));
      } else if (psi->op() == Op::Until) {
        if (!lit(m, psi->rhs()) && lit(m, psi->lhs())) require(static_cast<int>(k), in);
      }
    }
    if (conflict) continue;
    const std::uint64_t free = full & ~mask;
    std::uint64_t sub = free;
    while (true) {
      const std::int32_t id = id_of[val | sub];
      if (id >= 0) succ_[q].push_back(static_cast<StateId>(id));
      if (sub == 0) break;
      sub = (sub - 1) & free;
    }
    std::sort(succ_[q].begin(), succ_[q].end());
  }

  // Acceptance: F_{a U b} = {q | b in q or a U b not in q}.
  std::vector<std::uint64_t> acc_bits(states_.size(), 0);
  for (std::size_t i = 0; i < uses.size(); ++i) {
    const Formula& u = base_[static_cast<std::size_t>(uses[i])];
    std::vector<StateId> set;
    for (StateId q = 0; q < states_.size(); ++q) {
      const std::uint64_t m = states_[q];
      if (lit(m, u->rhs()) || !((m >> uses[i]) & 1U)) {
        set.push_back(q);
        if (i < 64) acc_bits[q] |= std::uint64_t{1} << i;
      }
    }
    acceptance_.push_back(std::move(set));
  }

  // Live: some reachable nontrivial SCC meets every acceptance set.
  std::size_t ncomp = 0;
  const auto comp = scc_components(succ_, ncomp);
  std::vector<std::uint64_t> comp_acc(ncomp, 0);
  std::vector<std::size_t> comp_size(ncomp, 0);
  std::vector<bool> comp_loop(ncomp, false);
  for (StateId q = 0; q < states_.size(); ++q) {
    comp_acc[comp[q]] |= acc_bits[q];
    ++comp_size[comp[q]];
    for (StateId r : succ_[q]) {
      if (r == q) comp_loop[comp[q]] = true;
    }
  }
  const std::uint64_t all_acc =
      uses.size() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << uses.size()) - 1;
  std::vector<std::vector<StateId>> pred(states_.size());
  for (StateId q = 0; q < states_.size(); ++q) {
    for (StateId r : succ_[q]) pred[r].push_back(q);
  }
  live_.assign(states_.size(), false);
  std::vector<StateId> frontier;
  for (StateId q = 0; q < states_.size(); ++q) {
    const std::size_t c = comp[q];
    if ((comp_size[c] > 1 || comp_loop[c]) && comp_acc[c] == all_acc) {
      live_[q] = true;
      frontier.push_back(q);
    }
  }
  while (!frontier.empty()) {
    StateId r = frontier.back();
    frontier.pop_back();
    for (StateId q : pred[r]) {
      if (!live_[q]) {
        live_[q] = true;
        frontier.push_back(q);
      }
    }
  }
  live_succ_.resize(states_.size());
  for (StateId q = 0; q < states_.size(); ++q) {
    for (StateId r : succ_[q]) {
      if (live_[r]) live_succ_[q].push_back(r);
    }
  }
}

int SpawningAutomaton::position(const Formula& positive) const {
  auto it = index_.find(positive);
  if (it == index_.end()) throw std::logic_error("formula outside the closure: " + to_string(positive));
  return it->second;
}

bool SpawningAutomaton::lit(std::uint64_t state, const Formula& psi) const {
  const bool bit = (state >> position(positive_form(psi))) & 1U;
  return bit != is_negative(psi);
}

bool SpawningAutomaton::contains(StateId q, const Formula& psi) const {
  return lit(states_[q], psi);
}

AtomBits SpawningAutomaton::eval_atoms(const Event& e, const Structure& s,
                                       const Valuation& v) const {
  AtomBits bits = 0;
  for (int k : atoms_) {
    const Formula& a = base_[static_cast<std::size_t>(k)];
    Tuple args = eval_terms(a->terms(), s, v);
    const bool truth = a->op() == Op::UPred ? e.actions.contains(Action{a->name(), std::move(args)})
                                            : eval_ipred(a->name(), args, s);
    if (truth) bits |= AtomBits{1} << k;
  }
  return bits;
}

SpawnFormula SpawningAutomaton::spawn(StateId q, const Event& e, const Valuation& v) const {
  std::vector<SpawnFormula> parts;
  for (int k : foralls_) {
    const Formula& f = base_[static_cast<std::size_t>(k)];
    const bool positive = (states_[q] >> k) & 1U;
    const auto body_vars = free_variables(f->body());
    std::vector<SpawnFormula> children;
    for (const auto& a : e.actions) {
      if (a.pred != f->name()) continue;
      Valuation inner = v;
      for (std::size_t i = 0; i < f->binders().size(); ++i) {
        inner[f->binders()[i].name] = a.values[i];
      }
      children.push_back(
          SpawnFormula::leaf(ChildSpec{f->body(), restrict(inner, body_vars), !positive}));
    }
    parts.push_back(positive ? SpawnFormula::conj(std::move(children))
                             : SpawnFormula::disj(std::move(children)));
  }
  return SpawnFormula::conj(std::move(parts));
}

std::optional<SpawningAutomaton::StepResult> SpawningAutomaton::step(StateId q, const Event& e,
                                                                     const Structure& s,
                                                                     const Valuation& v) const {
  if (!defined(q, eval_atoms(e, s, v))) return std::nullopt;
  return StepResult{&live_succ_[q], spawn(q, e, v)};
}

std::string to_dot(const SpawningAutomaton& sa) {
  std::ostringstream out;
  out << "digraph SA {\n  rankdir=LR;\n";
  out << "  label=\"" << dot_escape(to_string(sa.formula())) << " (level " << sa.level()
      << ")\";\n";
  std::vector<std::vector<std::size_t>> in_sets(sa.num_states());
  for (std::size_t i = 0; i < sa.acceptance().size(); ++i) {
    for (StateId q : sa.acceptance()[i]) in_sets[q].push_back(i);
  }
  std::vector<bool> initial(sa.num_states(), false);
  for (StateId q : sa.initial()) initial[q] = true;
  for (StateId q = 0; q < sa.num_states(); ++q) {
    std::string label;
    for (std::size_t k = 0; k < sa.base().size(); ++k) {
      if (!label.empty()) label += "\\n";
      const bool in = (sa.members(q) >> k) & 1U;
      label += dot_escape(to_string(in ? sa.base()[k] : mk_not(sa.base()[k])));
    }
    if (!in_sets[q].empty()) {
      label += "\\nF:";
      for (std::size_t i : in_sets[q]) label += " " + std::to_string(i);
    }
    out << "  q" << q << " [label=\"q" << q << "\\n" << label << "\"";
    if (initial[q]) out << ", penwidth=2";
    if (!sa.live(q)) out << ", style=dashed";
    out << "];\n";
  }
  for (StateId q = 0; q < sa.num_states(); ++q) {
    for (StateId r : sa.successors(q)) out << "  q" << q << " -> q" << r << ";\n";
  }
  out << "}\n";
  return out.str();
}

const SpawningAutomaton& SACache::get(const Formula& f) {
  auto it = cache_.find(f);
  if (it == cache_.end()) {
    it = cache_.emplace(f, std::make_unique<SpawningAutomaton>(f, cap_)).first;
  }
  return *it->second;
}

}  // namespace ltlfo
