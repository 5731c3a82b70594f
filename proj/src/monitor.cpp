#include "ltlfo/monitor.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "ltlfo/errors.hpp"
#include "ltlfo/interp.hpp"

namespace ltlfo {

namespace {

void insert_sorted(std::vector<Obligation>& obls, Obligation o) {
  auto it = std::lower_bound(obls.begin(), obls.end(), o);
  if (it == obls.end() || *it != o) obls.insert(it, std::move(o));
}

Obligation negation(const Obligation& o) {
  return o.dual([](const ChildRef& c) { return ChildRef{c.id, !c.negated}; });
}

void sort_unique(std::vector<Obligation>& obls) {
  std::sort(obls.begin(), obls.end());
  obls.erase(std::unique(obls.begin(), obls.end()), obls.end());
}

// Drops every entry whose obligations include those of another entry for
// the same state: it can only die earlier.
void drop_subsumed(std::vector<BufferEntry>& buf) {
  std::sort(buf.begin(), buf.end(), [](const BufferEntry& a, const BufferEntry& b) {
    if (a.state != b.state) return a.state < b.state;
    if (a.obligations.size() != b.obligations.size()) {
      return a.obligations.size() < b.obligations.size();
    }
    return a.obligations < b.obligations;
  });
  std::vector<BufferEntry> kept;
  kept.reserve(buf.size());
  std::size_t group = 0;
  for (auto& b : buf) {
    if (kept.size() > group && kept[group].state != b.state) group = kept.size();
    bool subsumed = false;
    for (std::size_t i = group; i < kept.size() && !subsumed; ++i) {
      subsumed = std::includes(b.obligations.begin(), b.obligations.end(),
                               kept[i].obligations.begin(), kept[i].obligations.end());
    }
    if (!subsumed) kept.push_back(std::move(b));
  }
  buf = std::move(kept);
}

// Entries (q, O + {A}) and (q, O + {!A}) die at the same step as (q, O):
// A and its dual never both resolve to false. Replaces such pairs by
// (q, O) until none is left. Returns whether anything changed.
bool resolve_complements(std::vector<BufferEntry>& buf) {
  using Key = std::pair<StateId, std::vector<Obligation>>;
  std::map<Key, std::pair<std::size_t, std::size_t>> seen;  // -> (entry, obligation)
  std::vector<bool> used(buf.size(), false);
  std::vector<BufferEntry> merged;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    const auto& obls = buf[i].obligations;
    for (std::size_t k = 0; k < obls.size() && !used[i]; ++k) {
      Key key{buf[i].state, {}};
      key.second.reserve(obls.size() - 1);
      for (std::size_t j = 0; j < obls.size(); ++j) {
        if (j != k) key.second.push_back(obls[j]);
      }
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(std::move(key), std::make_pair(i, k));
        continue;
      }
      const auto [other, pos] = it->second;
      if (used[other] || buf[other].obligations[pos] != negation(obls[k])) continue;
      used[i] = used[other] = true;
      merged.push_back(BufferEntry{key.first, std::move(key.second)});
    }
  }
  if (merged.empty()) return false;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    if (!used[i]) merged.push_back(std::move(buf[i]));
  }
  buf = std::move(merged);
  return true;
}

void normalize(std::vector<BufferEntry>& buf) {
  for (auto& b : buf) sort_unique(b.obligations);
  do {
    drop_subsumed(buf);
  } while (resolve_complements(buf));
  std::sort(buf.begin(), buf.end());
}

template <class F>
void for_each_child(const Tracker& t, F&& f) {
  for (const auto& b : t.buffer) {
    for (const auto& o : b.obligations) o.for_each_leaf(f);
  }
}

template <class F>
void rewrite(Tracker& t, F&& f) {
  for (auto& b : t.buffer) {
    for (auto& o : b.obligations) o = o.template map<ChildRef>(f);
  }
  normalize(t.buffer);
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Top:
      return "TOP";
    case Verdict::Bottom:
      return "BOTTOM";
    default:
      return "?";
  }
}

Monitor::Monitor(const Signature& sig, Formula f, Valuation v, MonitorOptions opts)
    : sig_(&sig), opts_(opts), cache_(opts.closure_cap) {
  prebuild(f);
  Instance root;
  root.level = depth(f);
  root.pos.sa = &cache_.get(f);
  root.neg.sa = &cache_.get(mk_not(f));
  root.formula = std::move(f);
  root.valuation = std::move(v);
  root_ = next_id_++;
  instances_.emplace(root_, std::move(root));
  frozen_ = measure();
}

void Monitor::prebuild(const Formula& f) {
  cache_.get(f);
  cache_.get(mk_not(f));
  for (const auto& psi : closure_base(f)) {
    if (psi->op() == Op::Forall) prebuild(positive_form(psi->body()));
  }
}

Verdict Monitor::verdict() const { return root().verdict; }

const Instance& Monitor::root() const { return instances_.at(root_); }

SizeReport Monitor::size() const {
  return verdict() == Verdict::Unknown ? measure() : frozen_;
}

Verdict Monitor::step(const Event& e) {
  ++step_;
  if (verdict() != Verdict::Unknown) return verdict();
  pool_.clear();
  Structure s(*sig_, e.env);
  process(root_, e, s);
  collect_garbage();
  if (opts_.merge_equivalent) merge_equivalent();
  if (verdict() != Verdict::Unknown) frozen_ = measure();
  return verdict();
}

InstanceId Monitor::instance_for(const Formula& f, const Valuation& v) {
  auto key = std::make_pair(f, v);
  if (auto it = pool_.find(key); it != pool_.end()) return it->second;
  Instance inst;
  inst.formula = f;
  inst.valuation = v;
  inst.level = depth(f);
  inst.pos.sa = &cache_.get(f);
  inst.neg.sa = &cache_.get(mk_not(f));
  const InstanceId id = next_id_++;
  instances_.emplace(id, std::move(inst));
  pool_.emplace(std::move(key), id);
  return id;
}

Obligation Monitor::to_obligation(const SpawnFormula& f) {
  SpawnFormula ground = f.resolve([](const ChildSpec& c) -> std::optional<bool> {
    if (c.formula->op() == Op::True) return !c.negated;
    if (c.formula->op() == Op::False) return c.negated;
    return std::nullopt;
  });
  return ground.map<ChildRef>([&](const ChildSpec& c) {
    const bool flip = is_negative(c.formula);
    return ChildRef{instance_for(positive_form(c.formula), c.valuation), c.negated != flip};
  });
}

void Monitor::advance(Tracker& t, const Instance& inst, const Event& e, const Structure& s) {
  const SpawningAutomaton& sa = *t.sa;
  const AtomBits atoms = sa.eval_atoms(e, s, inst.valuation);
  std::map<StateId, Obligation> spawned;
  std::vector<BufferEntry> next;
  auto extend = [&](StateId q, const std::vector<Obligation>& obls) {
    if (!sa.defined(q, atoms)) return;
    const auto& succ = sa.live_successors(q);
    if (succ.empty()) return;
    auto it = spawned.find(q);
    if (it == spawned.end()) {
      it = spawned.emplace(q, to_obligation(sa.spawn(q, e, inst.valuation))).first;
    }
    if (it->second.is_false()) return;
    std::vector<Obligation> merged = obls;
    if (!it->second.is_true()) insert_sorted(merged, it->second);
    for (StateId r : succ) next.push_back(BufferEntry{r, merged});
  };
  if (!t.started) {
    for (StateId q : sa.initial()) {
      if (sa.live(q)) extend(q, {});
    }
    t.started = true;
  } else {
    for (const auto& b : t.buffer) extend(b.state, b.obligations);
  }
  t.buffer = std::move(next);
}

void Monitor::resolve(Tracker& t) {
  std::vector<BufferEntry> kept;
  kept.reserve(t.buffer.size());
  for (auto& b : t.buffer) {
    std::vector<Obligation> rest;
    bool dead = false;
    for (const auto& o : b.obligations) {
      Obligation r = o.resolve([&](const ChildRef& c) -> std::optional<bool> {
        const Verdict v = instances_.at(c.id).verdict;
        if (v == Verdict::Unknown) return std::nullopt;
        return (v == Verdict::Top) != c.negated;
      });
      if (r.is_false()) {
        dead = true;
        break;
      }
      if (!r.is_true()) rest.push_back(std::move(r));
    }
    if (!dead) kept.push_back(BufferEntry{b.state, std::move(rest)});
  }
  normalize(kept);
  t.buffer = std::move(kept);
}

void Monitor::process(InstanceId id, const Event& e, const Structure& s) {
  Instance& inst = instances_.at(id);
  if (inst.verdict != Verdict::Unknown || inst.last_step == step_) return;
  inst.last_step = step_;
  advance(inst.pos, inst, e, s);
  advance(inst.neg, inst, e, s);

  std::set<InstanceId> children;
  auto note = [&](const ChildRef& c) { children.insert(c.id); };
  for_each_child(inst.pos, note);
  for_each_child(inst.neg, note);
  for (InstanceId c : children) process(c, e, s);

  resolve(inst.pos);
  resolve(inst.neg);
  const bool pos_dead = inst.pos.buffer.empty();
  const bool neg_dead = inst.neg.buffer.empty();
  if (pos_dead && neg_dead) {
    throw InternalInvariantViolation("both trackers of " + to_string(inst.formula) + " under " +
                                     to_string(inst.valuation) + " lost all runs");
  }
  if (pos_dead) inst.verdict = Verdict::Bottom;
  if (neg_dead) inst.verdict = Verdict::Top;
}

void Monitor::collect_garbage() {
  std::set<InstanceId> reached{root_};
  std::vector<InstanceId> todo{root_};
  auto note = [&](const ChildRef& c) {
    if (reached.insert(c.id).second) todo.push_back(c.id);
  };
  while (!todo.empty()) {
    const Instance& inst = instances_.at(todo.back());
    todo.pop_back();
    for_each_child(inst.pos, note);
    for_each_child(inst.neg, note);
  }
  for (auto it = instances_.begin(); it != instances_.end();) {
    it = reached.contains(it->first) ? std::next(it) : instances_.erase(it);
  }
}

// Instances with equal formula, valuation and buffers are bisimilar: they
// see the same future events and hold the same runs. Children are merged
// before their parents so that parents' obligations become comparable.
void Monitor::merge_equivalent() {
  std::map<std::size_t, std::vector<InstanceId>> by_level;
  for (const auto& [id, inst] : instances_) {
    if (id != root_) by_level[inst.level].push_back(id);
  }
  using Key = std::tuple<const Formula*, const Valuation*, const std::vector<BufferEntry>*,
                         const std::vector<BufferEntry>*>;
  auto less = [](const Key& a, const Key& b) {
    if (auto c = compare(*std::get<0>(a), *std::get<0>(b)); c != 0) return c < 0;
    if (*std::get<1>(a) != *std::get<1>(b)) return *std::get<1>(a) < *std::get<1>(b);
    if (*std::get<2>(a) != *std::get<2>(b)) return *std::get<2>(a) < *std::get<2>(b);
    return *std::get<3>(a) < *std::get<3>(b);
  };
  for (const auto& [level, ids] : by_level) {
    std::map<Key, InstanceId, decltype(less)> reps(less);
    std::map<InstanceId, InstanceId> rename;
    for (InstanceId id : ids) {
      const Instance& inst = instances_.at(id);
      Key key{&inst.formula, &inst.valuation, &inst.pos.buffer, &inst.neg.buffer};
      auto [it, fresh] = reps.emplace(key, id);
      if (!fresh) rename.emplace(id, it->second);
    }
    if (rename.empty()) continue;
    auto redirect = [&](const ChildRef& c) {
      auto it = rename.find(c.id);
      return it == rename.end() ? c : ChildRef{it->second, c.negated};
    };
    for (auto& [id, inst] : instances_) {
      if (inst.level <= level && id != root_) continue;
      rewrite(inst.pos, redirect);
      rewrite(inst.neg, redirect);
    }
    for (const auto& [from, to] : rename) instances_.erase(from);
  }
}

SizeReport Monitor::measure() const {
  SizeReport r;
  std::set<const SpawningAutomaton*> automata;
  for (const auto& [id, inst] : instances_) {
    ++r.instances;
    for (const Tracker* t : {&inst.pos, &inst.neg}) {
      automata.insert(t->sa);
      r.buffer_entries += t->buffer.size();
      for (const auto& b : t->buffer) {
        for (const auto& o : b.obligations) r.obligation_nodes += o.node_count();
      }
    }
  }
  for (const auto* sa : automata) r.automaton_states += sa->num_states();
  return r;
}

}  // namespace ltlfo
