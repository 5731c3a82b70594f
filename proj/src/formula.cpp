#include "ltlfo/formula.hpp"

#include <functional>
#include <sstream>
#include <unordered_set>

namespace ltlfo {

namespace {

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::size_t hash_value(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::hash<std::int64_t>{}(*i);
  return std::hash<std::string>{}(std::get<std::string>(v)) ^ 0x5bd1e995;
}

}  // namespace

// ---------------------------------------------------------------------------
// Values
// ---------------------------------------------------------------------------

std::string to_string(Kind k) { return k == Kind::Int ? "Int" : "Str"; }

std::string to_string(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  std::string out = "\"";
  for (char c : std::get<std::string>(v)) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_string(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += to_string(t[i]);
  }
  return out + ")";
}

std::string to_string(const Valuation& v) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : v) {
    if (!first) out += ", ";
    first = false;
    out += name + "=" + to_string(value);
  }
  return out + "}";
}

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << to_string(v); }

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

TermNode::TermNode(TermKind kind, std::string name, std::string sort,
                   std::vector<Term> args, Value value)
    : kind_(kind),
      name_(std::move(name)),
      sort_(std::move(sort)),
      args_(std::move(args)),
      value_(std::move(value)),
      hash_(static_cast<std::size_t>(kind_)) {
  hash_combine(hash_, std::hash<std::string>{}(name_));
  hash_combine(hash_, std::hash<std::string>{}(sort_));
  for (const auto& a : args_) hash_combine(hash_, a->hash());
  if (kind_ == TermKind::Lit) hash_combine(hash_, hash_value(value_));
}

Term mk_var(std::string name, std::string sort) {
  return std::make_shared<const TermNode>(TermKind::Var, std::move(name), std::move(sort),
                                          std::vector<Term>{}, Value{std::int64_t{0}});
}

Term mk_app(std::string fn, std::vector<Term> args, std::string result_sort) {
  return std::make_shared<const TermNode>(TermKind::App, std::move(fn), std::move(result_sort),
                                          std::move(args), Value{std::int64_t{0}});
}

Term mk_lit(Value v, std::string sort) {
  return std::make_shared<const TermNode>(TermKind::Lit, std::string{}, std::move(sort),
                                          std::vector<Term>{}, std::move(v));
}

bool equal(const Term& a, const Term& b) { return compare(a, b) == 0; }

std::strong_ordering compare(const Term& a, const Term& b) {
  if (a == b) return std::strong_ordering::equal;
  if (auto c = a->kind() <=> b->kind(); c != 0) return c;
  if (auto c = a->name() <=> b->name(); c != 0) return c;
  if (auto c = a->sort() <=> b->sort(); c != 0) return c;
  if (a->kind() == TermKind::Lit) {
    if (auto c = a->value() <=> b->value(); c != 0) return c;
  }
  if (auto c = a->args().size() <=> b->args().size(); c != 0) return c;
  for (std::size_t i = 0; i < a->args().size(); ++i) {
    if (auto c = compare(a->args()[i], b->args()[i]); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string to_string(const Term& t) {
  switch (t->kind()) {
    case TermKind::Var:
      return t->name();
    case TermKind::Lit:
      return to_string(t->value());
    case TermKind::App: {
      if (t->args().empty()) return t->name();
      std::string out = t->name() + "(";
      for (std::size_t i = 0; i < t->args().size(); ++i) {
        if (i) out += ", ";
        out += to_string(t->args()[i]);
      }
      return out + ")";
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Formulae
// ---------------------------------------------------------------------------

FormulaNode::FormulaNode(Op op, std::string name, std::vector<Term> terms,
                         std::vector<Binder> binders, Formula lhs, Formula rhs)
    : op_(op),
      name_(std::move(name)),
      terms_(std::move(terms)),
      binders_(std::move(binders)),
      lhs_(std::move(lhs)),
      rhs_(std::move(rhs)),
      hash_(static_cast<std::size_t>(op_) * 0x100000001b3ULL),
      size_(1) {
  hash_combine(hash_, std::hash<std::string>{}(name_));
  for (const auto& t : terms_) hash_combine(hash_, t->hash());
  for (const auto& b : binders_) {
    hash_combine(hash_, std::hash<std::string>{}(b.name));
    hash_combine(hash_, std::hash<std::string>{}(b.sort));
  }
  if (lhs_) {
    hash_combine(hash_, lhs_->hash());
    size_ += lhs_->size();
  }
  if (rhs_) {
    hash_combine(hash_, rhs_->hash());
    size_ += rhs_->size();
  }
}

namespace {

Formula node(Op op, std::string name = {}, std::vector<Term> terms = {},
             std::vector<Binder> binders = {}, Formula lhs = nullptr, Formula rhs = nullptr) {
  return std::make_shared<const FormulaNode>(op, std::move(name), std::move(terms),
                                             std::move(binders), std::move(lhs), std::move(rhs));
}

}  // namespace

Formula mk_true() {
  static const Formula t = node(Op::True);
  return t;
}

Formula mk_false() {
  static const Formula f = node(Op::False);
  return f;
}

Formula mk_upred(std::string name, std::vector<Term> terms) {
  return node(Op::UPred, std::move(name), std::move(terms));
}

Formula mk_ipred(std::string name, std::vector<Term> terms) {
  return node(Op::IPred, std::move(name), std::move(terms));
}

Formula mk_not(Formula f) {
  switch (f->op()) {
    case Op::Not:
      return f->lhs();
    case Op::True:
      return mk_false();
    case Op::False:
      return mk_true();
    default:
      return node(Op::Not, {}, {}, {}, std::move(f));
  }
}

Formula mk_and(Formula a, Formula b) {
  return node(Op::And, {}, {}, {}, std::move(a), std::move(b));
}

Formula mk_next(Formula f) { return node(Op::Next, {}, {}, {}, std::move(f)); }

Formula mk_until(Formula a, Formula b) {
  return node(Op::Until, {}, {}, {}, std::move(a), std::move(b));
}

Formula mk_forall(std::vector<Binder> vars, std::string upred, Formula body) {
  return node(Op::Forall, std::move(upred), {}, std::move(vars), std::move(body));
}

Formula mk_or(Formula a, Formula b) { return mk_not(mk_and(mk_not(std::move(a)), mk_not(std::move(b)))); }

Formula mk_implies(Formula a, Formula b) { return mk_or(mk_not(std::move(a)), std::move(b)); }

Formula mk_eventually(Formula f) { return mk_until(mk_true(), std::move(f)); }

Formula mk_globally(Formula f) { return mk_not(mk_eventually(mk_not(std::move(f)))); }

Formula mk_weak_until(Formula a, Formula b) {
  Formula g = mk_globally(a);
  return mk_or(mk_until(std::move(a), std::move(b)), std::move(g));
}

Formula mk_exists(std::vector<Binder> vars, std::string upred, Formula body) {
  return mk_not(mk_forall(std::move(vars), std::move(upred), mk_not(std::move(body))));
}

bool equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (a->hash() != b->hash() || a->size() != b->size()) return false;
  return compare(a, b) == 0;
}

std::strong_ordering compare(const Formula& a, const Formula& b) {
  if (a == b) return std::strong_ordering::equal;
  if (auto c = a->op() <=> b->op(); c != 0) return c;
  if (auto c = a->size() <=> b->size(); c != 0) return c;
  if (auto c = a->name() <=> b->name(); c != 0) return c;
  if (auto c = a->terms().size() <=> b->terms().size(); c != 0) return c;
  for (std::size_t i = 0; i < a->terms().size(); ++i) {
    if (auto c = compare(a->terms()[i], b->terms()[i]); c != 0) return c;
  }
  if (auto c = a->binders() <=> b->binders(); c != 0) return c;
  if (a->lhs()) {
    if (auto c = compare(a->lhs(), b->lhs()); c != 0) return c;
  }
  if (a->rhs()) {
    if (auto c = compare(a->rhs(), b->rhs()); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

namespace {

void print(const Formula& f, std::ostringstream& out) {
  switch (f->op()) {
    case Op::True:
      out << "true";
      return;
    case Op::False:
      out << "false";
      return;
    case Op::UPred:
    case Op::IPred:
      out << f->name() << '(';
      for (std::size_t i = 0; i < f->terms().size(); ++i) {
        if (i) out << ", ";
        out << to_string(f->terms()[i]);
      }
      out << ')';
      return;
    case Op::Not:
      out << '!';
      print(f->lhs(), out);
      return;
    case Op::Next:
      out << "X ";
      print(f->lhs(), out);
      return;
    case Op::And:
    case Op::Until:
      out << '(';
      print(f->lhs(), out);
      out << (f->op() == Op::And ? " && " : " U ");
      print(f->rhs(), out);
      out << ')';
      return;
    case Op::Forall: {
      out << "(forall ";
      const auto& bs = f->binders();
      if (bs.size() == 1) {
        out << bs[0].name;
      } else {
        out << '(';
        for (std::size_t i = 0; i < bs.size(); ++i) {
          if (i) out << ", ";
          out << bs[i].name;
        }
        out << ')';
      }
      out << ':' << f->name() << ". ";
      print(f->body(), out);
      out << ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream out;
  print(f, out);
  return out.str();
}

Formula positive_form(const Formula& f) {
  if (f->op() == Op::Not) return f->lhs();
  if (f->op() == Op::False) return mk_true();
  return f;
}

bool is_negative(const Formula& f) { return f->op() == Op::Not || f->op() == Op::False; }

namespace {

void collect_sub(const Formula& f, std::vector<Formula>& out,
                 std::unordered_set<Formula, FormulaHash, FormulaEq>& seen) {
  if (seen.contains(f)) return;
  if (f->op() != Op::Forall) {
    if (f->lhs()) collect_sub(f->lhs(), out, seen);
    if (f->rhs()) collect_sub(f->rhs(), out, seen);
  }
  if (seen.insert(f).second) out.push_back(f);
}

}  // namespace

std::vector<Formula> sub_forall(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash, FormulaEq> seen;
  collect_sub(f, out, seen);
  return out;
}

std::vector<Formula> closure_base(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash, FormulaEq> seen;
  for (const auto& s : sub_forall(f)) {
    Formula p = positive_form(s);
    if (seen.insert(p).second) out.push_back(p);
  }
  return out;
}

std::vector<Formula> closure(const Formula& f) {
  std::vector<Formula> out;
  for (const auto& p : closure_base(f)) {
    out.push_back(p);
    out.push_back(mk_not(p));
  }
  return out;
}

std::size_t depth(const Formula& f) {
  switch (f->op()) {
    case Op::Forall:
      return 1 + depth(f->body());
    case Op::Not:
    case Op::Next:
      return depth(f->lhs());
    case Op::And:
    case Op::Until:
      return std::max(depth(f->lhs()), depth(f->rhs()));
    default:
      return 0;
  }
}

std::set<std::string> free_variables(const Term& t) {
  std::set<std::string> out;
  if (t->kind() == TermKind::Var) {
    out.insert(t->name());
  } else {
    for (const auto& a : t->args()) out.merge(free_variables(a));
  }
  return out;
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  for (const auto& t : f->terms()) out.merge(free_variables(t));
  if (f->lhs()) out.merge(free_variables(f->lhs()));
  if (f->rhs()) out.merge(free_variables(f->rhs()));
  if (f->op() == Op::Forall) {
    for (const auto& b : f->binders()) out.erase(b.name);
  }
  return out;
}

Term substitute(const Term& t, const Valuation& v) {
  switch (t->kind()) {
    case TermKind::Var: {
      auto it = v.find(t->name());
      return it == v.end() ? t : mk_lit(it->second, t->sort());
    }
    case TermKind::Lit:
      return t;
    case TermKind::App: {
      if (t->args().empty()) return t;
      std::vector<Term> args;
      args.reserve(t->args().size());
      bool changed = false;
      for (const auto& a : t->args()) {
        args.push_back(substitute(a, v));
        changed |= args.back() != a;
      }
      return changed ? mk_app(t->name(), std::move(args), t->sort()) : t;
    }
  }
  return t;
}

Formula substitute(const Formula& f, const Valuation& v) {
  if (v.empty()) return f;
  switch (f->op()) {
    case Op::True:
    case Op::False:
      return f;
    case Op::UPred:
    case Op::IPred: {
      std::vector<Term> terms;
      terms.reserve(f->terms().size());
      bool changed = false;
      for (const auto& t : f->terms()) {
        terms.push_back(substitute(t, v));
        changed |= terms.back() != t;
      }
      if (!changed) return f;
      return f->op() == Op::UPred ? mk_upred(f->name(), std::move(terms))
                                  : mk_ipred(f->name(), std::move(terms));
    }
    case Op::Not: {
      Formula a = substitute(f->lhs(), v);
      return a == f->lhs() ? f : mk_not(a);
    }
    case Op::Next: {
      Formula a = substitute(f->lhs(), v);
      return a == f->lhs() ? f : mk_next(a);
    }
    case Op::And:
    case Op::Until: {
      Formula a = substitute(f->lhs(), v);
      Formula b = substitute(f->rhs(), v);
      if (a == f->lhs() && b == f->rhs()) return f;
      return f->op() == Op::And ? mk_and(a, b) : mk_until(a, b);
    }
    case Op::Forall: {
      Valuation inner = v;
      for (const auto& b : f->binders()) inner.erase(b.name);
      Formula body = substitute(f->body(), inner);
      return body == f->body() ? f : mk_forall(f->binders(), f->name(), body);
    }
  }
  return f;
}

}  // namespace ltlfo
