#include "ltlfo/progression.hpp"

#include <stdexcept>
#include <vector>

namespace ltlfo {

namespace {

Formula conj(const Formula& a, const Formula& b) {
  if (a->op() == Op::False || b->op() == Op::False) return mk_false();
  if (a->op() == Op::True) return b;
  if (b->op() == Op::True) return a;
  return mk_and(a, b);
}

Formula disj(const Formula& a, const Formula& b) {
  if (a->op() == Op::True || b->op() == Op::True) return mk_true();
  if (a->op() == Op::False) return b;
  if (b->op() == Op::False) return a;
  return mk_or(a, b);
}

}  // namespace

Formula progress(const Formula& f, const Event& e, const Structure& s, const Valuation& v) {
  switch (f->op()) {
    case Op::True:
    case Op::False:
      return f;
    case Op::UPred: {
      const bool holds = e.actions.contains(Action{f->name(), eval_terms(f->terms(), s, v)});
      return holds ? mk_true() : mk_false();
    }
    case Op::IPred:
      return eval_ipred(f->name(), eval_terms(f->terms(), s, v), s) ? mk_true() : mk_false();
    case Op::Not:
      return mk_not(progress(f->lhs(), e, s, v));
    case Op::And: {
      Formula a = progress(f->lhs(), e, s, v);
      if (a->op() == Op::False) return a;
      return conj(a, progress(f->rhs(), e, s, v));
    }
    case Op::Next:
      return substitute(f->lhs(), v);
    case Op::Until: {
      Formula now = progress(f->rhs(), e, s, v);
      if (now->op() == Op::True) return now;
      return disj(now, conj(progress(f->lhs(), e, s, v), substitute(f, v)));
    }
    case Op::Forall: {
      Formula out = mk_true();
      for (const auto& a : e.actions) {
        if (a.pred != f->name()) continue;
        Valuation inner = v;
        for (std::size_t i = 0; i < f->binders().size(); ++i) {
          inner[f->binders()[i].name] = a.values[i];
        }
        out = conj(out, progress(f->body(), e, s, inner));
        if (out->op() == Op::False) break;
      }
      return out;
    }
  }
  throw std::logic_error("unreachable formula kind");
}

ProgressionMonitor::ProgressionMonitor(const Signature& sig, Formula f)
    : sig_(&sig), current_(std::move(f)) {}

Verdict ProgressionMonitor::step(const Event& e) {
  ++steps_;
  if (verdict_ != Verdict::Unknown) return verdict_;
  current_ = progress(current_, e, Structure(*sig_, e.env));
  if (current_->op() == Op::True) verdict_ = Verdict::Top;
  if (current_->op() == Op::False) verdict_ = Verdict::Bottom;
  return verdict_;
}

}  // namespace ltlfo
