#include "ltlfo/semantics.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

#include "ltlfo/errors.hpp"
#include "ltlfo/interp.hpp"

namespace ltlfo {

namespace {

class Evaluator {
 public:
  Evaluator(const Trace& trace, const Signature& sig) : trace_(trace), sig_(sig) {}

  bool eval(const Formula& f, const Valuation& v, std::size_t i) {
    switch (f->op()) {
      case Op::True:
        return true;
      case Op::False:
        return false;
      case Op::Not:
        return !eval(f->lhs(), v, i);
      case Op::And:
        return eval(f->lhs(), v, i) && eval(f->rhs(), v, i);
      default:
        break;
    }
    Key key{f.get(), i, v};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = compute(f, v, i);
    memo_.emplace(std::move(key), r);
    return r;
  }

 private:
  using Key = std::tuple<const FormulaNode*, std::size_t, Valuation>;

  bool compute(const Formula& f, const Valuation& v, std::size_t i) {
    const Event& ev = trace_[i];
    Structure s(sig_, ev.env);
    switch (f->op()) {
      case Op::UPred:
        return ev.actions.contains(Action{f->name(), eval_terms(f->terms(), s, v)});
      case Op::IPred:
        return eval_ipred(f->name(), eval_terms(f->terms(), s, v), s);
      case Op::Next:
        return i + 1 < trace_.size() && eval(f->lhs(), v, i + 1);
      case Op::Until:
        for (std::size_t k = i; k < trace_.size(); ++k) {
          if (eval(f->rhs(), v, k)) return true;
          if (!eval(f->lhs(), v, k)) return false;
        }
        return false;
      case Op::Forall:
        for (const auto& a : ev.actions) {
          if (a.pred != f->name()) continue;
          Valuation inner = v;
          for (std::size_t k = 0; k < f->binders().size(); ++k) {
            inner[f->binders()[k].name] = a.values[k];
          }
          if (!eval(f->body(), inner, i)) return false;
        }
        return true;
      default:
        throw std::logic_error("unreachable formula kind");
    }
  }

  const Trace& trace_;
  const Signature& sig_;
  std::map<Key, bool> memo_;
};

}  // namespace

bool eval_trace(const Formula& f, const Trace& trace, const Signature& sig, const Valuation& v,
                std::size_t i) {
  if (i >= trace.size()) throw std::out_of_range("eval_trace: position beyond the trace");
  return Evaluator(trace, sig).eval(f, v, i);
}

bool word_problem(const Formula& f, const Trace& trace, const Signature& sig) {
  if (trace.empty()) throw std::invalid_argument("word_problem: empty trace");
  return eval_trace(f, trace, sig, {}, 0);
}

}  // namespace ltlfo
