#pragma once

#include <cstddef>

#include "ltlfo/formula.hpp"
#include "ltlfo/interp.hpp"
#include "ltlfo/monitor.hpp"
#include "ltlfo/signature.hpp"
#include "ltlfo/trace.hpp"

namespace ltlfo {

/// One-step progression of f through an event. Atoms are decided against
/// the event under v and the residual is closed: quantifier instances are
/// substituted into it. Simplification is limited to constant absorption
/// and double negation, so equal conjuncts are not merged.
Formula progress(const Formula& f, const Event& e, const Structure& s, const Valuation& v = {});

/// Rewriting monitor: the verdict is TOP or BOTTOM once the residual
/// reduces to true or false.
class ProgressionMonitor {
 public:
  ProgressionMonitor(const Signature& sig, Formula f);

  Verdict step(const Event& e);
  Verdict verdict() const { return verdict_; }
  const Formula& current() const { return current_; }
  /// Node count of the residual.
  std::size_t size() const { return current_->size(); }
  std::size_t steps() const { return steps_; }

 private:
  const Signature* sig_;
  Formula current_;
  Verdict verdict_ = Verdict::Unknown;
  std::size_t steps_ = 0;
};

}  // namespace ltlfo
