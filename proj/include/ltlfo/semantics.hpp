#pragma once

#include <cstddef>

#include "ltlfo/formula.hpp"
#include "ltlfo/signature.hpp"
#include "ltlfo/trace.hpp"

namespace ltlfo {

/// Finite-trace truth of f at position i under valuation v. X needs a
/// successor position; the witness of U must lie in [i, |trace| - 1].
/// Requires 0 <= i < trace.size().
bool eval_trace(const Formula& f, const Trace& trace, const Signature& sig, const Valuation& v,
                std::size_t i);

/// Does the (non-empty) trace satisfy the sentence?
bool word_problem(const Formula& f, const Trace& trace, const Signature& sig);

}  // namespace ltlfo
