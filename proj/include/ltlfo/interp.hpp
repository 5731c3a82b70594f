#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ltlfo/formula.hpp"
#include "ltlfo/signature.hpp"
#include "ltlfo/value.hpp"

namespace ltlfo {

/// One rigid builtin: a total function or relation over a fixed kind
/// signature. Some ids (eq, neq) are registered once per kind signature.
struct BuiltinPredicate {
  std::string id;
  std::vector<Kind> args;
  std::function<bool(std::span<const Value>)> fn;
};

struct BuiltinFunction {
  std::string id;
  std::vector<Kind> args;
  Kind result;
  std::function<Value(std::span<const Value>)> fn;
};

/// Registry of builtin interpretations, looked up by id and argument kinds.
class Builtins {
 public:
  /// The default catalogue: eq, neq, lt, leq, geq, gt on Int; eq, neq on
  /// Str; add, sub, mul on Int.
  static const Builtins& standard();

  void add(BuiltinPredicate p);
  void add(BuiltinFunction f);

  const BuiltinPredicate* predicate(const std::string& id, std::span<const Kind> args) const;
  const BuiltinFunction* function(const std::string& id, std::span<const Kind> args) const;
  bool has_predicate(const std::string& id) const;
  bool has_function(const std::string& id) const;

 private:
  std::vector<BuiltinPredicate> predicates_;
  std::vector<BuiltinFunction> functions_;
};

/// Checks that every builtin-backed symbol of the signature resolves to a
/// registered interpretation of matching arity. Throws SortError.
void check_builtins(const Signature& sig, const Builtins& builtins = Builtins::standard());

/// The first-order structure of one step: rigid builtins plus that step's
/// extensional relations. Cheap to construct; holds references only.
class Structure {
 public:
  Structure(const Signature& sig, const EnvMap& env,
            const Builtins& builtins = Builtins::standard())
      : sig_(&sig), env_(&env), builtins_(&builtins) {}

  const Signature& signature() const { return *sig_; }
  const EnvMap& env() const { return *env_; }
  const Builtins& builtins() const { return *builtins_; }

 private:
  const Signature* sig_;
  const EnvMap* env_;
  const Builtins* builtins_;
};

Value eval_term(const Term& t, const Structure& s, const Valuation& v);

bool eval_ipred(const std::string& name, std::span<const Value> args, const Structure& s);

/// Evaluates all terms of an atom under the valuation.
Tuple eval_terms(const std::vector<Term>& terms, const Structure& s, const Valuation& v);

}  // namespace ltlfo
