#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ltlfo/value.hpp"

namespace ltlfo {

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

enum class TermKind : std::uint8_t { Var, App, Lit };

class TermNode;
using Term = std::shared_ptr<const TermNode>;

class TermNode {
 public:
  TermNode(TermKind kind, std::string name, std::string sort,
           std::vector<Term> args, Value value);

  TermKind kind() const { return kind_; }
  /// Variable or function name; empty for literals.
  const std::string& name() const { return name_; }
  /// Sort name of the term's value.
  const std::string& sort() const { return sort_; }
  const std::vector<Term>& args() const { return args_; }
  const Value& value() const { return value_; }
  std::size_t hash() const { return hash_; }

 private:
  TermKind kind_;
  std::string name_;
  std::string sort_;
  std::vector<Term> args_;
  Value value_;
  std::size_t hash_;
};

Term mk_var(std::string name, std::string sort);
Term mk_app(std::string fn, std::vector<Term> args, std::string result_sort);
Term mk_lit(Value v, std::string sort);

bool equal(const Term& a, const Term& b);
std::strong_ordering compare(const Term& a, const Term& b);
std::string to_string(const Term& t);

// ---------------------------------------------------------------------------
// Formulae
// ---------------------------------------------------------------------------

/// Core connectives only; sugar is expanded by the mk_* helpers below.
enum class Op : std::uint8_t {
  True,
  False,
  UPred,
  IPred,
  Not,
  And,
  Next,
  Until,
  Forall
};

struct Binder {
  std::string name;
  std::string sort;
  auto operator<=>(const Binder&) const = default;
};

class FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

class FormulaNode {
 public:
  FormulaNode(Op op, std::string name, std::vector<Term> terms,
              std::vector<Binder> binders, Formula lhs, Formula rhs);

  Op op() const { return op_; }
  /// Predicate name for atoms, the quantified U-operator for Forall.
  const std::string& name() const { return name_; }
  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<Binder>& binders() const { return binders_; }
  /// Operand of Not/Next/Forall, left operand of And/Until.
  const Formula& lhs() const { return lhs_; }
  const Formula& rhs() const { return rhs_; }
  const Formula& body() const { return lhs_; }

  std::size_t hash() const { return hash_; }
  /// Number of formula nodes (terms are not counted).
  std::size_t size() const { return size_; }

  bool is_atom() const { return op_ == Op::UPred || op_ == Op::IPred; }
  bool is_constant() const { return op_ == Op::True || op_ == Op::False; }

 private:
  Op op_;
  std::string name_;
  std::vector<Term> terms_;
  std::vector<Binder> binders_;
  Formula lhs_;
  Formula rhs_;
  std::size_t hash_;
  std::size_t size_;
};

Formula mk_true();
Formula mk_false();
Formula mk_upred(std::string name, std::vector<Term> terms);
Formula mk_ipred(std::string name, std::vector<Term> terms);
/// Negation with eager normalization: !!a == a, !true == false, !false == true.
Formula mk_not(Formula f);
Formula mk_and(Formula a, Formula b);
Formula mk_next(Formula f);
Formula mk_until(Formula a, Formula b);
Formula mk_forall(std::vector<Binder> vars, std::string upred, Formula body);

// Sugar.
Formula mk_or(Formula a, Formula b);
Formula mk_implies(Formula a, Formula b);
Formula mk_eventually(Formula f);
Formula mk_globally(Formula f);
Formula mk_weak_until(Formula a, Formula b);
Formula mk_exists(std::vector<Binder> vars, std::string upred, Formula body);

bool equal(const Formula& a, const Formula& b);
std::strong_ordering compare(const Formula& a, const Formula& b);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f->hash(); }
};
struct FormulaEq {
  bool operator()(const Formula& a, const Formula& b) const { return equal(a, b); }
};
struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const { return compare(a, b) < 0; }
};

/// Prints in the concrete syntax accepted by parse_formula. Binary operators
/// and quantifiers are fully parenthesized.
std::string to_string(const Formula& f);

/// The formula with one outer negation removed (false becomes true).
Formula positive_form(const Formula& f);
/// True for Not nodes and for false (the normal form of !true).
bool is_negative(const Formula& f);

/// Subformulae, not descending below quantifiers, in post-order of first
/// occurrence (operands before the formula that contains them).
std::vector<Formula> sub_forall(const Formula& f);

/// sub_forall closed under single negation: each positive element is
/// followed by its negation.
std::vector<Formula> closure(const Formula& f);

/// The positive representatives of closure(f), in canonical order.
std::vector<Formula> closure_base(const Formula& f);

/// Quantifier nesting depth.
std::size_t depth(const Formula& f);

std::set<std::string> free_variables(const Formula& f);
std::set<std::string> free_variables(const Term& t);

/// Replaces free occurrences of the valuation's variables by literals.
Formula substitute(const Formula& f, const Valuation& v);
Term substitute(const Term& t, const Valuation& v);

}  // namespace ltlfo
