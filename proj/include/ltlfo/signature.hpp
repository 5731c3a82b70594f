#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ltlfo/value.hpp"

namespace ltlfo {

struct Sort {
  std::string name;
  Kind kind = Kind::Int;
};

struct FunctionDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
  std::string result_sort;
  /// Builtin id for functions; empty for constants.
  std::string builtin;
  /// Value of a declared constant (0-ary function without builtin).
  std::optional<Value> constant;
};

struct UPredDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
};

struct IPredDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
  /// Exactly one of these is non-empty.
  std::string builtin;
  std::string env_set;

  bool extensional() const { return builtin.empty(); }
};

/// A sorted signature: sorts, function symbols, and the disjoint predicate
/// sets of U-operators (interpreted by the trace) and I-operators.
class Signature {
 public:
  void add_sort(Sort s);
  void add_function(FunctionDecl f);
  void add_upred(UPredDecl p);
  void add_ipred(IPredDecl p);

  const Sort* sort(const std::string& name) const;
  const FunctionDecl* function(const std::string& name) const;
  const UPredDecl* upred(const std::string& name) const;
  const IPredDecl* ipred(const std::string& name) const;

  /// Kind of a declared sort; throws SortError for unknown sorts.
  Kind kind(const std::string& sort_name) const;

  /// True if a symbol of any category already uses this name.
  bool declared(const std::string& name) const;

  const std::map<std::string, Sort>& sorts() const { return sorts_; }
  const std::map<std::string, FunctionDecl>& functions() const { return functions_; }
  const std::map<std::string, UPredDecl>& upreds() const { return upreds_; }
  const std::map<std::string, IPredDecl>& ipreds() const { return ipreds_; }

  /// Extensional I-operator whose relation is read from the named env set.
  const IPredDecl* ipred_for_env(const std::string& env_name) const;

 private:
  std::map<std::string, Sort> sorts_;
  std::map<std::string, FunctionDecl> functions_;
  std::map<std::string, UPredDecl> upreds_;
  std::map<std::string, IPredDecl> ipreds_;
};

}  // namespace ltlfo
