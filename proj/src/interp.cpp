#include "ltlfo/interp.hpp"

#include <algorithm>

#include "ltlfo/errors.hpp"

namespace ltlfo {

namespace {

std::int64_t as_int(const Value& v) { return std::get<std::int64_t>(v); }

std::string kinds_to_string(std::span<const Kind> ks) {
  std::string out = "(";
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i) out += ", ";
    out += to_string(ks[i]);
  }
  return out + ")";
}

Builtins make_standard() {
  Builtins b;
  const std::vector<Kind> ii = {Kind::Int, Kind::Int};
  const std::vector<Kind> ss = {Kind::Str, Kind::Str};
  auto eq = [](std::span<const Value> a) { return a[0] == a[1]; };
  auto neq = [](std::span<const Value> a) { return a[0] != a[1]; };
  b.add(BuiltinPredicate{"eq", ii, eq});
  b.add(BuiltinPredicate{"eq", ss, eq});
  b.add(BuiltinPredicate{"neq", ii, neq});
  b.add(BuiltinPredicate{"neq", ss, neq});
  b.add(BuiltinPredicate{"lt", ii, [](auto a) { return as_int(a[0]) < as_int(a[1]); }});
  b.add(BuiltinPredicate{"leq", ii, [](auto a) { return as_int(a[0]) <= as_int(a[1]); }});
  b.add(BuiltinPredicate{"geq", ii, [](auto a) { return as_int(a[0]) >= as_int(a[1]); }});
  b.add(BuiltinPredicate{"gt", ii, [](auto a) { return as_int(a[0]) > as_int(a[1]); }});
  // Wrapping arithmetic keeps the functions total.
  auto wrap = [](auto op) {
    return [op](std::span<const Value> a) -> Value {
      auto x = static_cast<std::uint64_t>(as_int(a[0]));
      auto y = static_cast<std::uint64_t>(as_int(a[1]));
      return static_cast<std::int64_t>(op(x, y));
    };
  };
  b.add(BuiltinFunction{"add", ii, Kind::Int, wrap(std::plus<>{})});
  b.add(BuiltinFunction{"sub", ii, Kind::Int, wrap(std::minus<>{})});
  b.add(BuiltinFunction{"mul", ii, Kind::Int, wrap(std::multiplies<>{})});
  return b;
}

}  // namespace

const Builtins& Builtins::standard() {
  static const Builtins b = make_standard();
  return b;
}

void Builtins::add(BuiltinPredicate p) { predicates_.push_back(std::move(p)); }
void Builtins::add(BuiltinFunction f) { functions_.push_back(std::move(f)); }

const BuiltinPredicate* Builtins::predicate(const std::string& id,
                                            std::span<const Kind> args) const {
  for (const auto& p : predicates_) {
    if (p.id == id && std::ranges::equal(p.args, args)) return &p;
  }
  return nullptr;
}

const BuiltinFunction* Builtins::function(const std::string& id,
                                          std::span<const Kind> args) const {
  for (const auto& f : functions_) {
    if (f.id == id && std::ranges::equal(f.args, args)) return &f;
  }
  return nullptr;
}

bool Builtins::has_predicate(const std::string& id) const {
  return std::ranges::any_of(predicates_, [&](const auto& p) { return p.id == id; });
}

bool Builtins::has_function(const std::string& id) const {
  return std::ranges::any_of(functions_, [&](const auto& f) { return f.id == id; });
}

void check_builtins(const Signature& sig, const Builtins& builtins) {
  auto kinds = [&](const std::vector<std::string>& sorts) {
    std::vector<Kind> out;
    for (const auto& s : sorts) out.push_back(sig.kind(s));
    return out;
  };
  for (const auto& [name, f] : sig.functions()) {
    if (f.builtin.empty()) continue;
    auto ks = kinds(f.arg_sorts);
    const auto* b = builtins.function(f.builtin, ks);
    if (!b) {
      throw SortError("function " + name, "builtin '" + f.builtin + "' over " + kinds_to_string(ks),
                      builtins.has_function(f.builtin) ? "different arity" : "unknown builtin");
    }
    if (b->result != sig.kind(f.result_sort)) {
      throw SortError("function " + name, to_string(b->result), f.result_sort);
    }
  }
  for (const auto& [name, p] : sig.ipreds()) {
    if (p.builtin.empty()) continue;
    auto ks = kinds(p.arg_sorts);
    if (!builtins.predicate(p.builtin, ks)) {
      throw SortError("ipred " + name, "builtin '" + p.builtin + "' over " + kinds_to_string(ks),
                      builtins.has_predicate(p.builtin) ? "different arity" : "unknown builtin");
    }
  }
}

Value eval_term(const Term& t, const Structure& s, const Valuation& v) {
  switch (t->kind()) {
    case TermKind::Var: {
      auto it = v.find(t->name());
      if (it == v.end()) throw UnboundVariable(t->name());
      return it->second;
    }
    case TermKind::Lit:
      return t->value();
    case TermKind::App: {
      const FunctionDecl* decl = s.signature().function(t->name());
      if (!decl) throw BuiltinFailure(t->name(), "undeclared function");
      if (decl->constant) return *decl->constant;
      Tuple args = eval_terms(t->args(), s, v);
      std::vector<Kind> ks;
      for (const auto& a : args) ks.push_back(kind_of(a));
      const BuiltinFunction* fn = s.builtins().function(decl->builtin, ks);
      if (!fn) throw BuiltinFailure(decl->builtin, to_string(args));
      return fn->fn(args);
    }
  }
  throw BuiltinFailure(t->name(), "malformed term");
}

Tuple eval_terms(const std::vector<Term>& terms, const Structure& s, const Valuation& v) {
  Tuple out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(eval_term(t, s, v));
  return out;
}

bool eval_ipred(const std::string& name, std::span<const Value> args, const Structure& s) {
  const IPredDecl* decl = s.signature().ipred(name);
  if (!decl) throw BuiltinFailure(name, "undeclared ipred");
  if (decl->extensional()) {
    auto it = s.env().find(decl->env_set);
    if (it == s.env().end()) throw MissingEnv(decl->env_set);
    return it->second.contains(Tuple(args.begin(), args.end()));
  }
  std::vector<Kind> ks;
  for (const auto& a : args) ks.push_back(kind_of(a));
  const BuiltinPredicate* p = s.builtins().predicate(decl->builtin, ks);
  if (!p) throw BuiltinFailure(decl->builtin, to_string(Tuple(args.begin(), args.end())));
  return p->fn(args);
}

}  // namespace ltlfo
