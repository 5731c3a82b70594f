#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace ltlfo {

/// Carrier kinds of the built-in sorts.
enum class Kind : std::uint8_t { Int, Str };

/// A domain element: a signed 64-bit integer or a string.
using Value = std::variant<std::int64_t, std::string>;
using Tuple = std::vector<Value>;

inline Kind kind_of(const Value& v) {
  return std::holds_alternative<std::int64_t>(v) ? Kind::Int : Kind::Str;
}

std::string to_string(Kind k);
std::string to_string(const Value& v);
std::string to_string(const Tuple& t);

std::ostream& operator<<(std::ostream& os, const Value& v);

/// Flat variable assignment. Quantifiers bind distinct names, so no scoping
/// is needed here.
using Valuation = std::map<std::string, Value>;

std::string to_string(const Valuation& v);

/// Extensional relations of one step, keyed by environment name.
using EnvMap = std::map<std::string, std::set<Tuple>>;

}  // namespace ltlfo
