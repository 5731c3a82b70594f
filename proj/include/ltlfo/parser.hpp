#pragma once

#include <filesystem>
#include <string_view>

#include "ltlfo/formula.hpp"
#include "ltlfo/signature.hpp"

namespace ltlfo {

/// A parsed spec file: declarations plus the policy sentence.
struct Spec {
  Signature signature;
  Formula policy;
};

/// Parses the declarations header and the policy. Sugar is desugared and
/// bound variables are renamed apart. Throws SyntaxError, SortError, or
/// FreeVariableError.
Spec parse_spec(std::string_view text);

Spec load_spec(const std::filesystem::path& path);

/// Parses a closed formula over an existing signature.
Formula parse_formula(std::string_view text, const Signature& sig);

}  // namespace ltlfo
