#include "ltlfo/signature.hpp"

#include "ltlfo/errors.hpp"

namespace ltlfo {

SyntaxError::SyntaxError(std::size_t line, std::size_t col, const std::string& msg)
    : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
      line_(line),
      col_(col) {}

SortError::SortError(std::string site, std::string expected, std::string found)
    : Error("sort error in " + site + ": expected " + expected + ", found " + found),
      site_(std::move(site)),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

FreeVariableError::FreeVariableError(std::string name)
    : Error("free variable '" + name + "': policies must be sentences"), name_(std::move(name)) {}

namespace {

template <class Map>
const typename Map::mapped_type* find_in(const Map& m, const std::string& name) {
  auto it = m.find(name);
  return it == m.end() ? nullptr : &it->second;
}

}  // namespace

void Signature::add_sort(Sort s) {
  if (sorts_.contains(s.name)) throw Error("duplicate sort '" + s.name + "'");
  sorts_.emplace(s.name, s);
}

void Signature::add_function(FunctionDecl f) {
  if (declared(f.name)) throw Error("duplicate symbol '" + f.name + "'");
  functions_.emplace(f.name, std::move(f));
}

void Signature::add_upred(UPredDecl p) {
  if (declared(p.name)) throw Error("duplicate symbol '" + p.name + "'");
  upreds_.emplace(p.name, std::move(p));
}

void Signature::add_ipred(IPredDecl p) {
  if (declared(p.name)) throw Error("duplicate symbol '" + p.name + "'");
  if (p.builtin.empty() == p.env_set.empty()) {
    throw Error("ipred '" + p.name + "' needs exactly one of builtin or env_set");
  }
  ipreds_.emplace(p.name, std::move(p));
}

const Sort* Signature::sort(const std::string& name) const { return find_in(sorts_, name); }
const FunctionDecl* Signature::function(const std::string& name) const {
  return find_in(functions_, name);
}
const UPredDecl* Signature::upred(const std::string& name) const { return find_in(upreds_, name); }
const IPredDecl* Signature::ipred(const std::string& name) const { return find_in(ipreds_, name); }

Kind Signature::kind(const std::string& sort_name) const {
  const Sort* s = sort(sort_name);
  if (!s) throw SortError("sort reference", "declared sort", sort_name);
  return s->kind;
}

bool Signature::declared(const std::string& name) const {
  return functions_.contains(name) || upreds_.contains(name) || ipreds_.contains(name);
}

const IPredDecl* Signature::ipred_for_env(const std::string& env_name) const {
  for (const auto& [_, p] : ipreds_) {
    if (p.extensional() && p.env_set == env_name) return &p;
  }
  return nullptr;
}

}  // namespace ltlfo
