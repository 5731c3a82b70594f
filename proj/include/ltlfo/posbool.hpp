#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace ltlfo {

/// Positive Boolean formula over leaves of type L, kept in a normal form:
/// n-ary And/Or are flattened, their operands sorted and unique, and the
/// constants absorbed (true && x -> x, false && x -> false, and duals).
/// L must be totally ordered.
template <class L>
class PositiveFormula {
 public:
  enum class Kind : std::uint8_t { False, True, Leaf, And, Or };

  PositiveFormula() : kind_(Kind::True) {}

  static PositiveFormula top() { return PositiveFormula(Kind::True); }
  static PositiveFormula bottom() { return PositiveFormula(Kind::False); }
  static PositiveFormula constant(bool b) { return b ? top() : bottom(); }

  static PositiveFormula leaf(L l) {
    PositiveFormula f(Kind::Leaf);
    f.leaf_ = std::move(l);
    return f;
  }

  static PositiveFormula conj(std::vector<PositiveFormula> parts) {
    return combine(Kind::And, std::move(parts));
  }
  static PositiveFormula disj(std::vector<PositiveFormula> parts) {
    return combine(Kind::Or, std::move(parts));
  }

  Kind kind() const { return kind_; }
  bool is_true() const { return kind_ == Kind::True; }
  bool is_false() const { return kind_ == Kind::False; }
  const L& leaf_value() const { return *leaf_; }
  const std::vector<PositiveFormula>& args() const { return args_; }

  std::size_t node_count() const {
    std::size_t n = 1;
    for (const auto& a : args_) n += a.node_count();
    return n;
  }

  template <class F>
  void for_each_leaf(F&& f) const {
    if (kind_ == Kind::Leaf) f(*leaf_);
    for (const auto& a : args_) a.for_each_leaf(f);
  }

  /// Replaces leaves by f(leaf), which returns either a constant (as
  /// std::optional<bool>) or nullopt to keep the leaf. Renormalizes.
  template <class F>
  PositiveFormula resolve(F&& f) const {
    switch (kind_) {
      case Kind::True:
      case Kind::False:
        return *this;
      case Kind::Leaf: {
        std::optional<bool> r = f(*leaf_);
        return r ? constant(*r) : *this;
      }
      default: {
        std::vector<PositiveFormula> parts;
        parts.reserve(args_.size());
        for (const auto& a : args_) parts.push_back(a.resolve(f));
        return combine(kind_, std::move(parts));
      }
    }
  }

  /// Maps leaves to leaves of another (or the same) type and renormalizes.
  template <class M, class F>
  PositiveFormula<M> map(F&& f) const {
    using Out = PositiveFormula<M>;
    switch (kind_) {
      case Kind::True:
        return Out::top();
      case Kind::False:
        return Out::bottom();
      case Kind::Leaf:
        return Out::leaf(f(*leaf_));
      default: {
        std::vector<Out> parts;
        parts.reserve(args_.size());
        for (const auto& a : args_) parts.push_back(a.template map<M>(f));
        return kind_ == Kind::And ? Out::conj(std::move(parts)) : Out::disj(std::move(parts));
      }
    }
  }

  /// The De Morgan dual: And and Or swapped, constants swapped, and each
  /// leaf replaced by negate(leaf).
  template <class F>
  PositiveFormula dual(F&& negate) const {
    switch (kind_) {
      case Kind::True:
        return bottom();
      case Kind::False:
        return top();
      case Kind::Leaf:
        return leaf(negate(*leaf_));
      default: {
        std::vector<PositiveFormula> parts;
        parts.reserve(args_.size());
        for (const auto& a : args_) parts.push_back(a.dual(negate));
        return combine(kind_ == Kind::And ? Kind::Or : Kind::And, std::move(parts));
      }
    }
  }

  friend bool operator==(const PositiveFormula& a, const PositiveFormula& b) {
    return (a <=> b) == 0;
  }

  friend std::strong_ordering operator<=>(const PositiveFormula& a, const PositiveFormula& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (a.kind_ == Kind::Leaf) {
      if (*a.leaf_ < *b.leaf_) return std::strong_ordering::less;
      if (*b.leaf_ < *a.leaf_) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    if (auto c = a.args_.size() <=> b.args_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.args_.size(); ++i) {
      if (auto c = a.args_[i] <=> b.args_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  explicit PositiveFormula(Kind k) : kind_(k) {}

  static PositiveFormula combine(Kind op, std::vector<PositiveFormula> parts) {
    const Kind unit = op == Kind::And ? Kind::True : Kind::False;
    const Kind zero = op == Kind::And ? Kind::False : Kind::True;
    std::vector<PositiveFormula> flat;
    flat.reserve(parts.size());
    for (auto& p : parts) {
      if (p.kind_ == zero) return PositiveFormula(zero);
      if (p.kind_ == unit) continue;
      if (p.kind_ == op) {
        for (auto& q : p.args_) flat.push_back(std::move(q));
      } else {
        flat.push_back(std::move(p));
      }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return PositiveFormula(unit);
    if (flat.size() == 1) return std::move(flat.front());
    PositiveFormula f(op);
    f.args_ = std::move(flat);
    return f;
  }

  Kind kind_;
  std::optional<L> leaf_;
  std::vector<PositiveFormula> args_;
};

}  // namespace ltlfo
