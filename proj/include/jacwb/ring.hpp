#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jacwb/error.hpp"
#include "jacwb/field.hpp"
#include "jacwb/monomial.hpp"

namespace jacwb {

/// k[X_1..X_m] with a fixed term order. Shared immutably via RingPtr.
class PolyRing {
 public:
  PolyRing(CoeffField field, std::vector<std::string> variables, MonomialOrder order = MonomialOrder::degrevlex())
      : field_(field), variables_(std::move(variables)), order_(order) {
    if (variables_.size() > kMaxVariables)
      throw PreconditionFailed("at most " + std::to_string(kMaxVariables) + " variables are supported");
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (!is_identifier(variables_[i])) throw PreconditionFailed("invalid variable name '" + variables_[i] + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (variables_[i] == variables_[j]) throw PreconditionFailed("duplicate variable '" + variables_[i] + "'");
    }
  }

  const CoeffField& field() const { return field_; }
  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t arity() const { return variables_.size(); }
  const MonomialOrder& order() const { return order_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it == variables_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - variables_.begin());
  }

  Monomial one() const { return Monomial(arity()); }

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.field_ == b.field_ && a.order_ == b.order_ && a.variables_ == b.variables_;
  }

  std::string describe() const {
    std::string out = "field " + field_.name() + "; vars";
    for (const auto& v : variables_) out += " " + v;
    out += "; order " + order_.name();
    return out;
  }

  static bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    if (!alpha(s[0])) return false;
    return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
  }

 private:
  CoeffField field_;
  std::vector<std::string> variables_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline RingPtr make_ring(CoeffField field, std::vector<std::string> variables,
                         MonomialOrder order = MonomialOrder::degrevlex()) {
  return std::make_shared<const PolyRing>(field, std::move(variables), order);
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

inline RingPtr with_order(const RingPtr& ring, MonomialOrder order) {
  if (ring->order() == order) return ring;
  return make_ring(ring->field(), ring->variables(), order);
}

/// Picks a name not among `taken`, starting from `base`.
inline std::string fresh_name(const std::vector<std::string>& taken, const std::string& base) {
  auto clash = [&](const std::string& s) { return std::find(taken.begin(), taken.end(), s) != taken.end(); };
  if (!clash(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!clash(candidate)) return candidate;
  }
}

}  // namespace jacwb
