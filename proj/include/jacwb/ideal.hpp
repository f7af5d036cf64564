#pragma once

#include <bit>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jacwb/groebner.hpp"

namespace jacwb {

/// Exact quotient f / g; throws when g does not divide f.
inline Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw std::domain_error("division by the zero polynomial");
  const auto& ring = g.ring();
  const auto& field = ring->field();
  Polynomial rest = f, quotient = Polynomial::zero(ring);
  while (!rest.is_zero()) {
    if (!g.leading_monomial().divides(rest.leading_monomial())) throw Error("polynomial division is not exact");
    Polynomial t = Polynomial::monomial(ring, rest.leading_monomial() / g.leading_monomial(),
                                        field.div(rest.leading_coeff(), g.leading_coeff()));
    quotient += t;
    rest -= t * g;
  }
  return quotient;
}

/// Ideal of a polynomial ring with a lazily computed, shared Groebner basis.
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Polynomial> generators) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
    for (auto& g : generators) {
      if (g.is_zero()) continue;
      if (!same_ring(g.ring(), ring_)) throw RingMismatch();
      gens_.push_back(g.rebase(ring_));
    }
  }

  static Ideal zero(const RingPtr& ring) { return Ideal(ring, {}); }
  static Ideal unit(const RingPtr& ring) { return Ideal(ring, {Polynomial::constant(ring, 1)}); }
  static Ideal variables(const RingPtr& ring, std::uint32_t mask) {
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < ring->arity(); ++i)
      if (mask & (1u << i)) gens.push_back(Polynomial::variable(ring, i));
    return Ideal(ring, std::move(gens));
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }

  const GroebnerBasis& groebner() const {
    std::call_once(cache_->once, [&] { cache_->basis = buchberger(ring_, gens_); });
    return cache_->basis;
  }

  bool is_unit() const {
    for (const auto& g : gens_)
      if (g.is_unit()) return true;
    return groebner().is_unit();
  }

  bool contains(const Polynomial& f) const {
    if (f.is_zero()) return true;
    if (!same_ring(f.ring(), ring_)) throw RingMismatch();
    return groebner().contains(f);
  }

  /// J ⊆ this.
  bool contains(const Ideal& J) const {
    for (const auto& g : J.gens_)
      if (!contains(g)) return false;
    return true;
  }

  bool equals(const Ideal& J) const { return contains(J) && J.contains(*this); }

  /// Monic reduced Groebner basis, the canonical generating set.
  const std::vector<Polynomial>& canonical_generators() const { return groebner().elements(); }

  std::string to_string() const { return list_string(gens_); }
  std::string canonical_string() const { return list_string(canonical_generators()); }

  static std::string list_string(std::span<const Polynomial> gens) {
    if (gens.empty()) return "(0)";
    std::string out = "(";
    for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? ", " : "") + gens[i].to_string();
    return out + ")";
  }

  /// Bit i set iff some generator mentions X_i.
  std::uint32_t support() const {
    std::uint32_t mask = 0;
    for (const auto& g : gens_) mask |= g.support();
    return mask;
  }

  bool is_monomial() const {
    for (const auto& g : gens_)
      if (!g.is_monomial()) return false;
    return true;
  }

 private:
  struct Cache {
    std::once_flag once;
    GroebnerBasis basis;
  };

  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

inline void require_same_ring(const Ideal& a, const Ideal& b) {
  if (!same_ring(a.ring(), b.ring())) throw RingMismatch();
}

inline bool ideal_membership(const Polynomial& f, const Ideal& I) { return I.contains(f); }

namespace detail {

/// Ring with `count` fresh variables prepended, in a block order whose
/// first block consists of exactly those variables.
inline RingPtr prepend_variables(const RingPtr& ring, std::size_t count, const std::string& base) {
  std::vector<std::string> vars;
  std::vector<std::string> taken = ring->variables();
  for (std::size_t i = 0; i < count; ++i) {
    std::string name = fresh_name(taken, count == 1 ? base : base + std::to_string(i));
    taken.push_back(name);
    vars.push_back(name);
  }
  vars.insert(vars.end(), ring->variables().begin(), ring->variables().end());
  if (vars.size() > kMaxVariables)
    throw PreconditionFailed("auxiliary variable would exceed the " + std::to_string(kMaxVariables) + "-variable limit");
  return make_ring(ring->field(), vars, MonomialOrder::block(count));
}

inline std::vector<std::size_t> shift_map(std::size_t arity, std::size_t by) {
  std::vector<std::size_t> map(arity);
  for (std::size_t i = 0; i < arity; ++i) map[i] = i + by;
  return map;
}

/// Inverse of shift_map for polynomials that do not involve the first `by` variables.
inline Polynomial drop_leading_variables(const Polynomial& f, const RingPtr& target, std::size_t by) {
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    Monomial m(target->arity());
    for (std::size_t v = 0; v < target->arity(); ++v) m.set(v, t.mono[v + by]);
    terms.push_back({m, t.coeff});
  }
  return Polynomial::from_terms(target, std::move(terms));
}

}  // namespace detail

/// f ∈ √I, decided by 1 ∈ I + (1 − T·f) with T in a dominant block.
inline bool radical_membership(const Polynomial& f, const Ideal& I) {
  if (f.is_zero() || I.is_unit()) return true;
  if (f.is_constant()) return false;
  if (I.contains(f)) return true;
  const auto& ring = I.ring();
  RingPtr big = detail::prepend_variables(ring, 1, "T");
  auto map = detail::shift_map(ring->arity(), 1);
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(g.remap(big, map));
  Polynomial T = Polynomial::variable(big, 0);
  gens.push_back(Polynomial::constant(big, 1) - T * f.remap(big, map));
  return buchberger(big, gens).is_unit();
}

inline Ideal sum(const Ideal& I, const Ideal& J) {
  require_same_ring(I, J);
  auto gens = I.generators();
  gens.insert(gens.end(), J.generators().begin(), J.generators().end());
  return Ideal(I.ring(), gens);
}

inline Ideal sum(const Ideal& I, std::span<const Polynomial> extra) {
  auto gens = I.generators();
  gens.insert(gens.end(), extra.begin(), extra.end());
  return Ideal(I.ring(), gens);
}

inline Ideal product(const Ideal& I, const Ideal& J) {
  require_same_ring(I, J);
  std::vector<Polynomial> gens;
  for (const auto& a : I.generators())
    for (const auto& b : J.generators()) gens.push_back(a * b);
  return Ideal(I.ring(), gens);
}

inline Ideal power(const Ideal& I, unsigned e) {
  Ideal out = Ideal::unit(I.ring());
  for (unsigned k = 0; k < e; ++k) out = product(out, I);
  return out;
}

/// Eliminates the variables in `mask`: returns I ∩ k[remaining variables],
/// expressed in the original ring.
inline Ideal eliminate(const Ideal& I, std::uint32_t mask) {
  const auto& ring = I.ring();
  const std::size_t m = ring->arity();
  std::vector<std::size_t> perm(m);  // original index -> position in elimination ring
  std::vector<std::string> vars;
  std::size_t count = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (mask & (1u << i)) {
      perm[i] = vars.size();
      vars.push_back(ring->variables()[i]);
      ++count;
    }
  for (std::size_t i = 0; i < m; ++i)
    if (!(mask & (1u << i))) {
      perm[i] = vars.size();
      vars.push_back(ring->variables()[i]);
    }
  if (count == 0) return I;
  RingPtr elim = make_ring(ring->field(), vars, MonomialOrder::block(count));
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(g.remap(elim, perm));
  std::vector<std::size_t> back(m);
  for (std::size_t i = 0; i < m; ++i) back[perm[i]] = i;
  std::vector<Polynomial> kept;
  GroebnerBasis gb = buchberger(elim, gens);
  for (const auto& g : gb.elements()) {
    std::uint32_t elim_support = g.support() & ((1u << count) - 1);
    if (elim_support == 0) kept.push_back(g.remap(ring, back));
  }
  return Ideal(ring, kept);
}

inline Ideal eliminate(const Ideal& I, std::span<const std::string> names) {
  std::uint32_t mask = 0;
  for (const auto& n : names) {
    auto i = I.ring()->index_of(n);
    if (!i) throw PreconditionFailed("unknown variable '" + n + "'");
    mask |= 1u << *i;
  }
  return eliminate(I, mask);
}

/// I ∩ J via t·I + (1 − t)·J, eliminating t.
inline Ideal intersect(const Ideal& I, const Ideal& J) {
  require_same_ring(I, J);
  const auto& ring = I.ring();
  if (I.is_zero() || J.is_zero()) return Ideal::zero(ring);
  if (I.is_unit()) return J;
  if (J.is_unit()) return I;
  RingPtr big = detail::prepend_variables(ring, 1, "t");
  auto map = detail::shift_map(ring->arity(), 1);
  Polynomial t = Polynomial::variable(big, 0);
  Polynomial one_minus_t = Polynomial::constant(big, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(t * g.remap(big, map));
  for (const auto& g : J.generators()) gens.push_back(one_minus_t * g.remap(big, map));
  std::vector<Polynomial> kept;
  GroebnerBasis gb = buchberger(big, gens);
  for (const auto& g : gb.elements())
    if (g.degree_in(0) <= 0) kept.push_back(detail::drop_leading_variables(g, ring, 1));
  return Ideal(ring, kept);
}

inline Ideal intersect(std::span<const Ideal> ideals) {
  if (ideals.empty()) throw PreconditionFailed("intersection of an empty family");
  Ideal out = ideals.front();
  for (std::size_t i = 1; i < ideals.size(); ++i) out = intersect(out, ideals[i]);
  return out;
}

/// I : g.
inline Ideal quotient(const Ideal& I, const Polynomial& g) {
  const auto& ring = I.ring();
  if (g.is_zero() || I.contains(g)) return Ideal::unit(ring);
  Ideal both = intersect(I, Ideal(ring, {g}));
  std::vector<Polynomial> gens;
  for (const auto& h : both.generators()) gens.push_back(exact_divide(h, g));
  return Ideal(ring, gens);
}

/// I : J = ∩ over generators g of J of (I : g).
inline Ideal quotient(const Ideal& I, const Ideal& J) {
  require_same_ring(I, J);
  Ideal out = Ideal::unit(I.ring());
  for (const auto& g : J.generators()) out = intersect(out, quotient(I, g));
  return out;
}

inline constexpr int kSaturationLimit = 32;

/// I : J^∞ by iterated quotients.
inline Ideal saturate(const Ideal& I, const Ideal& J) {
  Ideal current = I;
  for (int k = 0; k < kSaturationLimit; ++k) {
    Ideal next = quotient(current, J);
    if (current.contains(next)) return current;
    current = next;
  }
  throw BudgetExceeded("saturation did not stabilize within " + std::to_string(kSaturationLimit) + " quotients");
}

/// Dimension of S/I from the initial ideal: the largest set of variables
/// containing no leading-monomial support. nullopt for the unit ideal.
inline std::optional<int> krull_dimension(const Ideal& I) {
  const auto& G = I.groebner();
  if (G.is_unit()) return std::nullopt;
  const std::size_t m = I.ring()->arity();
  std::vector<std::uint32_t> supports;
  for (const auto& lm : G.leading_monomials()) supports.push_back(lm.support());
  int best = 0;
  for (std::uint32_t U = 0; U < (1u << m); ++U) {
    int size = std::popcount(U);
    if (size <= best) continue;
    bool independent = true;
    for (auto s : supports)
      if ((s & ~U) == 0) {
        independent = false;
        break;
      }
    if (independent) best = size;
  }
  return best;
}

/// J ⊆ √I, i.e. V(I) ⊆ V(J).
inline bool radical_contains(const Ideal& I, const Ideal& J) {
  require_same_ring(I, J);
  for (const auto& g : J.generators())
    if (!radical_membership(g, I)) return false;
  return true;
}

inline bool same_radical(const Ideal& I, const Ideal& J) { return radical_contains(I, J) && radical_contains(J, I); }

}  // namespace jacwb
