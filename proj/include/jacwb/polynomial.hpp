#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jacwb/error.hpp"
#include "jacwb/ring.hpp"

namespace jacwb {

struct Term {
  Monomial mono;
  Scalar coeff;
};

/// Sparse polynomial in canonical form: terms strictly descending in the
/// ring's order, no zero coefficients, coefficients canonical in the field.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial zero(const RingPtr& ring) { return Polynomial(ring); }

  static Polynomial constant(const RingPtr& ring, const Scalar& c) {
    return monomial(ring, ring->one(), c);
  }
  static Polynomial constant(const RingPtr& ring, std::int64_t c) {
    return constant(ring, ring->field().from_int(c));
  }

  static Polynomial monomial(const RingPtr& ring, const Monomial& m, const Scalar& c) {
    Polynomial p(ring);
    Scalar cc = ring->field().canonical(c);
    if (!cc.is_zero()) p.terms_.push_back({m, std::move(cc)});
    return p;
  }

  static Polynomial variable(const RingPtr& ring, std::size_t i) {
    if (i >= ring->arity()) throw PreconditionFailed("variable index out of range");
    return monomial(ring, Monomial::variable(ring->arity(), i), Scalar(1));
  }

  static Polynomial variable(const RingPtr& ring, const std::string& name) {
    auto i = ring->index_of(name);
    if (!i) throw PreconditionFailed("unknown variable '" + name + "'");
    return variable(ring, *i);
  }

  /// Builds the canonical form from arbitrary terms (any order, repeats allowed).
  static Polynomial from_terms(const RingPtr& ring, std::vector<Term> terms) {
    Polynomial p(ring);
    const auto& order = ring->order();
    const auto& field = ring->field();
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return order.compare(a.mono, b.mono) > 0; });
    for (auto& t : terms) {
      if (t.mono.arity() != ring->arity()) throw PreconditionFailed("monomial arity does not match ring");
      Scalar c = field.canonical(t.coeff);
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff = field.add(p.terms_.back().coeff, c);
        if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
      } else if (!c.is_zero()) {
        p.terms_.push_back({t.mono, std::move(c)});
      }
    }
    return p;
  }

  /// Trusts the caller: terms already canonical and strictly descending.
  static Polynomial from_sorted_terms(const RingPtr& ring, std::vector<Term> terms) {
    Polynomial p(ring);
    p.terms_ = std::move(terms);
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_unit() const { return terms_.size() == 1 && terms_[0].mono.is_one(); }

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Scalar& leading_coeff() const { return terms_.front().coeff; }

  /// Total degree; -1 for zero.
  int degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.degree()));
    return d;
  }

  /// Degree in variable i; -1 for zero.
  int degree_in(std::size_t i) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono[i]));
    return d;
  }

  std::uint32_t support() const {
    std::uint32_t mask = 0;
    for (const auto& t : terms_) mask |= t.mono.support();
    return mask;
  }

  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.mono.degree() != terms_.front().mono.degree()) return false;
    return true;
  }

  bool is_monomial() const { return terms_.size() == 1; }

  Scalar coefficient_of(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return Scalar(0);
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (!a.terms_.empty() && !same_ring(a.ring_, b.ring_)) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    return true;
  }

  std::size_t hash() const {
    std::size_t h = terms_.size();
    for (const auto& t : terms_) h = (h * 31 + t.mono.hash()) * 31 + t.coeff.hash();
    return h;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return a.combine(b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a.combine(b, true); }

  Polynomial operator-() const {
    Polynomial out(ring_);
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.mono, ring_->field().neg(t.coeff)});
    return out;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_ring(b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_ ? a.ring_ : b.ring_);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coeff);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coeff);
    // accumulate row by row; each row is already sorted
    const auto& ring = a.ring_;
    Polynomial acc(ring);
    const auto& small = a.terms_.size() <= b.terms_.size() ? a : b;
    const auto& large = a.terms_.size() <= b.terms_.size() ? b : a;
    for (const auto& t : small.terms_) acc = acc + large.mul_term(t.mono, t.coeff);
    return acc;
  }

  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  Polynomial scale(const Scalar& c) const { return mul_term(ring_->one(), c); }

  Polynomial mul_term(const Monomial& m, const Scalar& c) const {
    Polynomial out(ring_);
    const auto& field = ring_->field();
    Scalar cc = field.canonical(c);
    if (cc.is_zero()) return out;
    out.terms_.reserve(terms_.size());
    // multiplication by a monomial preserves the order; field has no zero divisors
    for (const auto& t : terms_) out.terms_.push_back({t.mono * m, field.mul(t.coeff, cc)});
    return out;
  }

  /// Leading coefficient normalized to 1; zero stays zero.
  Polynomial monic() const {
    if (is_zero() || leading_coeff().is_one()) return *this;
    return scale(ring_->field().inv(leading_coeff()));
  }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(ring_, 1);
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  /// Formal partial derivative; exponent multipliers are reduced into the field.
  Polynomial derivative(std::size_t i) const {
    if (!ring_ || i >= ring_->arity()) throw PreconditionFailed("derivative index out of range");
    std::vector<Term> out;
    const auto& field = ring_->field();
    for (const auto& t : terms_) {
      unsigned e = t.mono[i];
      if (e == 0) continue;
      Scalar c = field.mul_int(t.coeff, e);
      if (c.is_zero()) continue;
      Monomial m = t.mono;
      m.set(i, e - 1);
      out.push_back({m, std::move(c)});
    }
    // lowering one exponent can reorder terms under degrevlex ties
    return from_terms(ring_, std::move(out));
  }

  /// Evaluates the variables at `images` (one per variable, all in `target`).
  Polynomial substitute(std::span<const Polynomial> images, const RingPtr& target) const {
    if (images.size() != ring_->arity()) throw PreconditionFailed("substitution needs one image per variable");
    if (!(ring_->field() == target->field())) throw RingMismatch("substitution across coefficient fields");
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](std::size_t v, unsigned e) -> const Polynomial& {
      auto& cache = powers[v];
      if (cache.empty()) cache.push_back(constant(target, 1));
      while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
      return cache[e];
    };
    Polynomial out(target);
    for (const auto& t : terms_) {
      Polynomial term = constant(target, t.coeff);
      for (std::size_t v = 0; v < images.size(); ++v)
        if (t.mono[v]) term = term * power(v, t.mono[v]);
      out += term;
    }
    return out;
  }

  /// Same polynomial viewed in a ring with identical field and variables
  /// but possibly another order.
  Polynomial rebase(const RingPtr& target) const {
    if (same_ring(ring_, target)) {
      Polynomial copy = *this;
      copy.ring_ = target;
      return copy;
    }
    if (!(target->field() == ring_->field()) || target->variables() != ring_->variables())
      throw RingMismatch("rebase requires the same field and variables");
    return from_terms(target, terms_);
  }

  /// Moves into `target`, sending variable i to variable map[i].
  Polynomial remap(const RingPtr& target, std::span<const std::size_t> map) const {
    if (map.size() != ring_->arity()) throw PreconditionFailed("variable map has wrong length");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m(target->arity());
      for (std::size_t v = 0; v < map.size(); ++v)
        if (t.mono[v]) m.set(map[v], m[map[v]] + t.mono[v]);
      out.push_back({m, t.coeff});
    }
    return from_terms(target, std::move(out));
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    const auto& field = ring_->field();
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      Scalar c = field.display(t.coeff);
      bool negative = c.sign() < 0;
      if (negative) c = field.is_rational() ? field.neg(c) : Scalar(-c.small());
      if (first)
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      first = false;
      std::string mono = monomial_string(t.mono);
      if (mono.empty())
        out += c.to_string();
      else if (c.is_one())
        out += mono;
      else
        out += c.to_string() + "*" + mono;
    }
    return out;
  }

  std::string monomial_string(const Monomial& m) const {
    std::string out;
    for (std::size_t v = 0; v < m.arity(); ++v) {
      if (!m[v]) continue;
      if (!out.empty()) out += "*";
      out += ring_->variables()[v];
      if (m[v] > 1) out += "^" + std::to_string(m[v]);
    }
    return out;
  }

 private:
  void check_ring(const Polynomial& other) const {
    if (ring_ && other.ring_ && !same_ring(ring_, other.ring_)) throw RingMismatch();
  }

  Polynomial combine(const Polynomial& b, bool subtract) const {
    check_ring(b);
    const RingPtr& ring = ring_ ? ring_ : b.ring_;
    Polynomial out(ring);
    if (!ring) return out;
    const auto& order = ring->order();
    const auto& field = ring->field();
    out.terms_.reserve(terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == terms_.size())
        c = -1;
      else if (j == b.terms_.size())
        c = 1;
      else {
        auto o = order.compare(terms_[i].mono, b.terms_[j].mono);
        c = o > 0 ? 1 : (o < 0 ? -1 : 0);
      }
      if (c > 0) {
        out.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        const auto& t = b.terms_[j++];
        out.terms_.push_back({t.mono, subtract ? field.neg(t.coeff) : t.coeff});
      } else {
        Scalar s = subtract ? field.sub(terms_[i].coeff, b.terms_[j].coeff) : field.add(terms_[i].coeff, b.terms_[j].coeff);
        if (!s.is_zero()) out.terms_.push_back({terms_[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

inline Polynomial partial_derivative(const Polynomial& f, std::size_t i) { return f.derivative(i); }

/// Sum of c_i * f_i.
inline Polynomial linear_combination(const RingPtr& ring, std::span<const Polynomial> coeffs,
                                     std::span<const Polynomial> polys) {
  Polynomial out = Polynomial::zero(ring);
  for (std::size_t i = 0; i < coeffs.size() && i < polys.size(); ++i) out += coeffs[i] * polys[i];
  return out;
}

}  // namespace jacwb
