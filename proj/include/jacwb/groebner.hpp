#pragma once

#include <algorithm>
#include <atomic>
#include <compare>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jacwb/error.hpp"
#include "jacwb/polynomial.hpp"

namespace jacwb {

inline std::atomic<std::size_t>& default_pair_budget_slot() {
  static std::atomic<std::size_t> budget{200000};
  return budget;
}
inline std::size_t default_pair_budget() { return default_pair_budget_slot().load(); }
inline void set_default_pair_budget(std::size_t budget) { default_pair_budget_slot().store(budget); }

struct GroebnerOptions {
  std::size_t pair_budget = default_pair_budget();
};

namespace detail {

struct VTerm {
  Monomial mono;
  std::uint32_t pos = 0;
  Scalar coeff;
};
using Vec = std::vector<VTerm>;

/// Term-over-position extension of a monomial order. Positions below
/// `split` form a block that dominates every later position.
struct ModuleOrder {
  MonomialOrder order = MonomialOrder::degrevlex();
  std::uint32_t split = 0;

  std::strong_ordering compare(const Monomial& a, std::uint32_t pa, const Monomial& b, std::uint32_t pb) const {
    bool late_a = pa >= split, late_b = pb >= split;
    if (late_a != late_b) return late_a ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = order.compare(a, b); c != 0) return c;
    return pb <=> pa;
  }
  std::strong_ordering compare(const VTerm& a, const VTerm& b) const { return compare(a.mono, a.pos, b.mono, b.pos); }
};

inline const mpz_class& numerator(const Scalar& s, mpz_class& scratch) {
  if (s.is_small()) {
    Scalar::set_int64(scratch, s.small());
    return scratch;
  }
  return s.big().get_num();
}

/// Non-negative gcd of two integer scalars.
inline Scalar gcd_int(const Scalar& a, const Scalar& b) {
  if (a.is_small() && b.is_small() && a.small() != INT64_MIN && b.small() != INT64_MIN)
    return Scalar(std::gcd(a.small(), b.small()));
  mpz_class sa, sb, g;
  mpz_gcd(g.get_mpz_t(), numerator(a, sa).get_mpz_t(), numerator(b, sb).get_mpz_t());
  return Scalar(g);
}

inline Vec scaled(const Vec& v, const CoeffField& field, const Scalar& c) {
  Vec out;
  out.reserve(v.size());
  for (const auto& t : v) out.push_back({t.mono, t.pos, field.mul(t.coeff, c)});
  return out;
}

/// alpha*u[ufrom..] + beta*mw*w[wfrom..], merged in module order.
inline Vec combine(const Vec& u, std::size_t ufrom, const Scalar& alpha, const Vec& w, std::size_t wfrom,
                   const Scalar& beta, const Monomial& mw, const CoeffField& field, const ModuleOrder& order) {
  Vec out;
  out.reserve(u.size() - ufrom + w.size() - wfrom);
  bool alpha_one = alpha.is_one();
  bool shift = !mw.is_one();
  std::size_t i = ufrom, j = wfrom;
  VTerm wt;
  auto load = [&](std::size_t k) {
    wt.mono = shift ? w[k].mono * mw : w[k].mono;
    wt.pos = w[k].pos;
    wt.coeff = field.mul(w[k].coeff, beta);
  };
  if (j < w.size()) load(j);
  while (i < u.size() || j < w.size()) {
    int c;
    if (i == u.size())
      c = -1;
    else if (j == w.size())
      c = 1;
    else {
      auto o = order.compare(u[i], wt);
      c = o > 0 ? 1 : (o < 0 ? -1 : 0);
    }
    if (c > 0) {
      out.push_back({u[i].mono, u[i].pos, alpha_one ? u[i].coeff : field.mul(u[i].coeff, alpha)});
      ++i;
    } else if (c < 0) {
      out.push_back(std::move(wt));
      if (++j < w.size()) load(j);
    } else {
      Scalar s = field.add(alpha_one ? u[i].coeff : field.mul(u[i].coeff, alpha), wt.coeff);
      if (!s.is_zero()) out.push_back({u[i].mono, u[i].pos, std::move(s)});
      ++i;
      if (++j < w.size()) load(j);
    }
  }
  return out;
}

class Engine {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// `ideal_mode` enables the coprime-leads criterion, which is only valid
  /// when every element lives in a single position.
  Engine(CoeffField field, ModuleOrder order, bool ideal_mode, std::size_t budget)
      : field_(field), order_(std::move(order)), ideal_mode_(ideal_mode), budget_(budget) {}

  const CoeffField& field() const { return field_; }
  const ModuleOrder& order() const { return order_; }
  const std::vector<Vec>& elements() const { return elements_; }
  bool has_unit() const { return unit_; }
  std::size_t pairs_generated() const { return pairs_generated_; }

  void sort_terms(Vec& v) const {
    std::sort(v.begin(), v.end(), [&](const VTerm& a, const VTerm& b) { return order_.compare(a, b) > 0; });
  }

  /// Primitive with positive leading coefficient over Q, monic over GF(p).
  Vec normalize(Vec v) const {
    if (v.empty()) return v;
    if (!field_.is_rational()) {
      if (v.front().coeff.is_one()) return v;
      return scaled(v, field_, field_.inv(v.front().coeff));
    }
    Scalar g = content(v);
    if (v.front().coeff.sign() < 0) g = field_.neg(g);
    if (g.is_one()) return v;
    Scalar inv = field_.inv(g);
    return scaled(v, field_, inv);
  }

  Scalar content(const Vec& v) const {
    Scalar g(0);
    for (const auto& t : v) {
      g = gcd_int(g, t.coeff);
      if (g.is_one()) break;
    }
    return g;
  }

  std::size_t add(Vec v) {
    if (v.empty()) return npos;
    v = normalize(std::move(v));
    std::size_t k = elements_.size();
    const VTerm& lead = v.front();
    if (ideal_mode_ && lead.mono.is_one()) unit_ = true;
    leads_.push_back({lead.mono, lead.pos, lead.mono.support()});
    elements_.push_back(std::move(v));
    pending_.emplace_back(k, 0);
    auto& same_pos = bucket(leads_[k].pos);
    for (std::size_t i : same_pos) {
      if (ideal_mode_ && leads_[i].mono.coprime(leads_[k].mono)) continue;
      if (++pairs_generated_ > budget_)
        throw BudgetExceeded("Groebner pair budget of " + std::to_string(budget_) + " exceeded");
      pairs_.insert(Pair{Monomial::lcm(leads_[i].mono, leads_[k].mono), leads_[k].pos, i, k});
      pending_[k][i] = 1;
    }
    same_pos.push_back(k);
    return k;
  }

  /// Appends an element of a set already known to be a Groebner basis under
  /// this order; no pairs are formed among seeded elements.
  void seed(Vec v) {
    if (v.empty()) return;
    const VTerm& lead = v.front();
    if (ideal_mode_ && lead.mono.is_one()) unit_ = true;
    leads_.push_back({lead.mono, lead.pos, lead.mono.support()});
    bucket(lead.pos).push_back(elements_.size());
    pending_.emplace_back(elements_.size(), 0);
    elements_.push_back(std::move(v));
  }

  std::size_t budget() const { return budget_; }

  void complete() {
    while (!pairs_.empty()) {
      if (unit_) {
        pairs_.clear();
        break;
      }
      Pair p = *pairs_.begin();
      pairs_.erase(pairs_.begin());
      pending_[p.j][p.i] = 0;
      if (chain_criterion(p)) continue;
      Vec s = spoly(p.i, p.j);
      Vec r = reduce(std::move(s), true, elements_);
      if (!r.empty()) add(std::move(r));
    }
  }

  /// Remainder of `f` modulo `basis`. With `scale`, receives s such that the
  /// returned vector is s times the field-arithmetic remainder.
  Vec reduce(Vec f, bool full, std::span<const Vec> basis, Scalar* scale = nullptr) const {
    Vec done;
    Scalar s(1);
    const bool ff = field_.is_rational();
    std::size_t since_content = 0;
    std::size_t head = 0;
    while (head < f.size()) {
      const VTerm& t = f[head];
      const Vec* g = find_reducer(t, basis);
      if (!g) {
        if (!full) break;
        done.push_back(f[head++]);
        continue;
      }
      Monomial m = t.mono / g->front().mono;
      if (ff) {
        const Scalar& a = t.coeff;
        const Scalar& b = g->front().coeff;
        Scalar h = gcd_int(a, b);
        Scalar ma = field_.div(b, h);
        Scalar mg = field_.neg(field_.div(a, h));
        if (ma.sign() < 0) {
          ma = field_.neg(ma);
          mg = field_.neg(mg);
        }
        f = combine(f, head + 1, ma, *g, 1, mg, m, field_, order_);
        if (!ma.is_one()) {
          for (auto& d : done) d.coeff = field_.mul(d.coeff, ma);
          s = field_.mul(s, ma);
        }
        if (++since_content >= 6 || has_big(f)) {
          since_content = 0;
          Scalar c = content(done);
          for (const auto& x : f) {
            if (c.is_one()) break;
            c = gcd_int(c, x.coeff);
          }
          if (!c.is_zero() && !c.is_one()) {
            Scalar inv = field_.inv(c);
            for (auto& d : done) d.coeff = field_.mul(d.coeff, inv);
            for (auto& x : f) x.coeff = field_.mul(x.coeff, inv);
            s = field_.mul(s, inv);
          }
        }
      } else {
        Scalar c = field_.neg(field_.div(t.coeff, g->front().coeff));
        f = combine(f, head + 1, Scalar(1), *g, 1, c, m, field_, order_);
      }
      head = 0;
    }
    if (head < f.size()) done.insert(done.end(), std::make_move_iterator(f.begin() + head), std::make_move_iterator(f.end()));
    if (ff && !done.empty()) {
      Scalar c = content(done);
      if (!c.is_one()) {
        Scalar inv = field_.inv(c);
        for (auto& d : done) d.coeff = field_.mul(d.coeff, inv);
        s = field_.mul(s, inv);
      }
    }
    if (scale) *scale = s;
    return done;
  }

  /// Reduced basis, sorted ascending by leading term.
  std::vector<Vec> reduced() const {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < elements_.size() && !redundant; ++j) {
        if (i == j || leads_[j].pos != leads_[i].pos || !leads_[j].mono.divides(leads_[i].mono)) continue;
        redundant = !(leads_[j].mono == leads_[i].mono) || j < i;
      }
      if (!redundant) keep.push_back(i);
    }
    // a lead never divides a smaller term, so each element can be
    // tail-reduced against the whole kept set
    std::vector<Vec> kept;
    for (std::size_t i : keep) kept.push_back(elements_[i]);
    std::vector<Vec> out;
    for (const auto& e : kept) {
      Scalar s(1);
      Vec r = reduce(Vec(e.begin() + 1, e.end()), true, kept, &s);
      Vec full;
      full.reserve(r.size() + 1);
      full.push_back(e.front());
      full.front().coeff = field_.mul(full.front().coeff, s);
      full.insert(full.end(), r.begin(), r.end());
      out.push_back(normalize(std::move(full)));
    }
    std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) { return order_.compare(a.front(), b.front()) < 0; });
    return out;
  }

 private:
  struct Lead {
    Monomial mono;
    std::uint32_t pos;
    std::uint32_t support;
  };

  struct Pair {
    Monomial lcm;
    std::uint32_t pos;
    std::size_t i, j;
  };

  struct PairLess {
    const ModuleOrder* order;
    bool operator()(const Pair& a, const Pair& b) const {
      auto c = order->compare(a.lcm, a.pos, b.lcm, b.pos);
      if (c != 0) return c < 0;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    }
  };

  static bool has_big(const Vec& v) {
    for (const auto& t : v)
      if (!t.coeff.is_small()) return true;
    return false;
  }

  std::vector<std::size_t>& bucket(std::uint32_t pos) {
    if (by_pos_.size() <= pos) by_pos_.resize(pos + 1);
    return by_pos_[pos];
  }

  const Vec* find_reducer(const VTerm& t, std::span<const Vec> basis) const {
    const Vec* best = nullptr;
    std::uint32_t tsupport = t.mono.support();
    if (basis.data() == elements_.data() && basis.size() == elements_.size()) {
      if (t.pos >= by_pos_.size()) return nullptr;
      for (std::size_t k : by_pos_[t.pos]) {
        const Lead& lead = leads_[k];
        if ((lead.support & ~tsupport) || !lead.mono.divides(t.mono)) continue;
        if (!best || elements_[k].size() < best->size()) best = &elements_[k];
      }
      return best;
    }
    for (const auto& g : basis) {
      const VTerm& lead = g.front();
      if (lead.pos != t.pos || (lead.mono.support() & ~tsupport) || !lead.mono.divides(t.mono)) continue;
      if (!best || g.size() < best->size()) best = &g;
    }
    return best;
  }

  bool is_pending(std::size_t a, std::size_t b) const {
    if (a < b) std::swap(a, b);
    return pending_[a][b] != 0;
  }

  bool chain_criterion(const Pair& p) const {
    for (std::size_t k : by_pos_[p.pos]) {
      if (k == p.i || k == p.j) continue;
      if (!leads_[k].mono.divides(p.lcm)) continue;
      if (!is_pending(p.i, k) && !is_pending(p.j, k)) return true;
    }
    return false;
  }

  Vec spoly(std::size_t i, std::size_t j) const {
    const Vec& a = elements_[i];
    const Vec& b = elements_[j];
    Monomial l = Monomial::lcm(a.front().mono, b.front().mono);
    Monomial ma = l / a.front().mono;
    Monomial mb = l / b.front().mono;
    Scalar ca = b.front().coeff, cb = a.front().coeff;
    if (field_.is_rational()) {
      Scalar h = gcd_int(ca, cb);
      ca = field_.div(ca, h);
      cb = field_.div(cb, h);
    }
    Vec shifted_a;
    if (ma.is_one())
      shifted_a.assign(a.begin() + 1, a.end());
    else
      for (std::size_t k = 1; k < a.size(); ++k) shifted_a.push_back({a[k].mono * ma, a[k].pos, a[k].coeff});
    return combine(shifted_a, 0, ca, b, 1, field_.neg(cb), mb, field_, order_);
  }

  CoeffField field_;
  ModuleOrder order_;
  bool ideal_mode_;
  std::size_t budget_;
  std::vector<Vec> elements_;
  std::vector<Lead> leads_;
  std::vector<std::vector<char>> pending_;
  std::vector<std::vector<std::size_t>> by_pos_;
  std::set<Pair, PairLess> pairs_{PairLess{&order_}};
  std::size_t pairs_generated_ = 0;
  bool unit_ = false;
};

inline Vec to_vec(const Polynomial& f, std::uint32_t pos = 0) {
  Vec v;
  v.reserve(f.size());
  for (const auto& t : f.terms()) v.push_back({t.mono, pos, t.coeff});
  return v;
}

/// Converts an engine vector back to a polynomial, undoing the integer
/// normalization so the result is monic.
inline Polynomial from_vec(const RingPtr& ring, const Vec& v, bool make_monic) {
  std::vector<Term> terms;
  terms.reserve(v.size());
  for (const auto& t : v) terms.push_back({t.mono, t.coeff});
  Polynomial p = Polynomial::from_sorted_terms(ring, std::move(terms));
  return make_monic ? p.monic() : p;
}

}  // namespace detail

class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(RingPtr ring, std::vector<detail::Vec> internal)
      : ring_(std::move(ring)), internal_(std::move(internal)) {
    for (const auto& v : internal_) elements_.push_back(detail::from_vec(ring_, v, true));
  }

  const RingPtr& ring() const { return ring_; }
  const MonomialOrder& order() const { return ring_->order(); }
  const std::vector<Polynomial>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool is_unit() const { return elements_.size() == 1 && elements_[0].is_unit(); }
  bool is_zero_ideal() const { return elements_.empty(); }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    for (const auto& e : elements_) out.push_back(e.leading_monomial());
    return out;
  }

  bool contains(const Polynomial& f) const {
    if (f.is_zero()) return true;
    if (is_unit()) return true;
    return engine().reduce(detail::to_vec(local(f)), true, internal_).empty();
  }

  /// Remainder of multivariate division by the reduced basis.
  Polynomial normal_form(const Polynomial& f) const {
    Scalar s(1);
    detail::Vec r = engine().reduce(detail::to_vec(local(f)), true, internal_, &s);
    Polynomial p = detail::from_vec(ring_, r, false);
    return ring_->field().is_rational() ? p.scale(ring_->field().inv(s)) : p;
  }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return same_ring(a.ring_, b.ring_) && a.elements_ == b.elements_;
  }

 private:
  Polynomial local(const Polynomial& f) const {
    if (!(f.ring()->field() == ring_->field()) || f.ring()->variables() != ring_->variables()) throw RingMismatch();
    return f.rebase(ring_);
  }

  detail::Engine engine() const {
    return detail::Engine(ring_->field(), detail::ModuleOrder{ring_->order(), 0}, true, 0);
  }

  RingPtr ring_;
  std::vector<Polynomial> elements_;
  std::vector<detail::Vec> internal_;
};

/// Reduced Groebner basis of the ideal generated by `gens` in `ring`'s order.
inline GroebnerBasis buchberger(const RingPtr& ring, std::span<const Polynomial> gens,
                                const GroebnerOptions& options = {}) {
  detail::Engine engine(ring->field(), detail::ModuleOrder{ring->order(), 0}, true, options.pair_budget);
  std::vector<Polynomial> local;
  for (const auto& g : gens) {
    if (!g.ring()) continue;
    if (!(g.ring()->field() == ring->field()) || g.ring()->variables() != ring->variables()) throw RingMismatch();
    if (!g.is_zero()) local.push_back(g.rebase(ring));
  }
  // cheap generators first keeps early pairs small
  std::stable_sort(local.begin(), local.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ring->order().compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  for (const auto& g : local) engine.add(detail::to_vec(g));
  engine.complete();
  return GroebnerBasis(ring, engine.reduced());
}

inline GroebnerBasis buchberger(std::span<const Polynomial> gens, MonomialOrder order,
                                const GroebnerOptions& options = {}) {
  if (gens.empty()) throw PreconditionFailed("buchberger needs a ring; pass it explicitly for an empty list");
  return buchberger(with_order(gens.front().ring(), order), gens, options);
}

inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G) { return G.normal_form(f); }

/// Element of the free module S^rank.
struct ModuleElement {
  std::vector<Polynomial> components;

  ModuleElement() = default;
  explicit ModuleElement(std::vector<Polynomial> c) : components(std::move(c)) {}
  static ModuleElement zero(const RingPtr& ring, std::size_t rank) {
    return ModuleElement(std::vector<Polynomial>(rank, Polynomial::zero(ring)));
  }
  static ModuleElement basis(const RingPtr& ring, std::size_t rank, std::size_t i) {
    ModuleElement e = zero(ring, rank);
    e.components[i] = Polynomial::constant(ring, 1);
    return e;
  }

  std::size_t rank() const { return components.size(); }
  bool is_zero() const {
    return std::all_of(components.begin(), components.end(), [](const Polynomial& p) { return p.is_zero(); });
  }
  const Polynomial& operator[](std::size_t i) const { return components[i]; }
  Polynomial& operator[](std::size_t i) { return components[i]; }

  friend bool operator==(const ModuleElement& a, const ModuleElement& b) { return a.components == b.components; }

  ModuleElement operator+(const ModuleElement& o) const {
    ModuleElement out = *this;
    for (std::size_t i = 0; i < rank(); ++i) out.components[i] += o.components[i];
    return out;
  }
  ModuleElement operator-(const ModuleElement& o) const {
    ModuleElement out = *this;
    for (std::size_t i = 0; i < rank(); ++i) out.components[i] -= o.components[i];
    return out;
  }
  ModuleElement scaled(const Polynomial& f) const {
    ModuleElement out = *this;
    for (auto& c : out.components) c = c * f;
    return out;
  }
  std::uint32_t max_degree() const {
    int d = -1;
    for (const auto& c : components) d = std::max(d, c.degree());
    return static_cast<std::uint32_t>(std::max(d, 0));
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < components.size(); ++i) out += (i ? ", " : "") + components[i].to_string();
    return out + "]";
  }
};

namespace detail {

inline Vec module_to_vec(const ModuleElement& v, const ModuleOrder& order, std::uint32_t offset = 0) {
  Vec out;
  for (std::size_t i = 0; i < v.rank(); ++i)
    for (const auto& t : v[i].terms()) out.push_back({t.mono, static_cast<std::uint32_t>(i + offset), t.coeff});
  std::sort(out.begin(), out.end(), [&](const VTerm& a, const VTerm& b) { return order.compare(a, b) > 0; });
  return out;
}

inline ModuleElement vec_to_module(const RingPtr& ring, const Vec& v, std::size_t rank, std::uint32_t offset = 0) {
  std::vector<std::vector<Term>> parts(rank);
  for (const auto& t : v) {
    if (t.pos < offset || t.pos - offset >= rank) continue;
    parts[t.pos - offset].push_back({t.mono, t.coeff});
  }
  ModuleElement out;
  for (auto& p : parts) out.components.push_back(Polynomial::from_terms(ring, std::move(p)));
  return out;
}

}  // namespace detail

/// Groebner basis of a submodule of S^rank (term-over-position).
/// Elements can be added after completion; the basis is then completed again.
class ModuleGroebnerBasis {
 public:
  ModuleGroebnerBasis(RingPtr ring, std::size_t rank, const GroebnerOptions& options = {})
      : ring_(std::move(ring)),
        rank_(rank),
        engine_(ring_->field(), detail::ModuleOrder{ring_->order(), 0}, rank == 1, options.pair_budget) {}

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }

  void add(const ModuleElement& v) {
    check(v);
    auto r = engine_.reduce(detail::module_to_vec(v, engine_.order()), true, engine_.elements());
    if (!r.empty()) {
      engine_.add(std::move(r));
      engine_.complete();
    }
  }

  /// Adds and completes in one pass.
  void add_all(std::span<const ModuleElement> vs) {
    for (const auto& v : vs) {
      check(v);
      engine_.add(detail::module_to_vec(v, engine_.order()));
    }
    engine_.complete();
  }

  bool contains(const ModuleElement& v) const {
    check(v);
    return engine_.reduce(detail::module_to_vec(v, engine_.order()), true, engine_.elements()).empty();
  }

  ModuleElement normal_form(const ModuleElement& v) const {
    check(v);
    Scalar s(1);
    auto r = engine_.reduce(detail::module_to_vec(v, engine_.order()), true, engine_.elements(), &s);
    ModuleElement out = detail::vec_to_module(ring_, r, rank_);
    if (ring_->field().is_rational()) {
      Polynomial inv = Polynomial::constant(ring_, ring_->field().inv(s));
      out = out.scaled(inv);
    }
    return out;
  }

  /// Wraps elements already known to form a Groebner basis of their span.
  static ModuleGroebnerBasis from_basis(RingPtr ring, std::size_t rank, std::span<const ModuleElement> basis,
                                        const GroebnerOptions& options = {}) {
    ModuleGroebnerBasis gb(std::move(ring), rank, options);
    for (const auto& v : basis) {
      gb.check(v);
      if (!v.is_zero()) gb.engine_.seed(gb.engine_.normalize(detail::module_to_vec(v, gb.engine_.order())));
    }
    return gb;
  }

  /// Generators of {h ∈ S^u : Σ h_i·gens[i] ∈ U}, reusing this basis instead of
  /// recomputing it: gens[i] is tagged with a new position below the original ones.
  std::vector<ModuleElement> kernel_modulo(std::span<const ModuleElement> gens) const {
    const auto split = static_cast<std::uint32_t>(rank_);
    detail::Engine engine(ring_->field(), detail::ModuleOrder{ring_->order(), split}, false, engine_.budget());
    for (const auto& v : engine_.elements()) engine.seed(v);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      check(gens[i]);
      detail::Vec v = detail::module_to_vec(gens[i], engine.order());
      v.push_back({ring_->one(), static_cast<std::uint32_t>(split + i), Scalar(1)});
      engine.sort_terms(v);
      engine.add(std::move(v));
    }
    engine.complete();
    std::vector<ModuleElement> out;
    for (const auto& e : engine.elements())
      if (e.front().pos >= split) out.push_back(detail::vec_to_module(ring_, e, gens.size(), split));
    return out;
  }

  /// Generators of (U : z) = {a : a·z ∈ U}.
  std::vector<Polynomial> colon(const ModuleElement& z) const {
    std::vector<Polynomial> out;
    for (const auto& h : kernel_modulo(std::span<const ModuleElement>(&z, 1))) out.push_back(h[0]);
    return out;
  }

  std::vector<ModuleElement> elements() const {
    std::vector<ModuleElement> out;
    for (const auto& v : engine_.reduced()) {
      ModuleElement e = detail::vec_to_module(ring_, v, rank_);
      out.push_back(monic(e, v));
    }
    return out;
  }

 private:
  ModuleElement monic(ModuleElement e, const detail::Vec& v) const {
    if (v.empty() || v.front().coeff.is_one()) return e;
    return e.scaled(Polynomial::constant(ring_, ring_->field().inv(v.front().coeff)));
  }

  void check(const ModuleElement& v) const {
    if (v.rank() != rank_) throw PreconditionFailed("module element has wrong rank");
    for (const auto& c : v.components)
      if (c.ring() && !same_ring(c.ring(), ring_)) throw RingMismatch();
  }

  RingPtr ring_;
  std::size_t rank_;
  detail::Engine engine_;
};

/// Generators of the kernel of S^u -> S^rank sending e_i to gens[i].
inline std::vector<ModuleElement> syzygies(const RingPtr& ring, std::size_t rank, std::span<const ModuleElement> gens,
                                           const GroebnerOptions& options = {}) {
  const std::size_t u = gens.size();
  detail::ModuleOrder order{ring->order(), static_cast<std::uint32_t>(rank)};
  detail::Engine engine(ring->field(), order, false, options.pair_budget);
  std::vector<detail::Vec> inputs;
  for (std::size_t i = 0; i < u; ++i) {
    if (gens[i].rank() != rank) throw PreconditionFailed("syzygy generator has wrong rank");
    detail::Vec v = detail::module_to_vec(gens[i], order);
    v.push_back({ring->one(), static_cast<std::uint32_t>(rank + i), Scalar(1)});
    engine.sort_terms(v);
    inputs.push_back(std::move(v));
  }
  for (auto& v : inputs) engine.add(std::move(v));
  engine.complete();
  std::vector<ModuleElement> out;
  for (const auto& v : engine.reduced()) {
    if (v.front().pos < rank) continue;
    ModuleElement s = detail::vec_to_module(ring, v, u, static_cast<std::uint32_t>(rank));
    if (!v.front().coeff.is_one())
      s = s.scaled(Polynomial::constant(ring, ring->field().inv(v.front().coeff)));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace jacwb
