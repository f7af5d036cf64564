#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "jacwb/jacobian.hpp"
#include "jacwb/primes.hpp"

namespace jacwb {

/// V(I) ⊆ V(J), decided as J ⊆ √I.
inline bool variety_contains(const Ideal& I, const Ideal& J) { return radical_contains(I, J); }

/// A minimal prime of I lying in V(I) but outside V(J), if any.
inline std::optional<Ideal> witness_prime(const MinimalPrimesReport& primes, const Ideal& J) {
  for (const auto& p : primes.primes)
    if (!p.contains(J)) return p;
  return std::nullopt;
}

/// For a minimal prime P of I: (S/I)_P is a field iff each generator x of P
/// satisfies (I : x) ⊄ P. Being Artinian local, it is regular iff a field.
inline bool localization_is_field(const Ideal& I, const Ideal& P) {
  for (const auto& x : P.canonical_generators()) {
    Ideal q = quotient(I, x);
    if (P.contains(q)) return false;
  }
  return true;
}

/// I = √I, checked through certified minimal primes.
inline bool is_reduced(const Ideal& I, const MinimalPrimesReport& primes) {
  if (!primes.certified) throw UncertifiedDecomposition("reducedness needs certified minimal primes");
  return I.contains(intersect(primes.primes));
}

struct LocusReport {
  enum class Provenance { jacobian_criterion, corpus_supplied };

  std::optional<Ideal> sing;
  Provenance provenance = Provenance::corpus_supplied;
  std::map<std::string, bool> checks;
  std::vector<std::string> notes;

  std::string provenance_name() const {
    return provenance == Provenance::jacobian_criterion ? "jacobian-criterion" : "corpus-supplied";
  }
};

/// Defining ideal of Sing R. Uses J_0 + I when R is verified reduced and
/// equidimensional; otherwise falls back to `supplied`, else refuses.
inline LocusReport singular_locus(const Presentation& p, const std::optional<Ideal>& supplied = std::nullopt) {
  LocusReport report;
  std::string why;
  try {
    auto mp = minimal_primes(p.relations());
    if (!mp.certified) {
      why = "minimal primes are not certified";
    } else if (edd_from_primes(p, mp).edd != 0) {
      why = "ring is not equidimensional";
    } else if (!is_reduced(p.relations(), mp)) {
      why = "ring is not reduced";
    } else {
      report.sing = jn_ideal(p, 0).value_in_s;
      report.provenance = LocusReport::Provenance::jacobian_criterion;
      return report;
    }
  } catch (const UncertifiedDecomposition& e) {
    why = e.what();
  }
  if (supplied) {
    report.sing = *supplied;
    report.provenance = LocusReport::Provenance::corpus_supplied;
    report.notes.push_back("Jacobian criterion not applicable (" + why + "); using supplied locus");
    return report;
  }
  throw LocusUnavailable("singular locus unavailable: " + why + " and no locus was supplied");
}

/// cond_ii: Sing ⊆ V(J_n).  cond_iii: Spec = V(J_{n+1}).  cond_iv is
/// evaluated through Sing = V(ca^{d+1}), which makes it coincide with cond_ii.
inline LocusReport check_conditions(const Presentation& p, int n, LocusReport locus) {
  if (!locus.sing) throw LocusUnavailable("condition checks need a singular locus");
  bool ii = variety_contains(*locus.sing, jn_ideal(p, n).value_in_s);
  bool iii = variety_contains(p.relations(), jn_ideal(p, n + 1).value_in_s);
  locus.checks["cond_ii_" + std::to_string(n)] = ii;
  locus.checks["cond_iii_" + std::to_string(n)] = iii;
  locus.checks["cond_iv_" + std::to_string(n)] = ii;
  locus.notes.push_back("cond_iv evaluated as cond_ii via Sing R = V(ca^{d+1}(R))");
  return locus;
}

/// k[X..]/(f..) ⊗_k k[Y..]/(g..) = k[X.., Y..]/(f.., g..); clashing names of
/// the second factor get a suffix.
inline Presentation tensor_presentation(const Presentation& a, const Presentation& b) {
  if (!(a.ring()->field() == b.ring()->field())) throw RingMismatch("tensor factors have different fields");
  std::vector<std::string> vars = a.ring()->variables();
  std::vector<std::size_t> map_b;
  for (const auto& v : b.ring()->variables()) {
    std::string name = fresh_name(vars, v);
    map_b.push_back(vars.size());
    vars.push_back(name);
  }
  RingPtr ring = make_ring(a.ring()->field(), vars, a.ring()->order());
  std::vector<std::size_t> map_a(a.arity());
  for (std::size_t i = 0; i < a.arity(); ++i) map_a[i] = i;
  std::vector<Polynomial> rels;
  for (const auto& f : a.generators()) rels.push_back(f.remap(ring, map_a));
  for (const auto& g : b.generators()) rels.push_back(g.remap(ring, map_b));
  return Presentation(ring, rels);
}

/// k[X_1..X_n]/(X_1..X_n)^2. A single variable is named by `base` alone.
inline Presentation square_zero_algebra(const CoeffField& field, int n, const std::string& base = "X") {
  if (n < 1) throw PreconditionFailed("square-zero algebra needs n >= 1");
  std::vector<std::string> vars;
  for (int i = 1; i <= n; ++i) vars.push_back(n == 1 ? base : base + "_" + std::to_string(i));
  RingPtr ring = make_ring(field, vars);
  std::vector<Polynomial> rels;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) rels.push_back(Polynomial::variable(ring, i) * Polynomial::variable(ring, j));
  return Presentation(ring, rels);
}

/// B = S[Y], J = I + Y·𝔞 where 𝔞 is the intersection of the minimal primes of
/// less than top dimension. The result has edd one less (verified).
inline Presentation edd_reducer(const Presentation& p, const MinimalPrimesReport& mp) {
  EddReport before = edd_from_primes(p, mp);
  if (before.edd == 0) throw PreconditionFailed("edd is already 0");
  std::vector<Ideal> low;
  for (std::size_t i = 0; i < mp.primes.size(); ++i)
    if (before.component_dims[i] < before.dim_r) low.push_back(mp.primes[i]);
  Ideal a = intersect(low);

  std::vector<std::string> vars = p.ring()->variables();
  vars.push_back(fresh_name(vars, "Y"));
  RingPtr ring = make_ring(p.ring()->field(), vars, p.ring()->order());
  std::vector<std::size_t> embed(p.arity());
  for (std::size_t i = 0; i < p.arity(); ++i) embed[i] = i;
  Polynomial Y = Polynomial::variable(ring, p.arity());
  std::vector<Polynomial> rels;
  for (const auto& f : p.generators()) rels.push_back(f.remap(ring, embed));
  for (const auto& g : a.canonical_generators()) rels.push_back(Y * g.remap(ring, embed));
  Presentation out(ring, rels);
  EddReport after = edd(out);
  if (after.edd != before.edd - 1 || after.dim_r != before.dim_r)
    throw Error("edd reducer produced edd " + std::to_string(after.edd) + " from " + std::to_string(before.edd));
  return out;
}

struct CounterexamplePair {
  Presentation violates_ii;   // Sing ⊄ V(J_n)
  Presentation violates_iii;  // Spec ≠ V(J_{n+1})
  Polynomial gamma;
  Ideal prime;
};

namespace detail {

/// Mask of variables generating P, if P is generated by variables.
inline std::optional<std::uint32_t> coordinate_prime_mask(const Ideal& P) {
  std::uint32_t mask = 0;
  for (const auto& g : P.canonical_generators()) {
    if (!g.is_monomial() || g.degree() != 1) return std::nullopt;
    mask |= g.support();
  }
  return mask;
}

inline std::vector<Monomial> monomials_up_to(std::size_t arity, std::uint32_t allowed, unsigned degree) {
  std::vector<Monomial> out{Monomial(arity)};
  for (unsigned d = 1; d <= degree; ++d) {
    std::vector<Monomial> next;
    for (const auto& m : out) {
      if (m.degree() != d - 1) continue;
      std::size_t last = 0;
      for (std::size_t v = 0; v < arity; ++v)
        if (m[v]) last = v;
      for (std::size_t v = m.is_one() ? 0 : last; v < arity; ++v)
        if (allowed & (1u << v)) next.push_back(m * Monomial::variable(arity, v));
    }
    out.insert(out.end(), next.begin(), next.end());
  }
  return out;
}

}  // namespace detail

inline constexpr unsigned kGammaDegreeBound = 6;
inline constexpr int kGammaRandomAttempts = 1000;

/// Replays the construction showing (ii) and (iii) fail when some minimal
/// prime P of V(I) has d > dim S/P + n. P must be generated by variables.
inline CounterexamplePair counterexample_builder(const Presentation& p, const Ideal& target, int n) {
  const auto& ring = p.ring();
  auto mp = minimal_primes(p.relations());
  if (!mp.certified) throw UncertifiedDecomposition("counterexample needs certified minimal primes");
  auto it = std::find_if(mp.primes.begin(), mp.primes.end(), [&](const Ideal& q) { return q.equals(target); });
  if (it == mp.primes.end()) throw PreconditionFailed("target is not a minimal prime of the relations");
  const int d = p.dim();
  const int dim_p = *krull_dimension(target);
  if (!(d > dim_p + n)) throw PreconditionFailed("target prime satisfies d <= dim S/P + n; conditions hold");
  auto mask = detail::coordinate_prime_mask(target);
  if (!mask) throw ConstructionInapplicable("target prime is not generated by variables");
  const int m = static_cast<int>(ring->arity());
  const int h = m - dim_p;
  if (h - 1 < n + m - d) throw ConstructionInapplicable("height condition h-1 >= n+m-d fails");

  std::vector<Ideal> others;
  for (const auto& q : mp.primes)
    if (!q.equals(target)) others.push_back(q);
  auto in_all_others = [&](const Polynomial& g) {
    return std::all_of(others.begin(), others.end(), [&](const Ideal& q) { return q.contains(g); });
  };
  // γ in every other minimal prime and outside P; polynomials in the variables
  // outside P avoid P automatically
  std::uint32_t free_vars = ((1u << m) - 1) & ~*mask;
  std::optional<Polynomial> gamma;
  for (const auto& mono : detail::monomials_up_to(ring->arity(), free_vars, kGammaDegreeBound)) {
    Polynomial g = Polynomial::monomial(ring, mono, Scalar(1));
    if (in_all_others(g)) {
      gamma = g;
      break;
    }
  }
  if (!gamma) {
    std::mt19937 rng(12345);
    auto monos = detail::monomials_up_to(ring->arity(), free_vars, 3);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int attempt = 0; attempt < kGammaRandomAttempts && !gamma; ++attempt) {
      std::vector<Term> terms;
      for (const auto& mono : monos) {
        int c = coeff(rng);
        if (c) terms.push_back({mono, ring->field().from_int(c)});
      }
      Polynomial g = Polynomial::from_terms(ring, terms);
      if (!g.is_zero() && in_all_others(g)) gamma = g;
    }
  }
  if (!gamma) throw ConstructionInapplicable("no admissible multiplier found outside the target prime");

  std::vector<Polynomial> f;  // the variables generating P
  for (std::size_t v = 0; v < ring->arity(); ++v)
    if (*mask & (1u << v)) f.push_back(Polynomial::variable(ring, v));

  // (ii): q = (f_1..f_{h-1}) + P^2, I' = q ∩ P_1 ∩ .. ∩ P_s, generators α_r = γ f_r first
  std::vector<Polynomial> qgens(f.begin(), f.end() - 1);
  Ideal target_sq = power(target, 2);
  for (const auto& g : target_sq.generators()) qgens.push_back(g);
  std::vector<Ideal> parts{Ideal(ring, qgens)};
  parts.insert(parts.end(), others.begin(), others.end());
  Ideal I2 = intersect(parts);
  std::vector<Polynomial> gens2;
  for (std::size_t r = 0; r + 1 < f.size(); ++r) gens2.push_back(*gamma * f[r]);
  for (const auto& g : I2.canonical_generators()) gens2.push_back(g);

  // (iii): J = P ∩ P_1 ∩ .. ∩ P_s, generators β_r = γ f_r first
  std::vector<Ideal> parts3{target};
  parts3.insert(parts3.end(), others.begin(), others.end());
  Ideal I3 = intersect(parts3);
  std::vector<Polynomial> gens3;
  for (const auto& fr : f) gens3.push_back(*gamma * fr);
  for (const auto& g : I3.canonical_generators()) gens3.push_back(g);

  Presentation ii(ring, gens2), iii(ring, gens3);
  if (!same_radical(ii.relations(), p.relations()) || !same_radical(iii.relations(), p.relations()))
    throw Error("counterexample changed the radical");
  // verify the violations: P ∈ Sing(S/I') but J_n ⊄ P; P ∈ Spec but J_{n+1} ⊄ P
  if (localization_is_field(ii.relations(), target)) throw Error("target is not singular in the (ii) witness");
  if (variety_contains(target, jn_ideal(ii, n).value_in_s)) throw Error("(ii) witness does not violate the condition");
  if (variety_contains(iii.relations(), jn_ideal(iii, n + 1).value_in_s))
    throw Error("(iii) witness does not violate the condition");
  return CounterexamplePair{ii, iii, *gamma, target};
}

}  // namespace jacwb
