#pragma once

#include <algorithm>
#include <bit>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "jacwb/presentation.hpp"

namespace jacwb {

struct MinimalPrimesReport {
  enum class Method { monomial_combinatorial, factor_split, corpus_supplied };

  std::vector<Ideal> primes;
  bool certified = false;
  Method method = Method::factor_split;

  std::string method_name() const {
    switch (method) {
      case Method::monomial_combinatorial: return "monomial-combinatorial";
      case Method::factor_split: return "factor-split";
      case Method::corpus_supplied: return "corpus-supplied";
    }
    return {};
  }
};

struct EddReport {
  int dim_r = 0;
  std::vector<int> component_dims;
  int edd = 0;
};

namespace detail {

/// A relation c*X_l - g with c a nonzero constant and g free of X_l gives X_l = g/c.
struct LinearSolution {
  std::size_t variable;
  Polynomial value;
};

inline std::optional<LinearSolution> solve_linear(const Polynomial& f) {
  if (f.is_zero() || f.is_constant()) return std::nullopt;
  const auto& ring = f.ring();
  for (std::size_t l = 0; l < ring->arity(); ++l) {
    if (f.degree_in(l) != 1) continue;
    Scalar c(0);
    bool constant_coeff = true;
    std::vector<Term> rest;
    for (const auto& t : f.terms()) {
      if (t.mono[l] == 0) {
        rest.push_back(t);
      } else if (t.mono.degree() == 1) {
        c = t.coeff;
      } else {
        constant_coeff = false;
        break;
      }
    }
    if (!constant_coeff || c.is_zero()) continue;
    Polynomial g = Polynomial::from_sorted_terms(ring, std::move(rest));
    return LinearSolution{l, g.scale(ring->field().neg(ring->field().inv(c)))};
  }
  return std::nullopt;
}

/// Repeatedly eliminates linearly solvable variables. The result lives in the
/// same ring but no longer involves the eliminated variables; it is prime iff
/// the input is.
inline Ideal substitute_linear(const Ideal& I, std::uint32_t* eliminated = nullptr) {
  const auto& ring = I.ring();
  std::vector<Polynomial> gens = I.canonical_generators();
  std::uint32_t done = 0;
  while (true) {
    std::optional<LinearSolution> sol;
    for (const auto& g : gens)
      if ((sol = solve_linear(g))) break;
    if (!sol) break;
    std::vector<Polynomial> images;
    for (std::size_t v = 0; v < ring->arity(); ++v)
      images.push_back(v == sol->variable ? sol->value : Polynomial::variable(ring, v));
    std::vector<Polynomial> next;
    for (const auto& g : gens) {
      Polynomial h = g.substitute(images, ring);
      if (!h.is_zero()) next.push_back(h);
    }
    done |= 1u << sol->variable;
    gens = Ideal(ring, next).canonical_generators();
  }
  if (eliminated) *eliminated = done;
  return Ideal(ring, gens);
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  n = n < 0 ? -n : n;
  for (std::int64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline Scalar evaluate_univariate(const Polynomial& f, std::size_t var, const Scalar& x) {
  const auto& field = f.ring()->field();
  Scalar acc(0);
  for (const auto& t : f.terms()) {
    Scalar p(1);
    for (unsigned k = 0; k < t.mono[var]; ++k) p = field.mul(p, x);
    acc = field.add(acc, field.mul(t.coeff, p));
  }
  return acc;
}

/// Roots in k of a univariate polynomial, where they can be enumerated:
/// rational-root candidates over Q, exhaustive search over small GF(p).
/// nullopt when the search is not feasible.
inline std::optional<std::vector<Scalar>> univariate_roots(const Polynomial& f, std::size_t var) {
  const auto& field = f.ring()->field();
  std::vector<Scalar> roots;
  if (!field.is_rational()) {
    if (field.characteristic() > 70000) return std::nullopt;
    for (std::int64_t a = 0; a < field.characteristic(); ++a)
      if (evaluate_univariate(f, var, Scalar(a)).is_zero()) roots.push_back(Scalar(a));
    return roots;
  }
  // clear denominators
  mpz_class lcm_den = 1;
  for (const auto& t : f.terms()) {
    mpq_class q = t.coeff.to_mpq();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den().get_mpz_t());
  }
  Polynomial g = f.scale(Scalar(lcm_den));
  Scalar lead = g.leading_coeff();
  Scalar low = g.terms().back().coeff;
  if (!lead.is_small() || !low.is_small()) return std::nullopt;
  if (g.terms().back().mono[var] > 0) roots.push_back(Scalar(0));
  std::int64_t a0 = low.small(), ad = lead.small();
  if (std::abs(a0) > (std::int64_t{1} << 40) || std::abs(ad) > (std::int64_t{1} << 40)) return std::nullopt;
  for (auto p : divisors(a0))
    for (auto q : divisors(ad))
      for (int sign : {1, -1}) {
        Scalar x = field.div(Scalar(sign * p), Scalar(q));
        if (std::find(roots.begin(), roots.end(), x) != roots.end()) continue;
        if (evaluate_univariate(f, var, x).is_zero()) roots.push_back(x);
      }
  return roots;
}

/// Univariate in exactly one variable; returns it.
inline std::optional<std::size_t> univariate_variable(const Polynomial& f) {
  std::uint32_t s = f.support();
  if (std::popcount(s) != 1) return std::nullopt;
  return static_cast<std::size_t>(std::countr_zero(s));
}

/// Irreducibility for the shapes the certifier understands:
///   a*x^α + b*x^β with disjoint supports and gcd of all exponents 1,
///   univariate of degree 2 or 3 with no root in k.
inline bool certified_irreducible(const Polynomial& g) {
  if (g.is_zero() || g.is_constant()) return false;
  if (g.degree() == 1) return true;
  if (g.size() == 2) {
    const Monomial& a = g.terms()[0].mono;
    const Monomial& b = g.terms()[1].mono;
    if (a.coprime(b)) {
      unsigned d = 0;
      for (std::size_t v = 0; v < a.arity(); ++v) d = std::gcd(d, a[v] + b[v]);
      if (d == 1) return true;
    }
  }
  if (auto var = univariate_variable(g); var && g.degree() <= 3) {
    auto roots = univariate_roots(g, *var);
    return roots && roots->empty();
  }
  return false;
}

/// Certifies primality of the shapes listed in certified_irreducible, after
/// eliminating linearly solvable variables.
inline bool certified_prime(const Ideal& P) {
  if (P.is_unit()) return false;
  Ideal rest = substitute_linear(P);
  const auto& gens = rest.canonical_generators();
  if (gens.empty()) return true;
  if (gens.size() == 1) return certified_irreducible(gens[0]);
  return false;
}

/// Minimal subsets of variables meeting every support (minimal vertex covers).
inline std::vector<std::uint32_t> minimal_covers(std::span<const std::uint32_t> supports, std::size_t arity) {
  std::vector<std::uint32_t> covers;
  std::vector<std::uint32_t> by_size(1u << arity);
  std::iota(by_size.begin(), by_size.end(), 0u);
  std::stable_sort(by_size.begin(), by_size.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  for (std::uint32_t U : by_size) {
    bool covers_all = std::all_of(supports.begin(), supports.end(), [&](std::uint32_t s) { return (s & U) != 0; });
    if (!covers_all) continue;
    bool minimal = std::none_of(covers.begin(), covers.end(), [&](std::uint32_t c) { return (c & U) == c; });
    if (minimal) covers.push_back(U);
  }
  std::sort(covers.begin(), covers.end());
  return covers;
}

/// Splits along one generator; returns the extra generators of each branch,
/// or nullopt when no generator has a usable factorization.
inline std::optional<std::vector<Polynomial>> split_generator(const Ideal& J) {
  const auto& ring = J.ring();
  for (const auto& g : J.canonical_generators()) {
    // monomial content x^c * h
    Monomial content = g.leading_monomial();
    for (const auto& t : g.terms()) content = Monomial::gcd(content, t.mono);
    if (!content.is_one() && !(content.degree() == 1 && g.size() == 1)) {
      std::vector<Polynomial> branches;
      for (std::size_t v = 0; v < ring->arity(); ++v)
        if (content[v]) branches.push_back(Polynomial::variable(ring, v));
      std::vector<Term> rest;
      for (const auto& t : g.terms()) rest.push_back({t.mono / content, t.coeff});
      Polynomial h = Polynomial::from_sorted_terms(ring, std::move(rest));
      if (!h.is_constant()) branches.push_back(h);
      return branches;
    }
    // univariate with roots
    if (auto var = univariate_variable(g); var && g.degree() >= 2) {
      auto roots = univariate_roots(g, *var);
      if (!roots || roots->empty()) continue;
      std::vector<Polynomial> branches;
      Polynomial x = Polynomial::variable(ring, *var);
      Polynomial cofactor = g;
      for (const auto& r : *roots) {
        Polynomial linear = x - Polynomial::constant(ring, r);
        branches.push_back(linear);
        while (true) {
          // divide out every copy of the root
          if (!evaluate_univariate(cofactor, *var, r).is_zero()) break;
          cofactor = exact_divide(cofactor, linear);
        }
      }
      if (!cofactor.is_constant()) branches.push_back(cofactor);
      return branches;
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline constexpr std::size_t kMaxSplitLeaves = 512;

/// Minimal primes of a proper ideal.
inline MinimalPrimesReport minimal_primes(const Ideal& I) {
  if (I.is_unit()) throw PreconditionFailed("minimal primes of the unit ideal");
  const auto& ring = I.ring();
  MinimalPrimesReport report;
  const auto& gb = I.canonical_generators();
  bool monomial = std::all_of(gb.begin(), gb.end(), [](const Polynomial& g) { return g.is_monomial(); });
  if (monomial) {
    std::vector<std::uint32_t> supports;
    for (const auto& g : gb) supports.push_back(g.support());
    for (auto U : detail::minimal_covers(supports, ring->arity())) report.primes.push_back(Ideal::variables(ring, U));
    report.certified = true;
    report.method = MinimalPrimesReport::Method::monomial_combinatorial;
    return report;
  }

  std::vector<Ideal> leaves;
  std::vector<bool> leaf_prime;
  std::vector<Ideal> work{I};
  while (!work.empty()) {
    Ideal J = std::move(work.back());
    work.pop_back();
    if (J.is_unit()) continue;
    if (auto branches = detail::split_generator(J)) {
      // later branches pushed first so the first branch is explored first
      for (auto it = branches->rbegin(); it != branches->rend(); ++it) {
        std::vector<Polynomial> extra{*it};
        work.push_back(Ideal(ring, sum(J, extra).canonical_generators()));
      }
      if (work.size() + leaves.size() > kMaxSplitLeaves)
        throw BudgetExceeded("prime splitting produced too many branches");
      continue;
    }
    leaf_prime.push_back(detail::certified_prime(J));
    leaves.push_back(Ideal(ring, J.canonical_generators()));
  }

  // keep the minimal leaves; among equal ones the first
  report.certified = true;
  for (std::size_t a = 0; a < leaves.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < leaves.size() && !redundant; ++b) {
      if (a == b || !leaves[a].contains(leaves[b])) continue;
      redundant = !leaves[b].contains(leaves[a]) || b < a;
    }
    if (redundant) continue;
    report.primes.push_back(leaves[a]);
    if (!leaf_prime[a]) report.certified = false;
  }
  std::sort(report.primes.begin(), report.primes.end(),
            [](const Ideal& a, const Ideal& b) { return a.canonical_string() < b.canonical_string(); });
  report.method = MinimalPrimesReport::Method::factor_split;
  return report;
}

/// Validates externally supplied minimal primes against I: each is certified
/// prime, contains I, none contains another, and their intersection lies in √I.
inline MinimalPrimesReport verify_supplied_primes(const Ideal& I, std::vector<Ideal> primes) {
  MinimalPrimesReport report;
  report.method = MinimalPrimesReport::Method::corpus_supplied;
  report.certified = !primes.empty();
  for (const auto& p : primes) {
    require_same_ring(I, p);
    if (!p.contains(I) || !detail::certified_prime(p)) report.certified = false;
  }
  for (std::size_t a = 0; a < primes.size() && report.certified; ++a)
    for (std::size_t b = 0; b < primes.size(); ++b)
      if (a != b && primes[a].contains(primes[b])) report.certified = false;
  if (report.certified && !radical_contains(I, intersect(primes))) report.certified = false;
  report.primes = std::move(primes);
  return report;
}

inline EddReport edd_from_primes(const Presentation& p, const MinimalPrimesReport& mp) {
  if (!mp.certified) throw UncertifiedDecomposition("minimal primes are not certified; edd refused");
  EddReport report;
  report.dim_r = p.dim();
  for (const auto& prime : mp.primes) report.component_dims.push_back(*krull_dimension(prime));
  int top = *std::max_element(report.component_dims.begin(), report.component_dims.end());
  int low = *std::min_element(report.component_dims.begin(), report.component_dims.end());
  if (top != report.dim_r) throw Error("dimension of R disagrees with its top component");
  report.edd = report.dim_r - low;
  return report;
}

inline EddReport edd(const Presentation& p) { return edd_from_primes(p, minimal_primes(p.relations())); }

}  // namespace jacwb
