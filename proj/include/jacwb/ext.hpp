#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jacwb/jacobian.hpp"
#include "jacwb/primes.hpp"

namespace jacwb {

/// Finitely presented module over R = S/I: S^rank modulo the given relation
/// columns and I·S^rank.
struct FpModule {
  Presentation ring;
  std::size_t rank = 0;
  std::vector<ModuleElement> relations;
  std::string name;

  static FpModule free(const Presentation& p, std::size_t rank = 1) { return FpModule{p, rank, {}, rank == 1 ? "R" : "R^" + std::to_string(rank)}; }

  /// k = R/(X_1..X_m); requires the origin to lie on V(I).
  static FpModule residue_field(const Presentation& p) {
    Ideal origin = Ideal::variables(p.ring(), (1u << p.arity()) - 1);
    if (!origin.contains(p.relations())) throw PreconditionFailed("the origin is not a point of Spec R");
    return quotient_module(p, origin, "k");
  }

  static FpModule quotient_module(const Presentation& p, const Ideal& a, std::string name = {}) {
    FpModule M{p, 1, {}, name.empty() ? "R/" + a.canonical_string() : std::move(name)};
    for (const auto& g : a.canonical_generators()) M.relations.push_back(ModuleElement({g}));
    return M;
  }

  static FpModule cokernel(const Presentation& p, const PolyMatrix& A, std::string name) {
    FpModule M{p, A.rows(), {}, std::move(name)};
    for (std::size_t j = 0; j < A.cols(); ++j) M.relations.push_back(ModuleElement(A.column(j)));
    return M;
  }

  /// Annihilator of M as an ideal of S containing I.
  Ideal annihilator() const {
    Ideal out = Ideal::unit(ring.ring());
    auto gb = relation_basis();
    for (std::size_t i = 0; i < rank; ++i) {
      // (U : e_i) through syzygies of [e_i | U]
      std::vector<ModuleElement> gens{ModuleElement::basis(ring.ring(), rank, i)};
      auto els = gb.elements();
      gens.insert(gens.end(), els.begin(), els.end());
      std::vector<Polynomial> first;
      for (const auto& s : syzygies(ring.ring(), rank, gens)) first.push_back(s[0]);
      out = intersect(out, Ideal(ring.ring(), first));
    }
    return out;
  }

  ModuleGroebnerBasis relation_basis() const {
    ModuleGroebnerBasis gb(ring.ring(), rank);
    std::vector<ModuleElement> gens = relations;
    for (std::size_t i = 0; i < rank; ++i)
      for (const auto& f : ring.generators()) gens.push_back(ModuleElement::basis(ring.ring(), rank, i).scaled(f));
    gb.add_all(gens);
    return gb;
  }
};

/// F_L -> ... -> F_1 -> F_0 -> M; maps[j] is the matrix of F_{j+1} -> F_j.
struct Resolution {
  std::vector<std::size_t> ranks;
  std::vector<PolyMatrix> maps;

  std::size_t length() const { return maps.size(); }
  /// F_j is zero beyond the end of a finite resolution.
  std::size_t rank(std::size_t j) const { return j < ranks.size() ? ranks[j] : 0; }
  bool finite = false;
};

inline constexpr std::size_t kMaxResolutionLength = 6;

namespace detail {

inline std::vector<ModuleElement> ideal_times_free(const Presentation& p, std::size_t rank) {
  std::vector<ModuleElement> out;
  for (std::size_t i = 0; i < rank; ++i)
    for (const auto& f : p.generators()) out.push_back(ModuleElement::basis(p.ring(), rank, i).scaled(f));
  return out;
}

/// A generating set of (gens + I·S^rank)/I·S^rank, greedily pruned in
/// increasing degree; minimal when everything is graded.
inline std::vector<ModuleElement> minimize_generators(const Presentation& p, std::size_t rank,
                                                      std::vector<ModuleElement> gens) {
  ModuleGroebnerBasis gb(p.ring(), rank);
  gb.add_all(ideal_times_free(p, rank));
  for (auto& g : gens) g = gb.normal_form(g);
  std::erase_if(gens, [](const ModuleElement& g) { return g.is_zero(); });
  std::stable_sort(gens.begin(), gens.end(), [](const ModuleElement& a, const ModuleElement& b) {
    return a.max_degree() < b.max_degree();
  });
  std::vector<ModuleElement> kept;
  for (const auto& g : gens) {
    if (gb.contains(g)) continue;
    gb.add(g);
    kept.push_back(g);
  }
  return kept;
}

inline PolyMatrix columns_to_matrix(const RingPtr& ring, std::size_t rows, const std::vector<ModuleElement>& cols) {
  PolyMatrix A(ring, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) A.at(i, j) = cols[j][i];
  return A;
}

inline std::vector<ModuleElement> matrix_columns(const PolyMatrix& A) {
  std::vector<ModuleElement> out;
  for (std::size_t j = 0; j < A.cols(); ++j) out.push_back(ModuleElement(A.column(j)));
  return out;
}

}  // namespace detail

/// Free resolution over R by iterated syzygies over S with I-columns appended.
inline Resolution free_resolution(const FpModule& M, std::size_t length) {
  if (length > kMaxResolutionLength)
    throw PreconditionFailed("resolution length is capped at " + std::to_string(kMaxResolutionLength));
  const auto& p = M.ring;
  const auto& ring = p.ring();
  Resolution res;
  res.ranks.push_back(M.rank);
  std::vector<ModuleElement> cols = detail::minimize_generators(p, M.rank, M.relations);
  for (std::size_t step = 0; step < length; ++step) {
    const std::size_t rows = res.ranks.back();
    if (cols.empty()) {
      res.finite = true;
      return res;
    }
    res.maps.push_back(detail::columns_to_matrix(ring, rows, cols));
    res.ranks.push_back(cols.size());
    if (step + 1 == length) break;
    // kernel over R of the last map: syzygies of [cols | I·S^rows], first block
    std::vector<ModuleElement> gens = cols;
    auto extra = detail::ideal_times_free(p, rows);
    gens.insert(gens.end(), extra.begin(), extra.end());
    std::vector<ModuleElement> kernel;
    for (const auto& s : syzygies(ring, rows, gens)) {
      std::vector<Polynomial> head(s.components.begin(), s.components.begin() + static_cast<long>(cols.size()));
      kernel.push_back(ModuleElement(std::move(head)));
    }
    cols = detail::minimize_generators(p, cols.size(), std::move(kernel));
  }
  if (cols.empty()) res.finite = true;
  return res;
}

/// d_j ∘ d_{j+1} lands in I·F_{j-1}, checked exactly.
inline bool resolution_is_complex(const Resolution& res, const Presentation& p) {
  for (std::size_t j = 0; j + 1 < res.maps.size(); ++j) {
    const auto& A = res.maps[j];
    const auto& B = res.maps[j + 1];
    for (std::size_t c = 0; c < B.cols(); ++c)
      for (std::size_t r = 0; r < A.rows(); ++r) {
        Polynomial acc = Polynomial::zero(p.ring());
        for (std::size_t k = 0; k < A.cols(); ++k) acc += A.at(r, k) * B.at(k, c);
        if (!p.relations().contains(acc)) return false;
      }
  }
  return true;
}

struct ExtAnnReport {
  int degree = 0;
  Ideal ann;
  std::optional<Ideal> family_intersection;
  bool ext_vanishes = false;
  static constexpr const char* caveat =
      "family intersections bound the cohomology annihilator from above only; ca is never claimed computed";
};

namespace detail {

/// Block vector in S^{blocks·t} with `v` placed in block `b`.
inline ModuleElement place(const RingPtr& ring, std::size_t blocks, std::size_t t, std::size_t b,
                           const ModuleElement& v) {
  ModuleElement out = ModuleElement::zero(ring, blocks * t);
  for (std::size_t s = 0; s < t; ++s) out[b * t + s] = v[s];
  return out;
}

/// Groebner basis of the relations of N^blocks, assembled from block copies of
/// one basis for N (copies in disjoint positions never form pairs).
inline ModuleGroebnerBasis power_basis(const FpModule& N, std::size_t blocks) {
  const auto& ring = N.ring.ring();
  auto base = N.relation_basis().elements();
  std::vector<ModuleElement> out;
  for (std::size_t b = 0; b < blocks; ++b)
    for (const auto& r : base) out.push_back(place(ring, blocks, N.rank, b, r));
  return ModuleGroebnerBasis::from_basis(ring, blocks * N.rank, out);
}

/// Image of e_{a,s} under Hom(d, N): Hom(F_j, N) -> Hom(F_{j+1}, N), where d is
/// the matrix of F_{j+1} -> F_j.
inline ModuleElement hom_image(const RingPtr& ring, const PolyMatrix& d, std::size_t t, std::size_t a, std::size_t s) {
  ModuleElement out = ModuleElement::zero(ring, d.cols() * t);
  for (std::size_t c = 0; c < d.cols(); ++c) out[c * t + s] = d.at(a, c);
  return out;
}

}  // namespace detail

/// Ann_R Ext^i_R(M, N) from a resolution of M of length at least i+1 (or finite).
inline ExtAnnReport ext_annihilator(const Resolution& res, const FpModule& N, int i) {
  const auto& p = N.ring;
  const auto& ring = p.ring();
  const std::size_t t = N.rank;
  const auto ui = static_cast<std::size_t>(i);
  if (i < 0) throw PreconditionFailed("Ext degree must be non-negative");
  if (!res.finite && res.length() < ui + 1)
    throw PreconditionFailed("resolution too short for Ext^" + std::to_string(i));
  ExtAnnReport report;
  report.degree = i;
  const std::size_t ri = res.rank(ui);
  if (ri == 0) {
    report.ann = Ideal::unit(ring);
    report.ext_vanishes = true;
    return report;
  }
  const std::size_t dim = ri * t;

  // cycles: z with Hom(d_{i+1}, N)(z) in the relations of N^{r_{i+1}}
  std::vector<ModuleElement> cycles;
  if (ui < res.length()) {
    const auto& d = res.maps[ui];
    std::vector<ModuleElement> gens;
    for (std::size_t a = 0; a < ri; ++a)
      for (std::size_t s = 0; s < t; ++s) gens.push_back(detail::hom_image(ring, d, t, a, s));
    cycles = detail::power_basis(N, d.cols()).kernel_modulo(gens);
  } else {
    for (std::size_t k = 0; k < dim; ++k) cycles.push_back(ModuleElement::basis(ring, dim, k));
  }

  // boundaries: image of Hom(d_i, N) plus relations of N^{r_i}
  ModuleGroebnerBasis bgb = detail::power_basis(N, ri);
  if (ui > 0) {
    const auto& d = res.maps[ui - 1];
    std::vector<ModuleElement> images;
    for (std::size_t b = 0; b < d.rows(); ++b)
      for (std::size_t s = 0; s < t; ++s) images.push_back(detail::hom_image(ring, d, t, b, s));
    bgb.add_all(images);
  }

  // keep only cycles that are new modulo boundaries and the cycles kept so far
  std::stable_sort(cycles.begin(), cycles.end(), [](const ModuleElement& a, const ModuleElement& b) {
    return a.max_degree() < b.max_degree();
  });
  ModuleGroebnerBasis span = bgb;
  std::vector<ModuleElement> kept;
  for (const auto& z : cycles) {
    ModuleElement zr = span.normal_form(z);
    if (zr.is_zero()) continue;
    kept.push_back(bgb.normal_form(z));
    span.add(zr);
  }

  Ideal ann = Ideal::unit(ring);
  bool vanishes = kept.empty();
  for (const auto& zr : kept) ann = intersect(ann, Ideal(ring, bgb.colon(zr)));
  report.ann = vanishes ? Ideal::unit(ring) : ann;
  report.ext_vanishes = vanishes;
  return report;
}

inline ExtAnnReport ext_annihilator(const FpModule& M, const FpModule& N, int i) {
  if (!same_ring(M.ring.ring(), N.ring.ring()) || !M.ring.relations().equals(N.ring.relations()))
    throw RingMismatch("modules live over different rings");
  return ext_annihilator(free_resolution(M, static_cast<std::size_t>(i) + 1), N, i);
}

using ModulePair = std::pair<FpModule, FpModule>;

inline constexpr std::size_t kMaxFamilySize = 8;

/// {k, R, R/P_j for certified minimal primes P_j, coker of the Jacobian matrix},
/// truncated to the first eight.
inline std::vector<FpModule> default_family(const Presentation& p) {
  std::vector<FpModule> out;
  try {
    out.push_back(FpModule::residue_field(p));
  } catch (const PreconditionFailed&) {
  }
  out.push_back(FpModule::free(p));
  try {
    auto mp = minimal_primes(p.relations());
    if (mp.certified)
      for (const auto& P : mp.primes) out.push_back(FpModule::quotient_module(p, P));
  } catch (const BudgetExceeded&) {
  }
  if (!p.generators().empty()) out.push_back(FpModule::cokernel(p, jacobian_matrix(p), "coker Jac"));
  if (out.size() > kMaxFamilySize) out.erase(out.begin() + kMaxFamilySize, out.end());
  return out;
}

inline std::vector<ModulePair> all_pairs(const std::vector<FpModule>& family) {
  std::vector<ModulePair> out;
  for (const auto& M : family)
    for (const auto& N : family) out.emplace_back(M, N);
  return out;
}

/// ∩ over the family of Ann Ext^i(M, N); each distinct M is resolved once.
inline ExtAnnReport ca_upper_bound(const Presentation& p, int i, const std::vector<ModulePair>& family) {
  if (family.empty()) throw PreconditionFailed("ca bound needs a nonempty family");
  std::map<std::string, Resolution> resolutions;
  Ideal bound = Ideal::unit(p.ring());
  for (const auto& [M, N] : family) {
    auto it = resolutions.find(M.name);
    if (it == resolutions.end())
      it = resolutions.emplace(M.name, free_resolution(M, static_cast<std::size_t>(i) + 1)).first;
    bound = intersect(bound, ext_annihilator(it->second, N, i).ann);
  }
  ExtAnnReport report;
  report.degree = i;
  report.ann = bound;
  report.family_intersection = bound;
  report.ext_vanishes = bound.is_unit();
  return report;
}

struct StabilityReport {
  std::vector<int> degrees;
  std::vector<Ideal> bounds;
  bool radicals_agree = false;
  static constexpr const char* caveat =
      "evidence only: sampled annihilators are upper bounds, agreement of their radicals is not a verification";
};

/// Radicals of the sampled ca bounds for each degree in `degrees` (which must start at d+1).
inline StabilityReport stability_evidence(const Presentation& p, const std::vector<ModulePair>& family,
                                          const std::vector<int>& degrees) {
  if (degrees.empty() || degrees.front() != p.codim() + 1)
    throw PreconditionFailed("stability degrees must start at d+1 = " + std::to_string(p.codim() + 1));
  StabilityReport report;
  report.degrees = degrees;
  int top = *std::max_element(degrees.begin(), degrees.end());
  std::map<std::string, Resolution> resolutions;
  for (int i : degrees) {
    Ideal bound = Ideal::unit(p.ring());
    for (const auto& [M, N] : family) {
      auto it = resolutions.find(M.name);
      if (it == resolutions.end())
        it = resolutions.emplace(M.name, free_resolution(M, static_cast<std::size_t>(top) + 1)).first;
      bound = intersect(bound, ext_annihilator(it->second, N, i).ann);
    }
    report.bounds.push_back(bound);
  }
  report.radicals_agree = true;
  for (std::size_t k = 1; k < report.bounds.size(); ++k)
    if (!same_radical(report.bounds[0], report.bounds[k])) report.radicals_agree = false;
  return report;
}

/// For each top-dimensional certified minimal prime P: whether the sampled
/// bound at degree d already lies in P. Upper bounds cannot refute ca^d ⊆ P,
/// so a false entry only means the family was too small to show it.
inline std::vector<std::pair<Ideal, bool>> top_component_containment(const Presentation& p, const Ideal& bound_at_d) {
  std::vector<std::pair<Ideal, bool>> out;
  auto mp = minimal_primes(p.relations());
  if (!mp.certified) throw UncertifiedDecomposition("top components need certified minimal primes");
  for (const auto& P : mp.primes)
    if (*krull_dimension(P) == p.dim()) out.emplace_back(P, P.contains(bound_at_d));
  return out;
}

}  // namespace jacwb
