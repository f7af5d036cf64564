#pragma once

#include <span>
#include <string>
#include <vector>

#include "jacwb/matrix.hpp"
#include "jacwb/presentation.hpp"
#include "jacwb/primes.hpp"

namespace jacwb {

/// (∂f_j/∂X_i): rows indexed by variables, columns by the given generators.
inline PolyMatrix jacobian_matrix(const RingPtr& ring, std::span<const Polynomial> gens) {
  PolyMatrix J(ring, ring->arity(), gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < ring->arity(); ++i) J.at(i, j) = gens[j].derivative(i);
  return J;
}

inline PolyMatrix jacobian_matrix(const Presentation& p) { return jacobian_matrix(p.ring(), p.generators()); }

/// J_n of R = S/I, held as its preimage I_{n+d}(Jac) + I in S.
struct JnIdeal {
  Presentation presentation;
  int n = 0;
  int minor_size = 0;
  Ideal value_in_s;

  bool is_jacobian_ideal() const { return n == 0; }
};

inline JnIdeal jn_ideal(const Presentation& p, int n) {
  int r = n + p.codim();
  Ideal minors = minors_ideal(jacobian_matrix(p), r);
  return JnIdeal{p, n, r, sum(minors, p.relations())};
}

/// B = A with the column (Σ_j c_j a_ij + b_i) appended; checks
/// I_r(A) ⊆ I_r(B) ⊆ I_r(A) + (b).
inline bool matrix_border_check(const PolyMatrix& A, std::span<const Polynomial> b, std::span<const Polynomial> c,
                                int r) {
  if (b.size() != A.rows() || c.size() != A.cols()) throw PreconditionFailed("border data has wrong shape");
  std::vector<Polynomial> column;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    Polynomial entry = b[i];
    for (std::size_t j = 0; j < A.cols(); ++j) entry += c[j] * A.at(i, j);
    column.push_back(entry);
  }
  PolyMatrix B = A.append_column(column);
  Ideal IA = minors_ideal(A, r);
  Ideal IB = minors_ideal(B, r);
  Ideal upper = sum(IA, b);
  return IB.contains(IA) && upper.contains(IB);
}

/// I_r(Jac(gens_a)) + I = I_r(Jac(gens_b)) + I for two generating sets of I.
inline bool check_generator_invariance(const Ideal& I, std::span<const Polynomial> gens_a,
                                       std::span<const Polynomial> gens_b, int r) {
  const auto& ring = I.ring();
  Ideal A(ring, {gens_a.begin(), gens_a.end()});
  Ideal B(ring, {gens_b.begin(), gens_b.end()});
  if (!A.equals(I) || !B.equals(I)) throw PreconditionFailed("generator lists do not generate the same ideal");
  Ideal left = sum(minors_ideal(jacobian_matrix(ring, gens_a), r), I);
  Ideal right = sum(minors_ideal(jacobian_matrix(ring, gens_b), r), I);
  return left.equals(right);
}

/// Result of eliminating variables through relations X_l - g (g free of X_l).
struct MinimizedPresentation {
  Presentation result;
  bool changed = false;
  /// image of each original variable in the new ring
  std::vector<Polynomial> forward;
  /// image of each new variable in the original ring
  std::vector<Polynomial> backward;
};

inline MinimizedPresentation minimize_presentation(const Presentation& p) {
  RingPtr ring = p.ring();
  std::vector<Polynomial> relations = p.generators();
  // images of the original variables, expressed in the current ring
  std::vector<Polynomial> forward;
  for (std::size_t i = 0; i < ring->arity(); ++i) forward.push_back(Polynomial::variable(ring, i));
  std::vector<std::size_t> original_index(ring->arity());
  for (std::size_t i = 0; i < ring->arity(); ++i) original_index[i] = i;
  bool changed = false;

  while (true) {
    std::optional<detail::LinearSolution> sol;
    std::size_t which = 0;
    for (; which < relations.size(); ++which)
      if ((sol = detail::solve_linear(relations[which]))) break;
    if (!sol) break;
    changed = true;
    const std::size_t l = sol->variable;
    std::vector<std::string> vars;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < ring->arity(); ++i)
      if (i != l) {
        vars.push_back(ring->variables()[i]);
        keep.push_back(i);
      }
    RingPtr smaller = make_ring(ring->field(), vars, ring->order());
    // substitution into the smaller ring: X_l -> g, others keep their names
    std::vector<Polynomial> images;
    for (std::size_t i = 0, k = 0; i < ring->arity(); ++i) {
      if (i == l) {
        images.push_back(Polynomial::zero(smaller));
      } else {
        images.push_back(Polynomial::variable(smaller, k++));
      }
    }
    images[l] = sol->value.substitute(images, smaller);
    std::vector<Polynomial> next;
    for (std::size_t j = 0; j < relations.size(); ++j) {
      if (j == which) continue;
      Polynomial h = relations[j].substitute(images, smaller);
      if (!h.is_zero()) next.push_back(h);
    }
    for (auto& f : forward) f = f.substitute(images, smaller);
    std::vector<std::size_t> idx;
    for (auto i : keep) idx.push_back(original_index[i]);
    original_index = idx;
    relations = std::move(next);
    ring = smaller;
  }

  std::vector<Polynomial> backward;
  for (auto i : original_index) backward.push_back(Polynomial::variable(p.ring(), i));
  return MinimizedPresentation{Presentation(ring, relations), changed, forward, backward};
}

namespace detail {

inline std::vector<Polynomial> map_all(std::span<const Polynomial> polys, std::span<const Polynomial> images,
                                       const RingPtr& target) {
  std::vector<Polynomial> out;
  for (const auto& f : polys) out.push_back(f.substitute(images, target));
  return out;
}

}  // namespace detail

/// Verifies that `iso` (images of p1's variables in p2's ring) and `inverse`
/// induce mutually inverse isomorphisms S1/I1 <-> S2/I2, then compares the
/// image of J_n(p1) with J_n(p2).
inline bool check_presentation_invariance(const Presentation& p1, const Presentation& p2,
                                          std::span<const Polynomial> iso, std::span<const Polynomial> inverse,
                                          int n) {
  const auto& r1 = p1.ring();
  const auto& r2 = p2.ring();
  if (iso.size() != r1->arity() || inverse.size() != r2->arity())
    throw IsoVerificationFailed("substitution maps have the wrong number of images");
  for (const auto& f : detail::map_all(p1.generators(), iso, r2))
    if (!p2.relations().contains(f)) throw IsoVerificationFailed("a relation of the source does not map into the target relations");
  for (const auto& g : detail::map_all(p2.generators(), inverse, r1))
    if (!p1.relations().contains(g)) throw IsoVerificationFailed("a relation of the target does not map back into the source relations");
  for (std::size_t i = 0; i < r1->arity(); ++i) {
    Polynomial x = Polynomial::variable(r1, i);
    if (!p1.relations().contains(iso[i].substitute(inverse, r1) - x))
      throw IsoVerificationFailed("inverse does not undo the map on " + r1->variables()[i]);
  }
  for (std::size_t j = 0; j < r2->arity(); ++j) {
    Polynomial y = Polynomial::variable(r2, j);
    if (!p2.relations().contains(inverse[j].substitute(iso, r2) - y))
      throw IsoVerificationFailed("map does not undo the inverse on " + r2->variables()[j]);
  }
  JnIdeal j1 = jn_ideal(p1, n);
  JnIdeal j2 = jn_ideal(p2, n);
  Ideal image = sum(Ideal(r2, detail::map_all(j1.value_in_s.generators(), iso, r2)), p2.relations());
  return image.equals(j2.value_in_s);
}

}  // namespace jacwb
