// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "jacwb/corpus.hpp"
#include "jacwb/ext.hpp"
#include "jacwb/loci.hpp"
#include "jacwb/parser.hpp"

using namespace jacwb;
namespace fs = std::filesystem;

namespace {

// Pinned parameters. Every comparison is exact; the only tolerances are time limits.
constexpr int kBorderInstancesGF101 = 200;
constexpr int kBorderInstancesQ = 50;
constexpr std::size_t kBorderMaxDim = 4;
constexpr int kBorderMaxMinor = 4;
constexpr int kGeneratorChanges = 10;
constexpr int kInvarianceMaxMinor = 3;
constexpr int kRadicalPairs = 100;
constexpr unsigned kPowerSearchBound = 20;
constexpr int kSyzygyInstances = 20;
constexpr unsigned kSyzygyDegreeBound = 3;
constexpr std::int64_t kOraclePrime = 101;
constexpr double kCaseSeconds = 10.0;
constexpr double kSuiteSeconds = 180.0;
constexpr unsigned kSeed = 20240601;

const fs::path kCorpus = JACWB_CORPUS_DIR;

struct Verdict {
  bool pass = true;
  std::string detail;
};

/// Collects failures of one criterion and enforces the per-case time limit.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  template <class F>
  void timed_case(const std::string& name, F&& body) {
    auto start = std::chrono::steady_clock::now();
    body();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    slowest_ = std::max(slowest_, s);
    ++cases_;
    expect(s < kCaseSeconds, name + " took " + std::to_string(s) + " s");
  }
  Verdict verdict(const std::string& summary) const {
    std::ostringstream out;
    out << summary << "; " << cases_ << " cases, slowest " << slowest_ << " s";
    if (!failures_.empty()) {
      out << "; " << failures_.size() << " failures, first: " << failures_.front();
    }
    return {failures_.empty(), out.str()};
  }

 private:
  std::vector<std::string> failures_;
  std::size_t cases_ = 0;
  double slowest_ = 0;
};

Ideal I(const RingPtr& r, const std::string& s) { return Ideal(r, parse_generators(r, s)); }
Presentation Pres(const RingPtr& r, const std::string& s) { return Presentation(r, parse_generators(r, s)); }

std::vector<PresentationFile> corpus() {
  std::vector<PresentationFile> out;
  for (const auto& path : corpus_files(kCorpus)) out.push_back(parse_presentation(read_file(path)));
  return out;
}

/// Sparse random polynomial: each of `terms` slots holds a random monomial of degree <= max_deg.
Polynomial random_polynomial(std::mt19937& rng, const RingPtr& r, unsigned max_deg, int terms, double zero_chance) {
  std::bernoulli_distribution zero(zero_chance);
  if (zero(rng)) return Polynomial::zero(r);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  std::uniform_int_distribution<std::size_t> var(0, r->arity() - 1);
  Polynomial f = Polynomial::zero(r);
  for (int t = 0; t < terms; ++t) {
    Monomial m(r->arity());
    for (unsigned d = deg(rng); d > 0; --d) {
      std::size_t v = var(rng);
      m.set(v, m[v] + 1);
    }
    f += Polynomial::monomial(r, m, r->field().from_int(coeff(rng)));
  }
  return f;
}

// ---- criteria ----

Verdict nhensu_example() {
  Checker c;
  for (const auto& k : {CoeffField::rationals(), CoeffField::prime(101)}) {
    const std::string field = k.is_rational() ? "Q" : "GF(101)";
    c.timed_case("nhensu " + field, [&] {
      auto r = make_ring(k, {"X", "Y1", "Y2", "Y3"});
      auto p = Pres(r, "(X*Y1, X*Y2, X*Y3)");
      Ideal j1 = jn_ideal(p, 1).value_in_s;
      c.expect(j1.equals(sum(I(r, "(X^2, X*Y1, X*Y2, X*Y3)"), p.relations())), field + ": J_1 = " + j1.canonical_string());
      c.expect(edd(p).edd == 2, field + ": edd");
      Ideal sing = I(r, "(X, Y1, Y2, Y3)");
      c.expect(variety_contains(sing, j1), field + ": Sing not inside V(J_1)");
      Ideal j2 = jn_ideal(p, 2).value_in_s;
      c.expect(!variety_contains(p.relations(), j2), field + ": Spec = V(J_2)");
      auto mp = minimal_primes(p.relations());
      auto witness = witness_prime(mp, j2);
      c.expect(witness && witness->equals(I(r, "(Y1, Y2, Y3)")), field + ": witness prime");
      // the supplied locus is the meeting point of the two components, both smooth at their generic points
      for (const auto& q : mp.primes) c.expect(localization_is_field(p.relations(), q), field + ": generic point singular");
    });
  }
  return c.verdict("J_1, edd, Sing ⊆ V(J_1), witness (Y1, Y2, Y3) over Q and GF(101)");
}

Verdict fixring_example() {
  Checker c;
  c.timed_case("fixring", [&] {
    auto r = make_ring(CoeffField::rationals(), {"X", "Y", "Z"});
    Ideal rel = power(I(r, "(X*Y, X*Z)"), 2);
    Presentation p(r, rel.generators());
    Ideal j0 = jn_ideal(p, 0).value_in_s;
    for (const auto& g : j0.generators()) c.expect(radical_membership(g, rel), "J_0 generator not nilpotent: " + g.to_string());
    c.expect(variety_contains(rel, j0), "Spec != V(J_0)");
    c.expect(edd(p).edd == 1, "edd");
  });
  return c.verdict("J_0 nilpotent mod I, edd = 1");
}

Verdict closing_example() {
  Checker c;
  c.timed_case("closing", [&] {
    auto r = make_ring(CoeffField::rationals(), {"X", "Y1", "Y2", "Y3"});
    auto p = Pres(r, "(X*Y1^2, X*Y2, X*Y3)");
    auto x2 = parse_polynomial(r, "X^2");
    c.expect(jn_ideal(p, 1).value_in_s.contains(x2), "X^2 outside J_1");
    c.expect(!radical_membership(x2, sum(I(r, "(Y1, Y2, Y3)"), p.relations())), "X^2 in radical of (Y) + I");
  });
  return c.verdict("X^2 ∈ J_1, X^2 ∉ √((Y) + I)");
}

Verdict border_suite() {
  Checker c;
  std::mt19937 rng(kSeed);
  std::uniform_int_distribution<std::size_t> dim(1, kBorderMaxDim);
  std::bernoulli_distribution zero_border(0.2);
  int nontrivial = 0;
  auto run = [&](const CoeffField& k, int count) {
    auto r = make_ring(k, {"X", "Y", "Z"});
    for (int t = 0; t < count; ++t) {
      std::size_t rows = dim(rng), cols = dim(rng);
      // sizes where I_r(B) can be nonzero
      std::size_t top = std::min<std::size_t>(kBorderMaxMinor, std::min(rows, cols + 1));
      int rk = static_cast<int>(std::uniform_int_distribution<std::size_t>(1, top)(rng));
      PolyMatrix A(r, rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) A.at(i, j) = random_polynomial(rng, r, 2, 2, 0.3);
      std::vector<Polynomial> b, cs;
      bool zero = zero_border(rng);
      for (std::size_t i = 0; i < rows; ++i) b.push_back(zero ? Polynomial::zero(r) : random_polynomial(rng, r, 2, 2, 0.3));
      for (std::size_t j = 0; j < cols; ++j) cs.push_back(random_polynomial(rng, r, 1, 2, 0.3));
      std::string name = (k.is_rational() ? "Q #" : "GF(101) #") + std::to_string(t);
      c.timed_case(name, [&] { c.expect(matrix_border_check(A, b, cs, rk), name); });
      nontrivial += !minors_ideal(A, rk).is_zero();
    }
  };
  run(CoeffField::prime(101), kBorderInstancesGF101);
  run(CoeffField::rationals(), kBorderInstancesQ);
  return c.verdict("I_r(A) ⊆ I_r(B) ⊆ I_r(A) + (b), " + std::to_string(nontrivial) + " with I_r(A) != 0");
}

/// Random change of generators: append a combination, permute, scale one by a unit.
std::vector<Polynomial> change_generators(std::mt19937& rng, const RingPtr& r, std::vector<Polynomial> gens) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  if (!gens.empty()) {
    Polynomial combo = Polynomial::zero(r);
    for (const auto& g : gens) combo += random_polynomial(rng, r, 1, 1, 0.3) * g;
    gens.push_back(combo);
    std::shuffle(gens.begin(), gens.end(), rng);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    int u = 0;
    while (u == 0 || r->field().from_int(u).is_zero()) u = coeff(rng);
    auto& g = gens[pick(rng)];
    g = g.scale(r->field().from_int(u));
  }
  return gens;
}

Verdict generator_invariance() {
  Checker c;
  std::mt19937 rng(kSeed + 1);
  auto files = corpus_files(kCorpus);
  for (const auto& path : files) {
    auto f = parse_presentation(read_file(path));
    auto p = f.presentation();
    for (int t = 0; t < kGeneratorChanges; ++t) {
      auto changed = change_generators(rng, f.ring, f.relations);
      std::string name = path.stem().string() + " #" + std::to_string(t);
      c.timed_case(name, [&] {
        for (int rk = 1; rk <= kInvarianceMaxMinor; ++rk)
          c.expect(check_generator_invariance(p.relations(), f.relations, changed, rk), name + " r=" + std::to_string(rk));
      });
    }
  }
  return c.verdict(std::to_string(files.size()) + " corpus ideals × " + std::to_string(kGeneratorChanges) + " changes, r ≤ 3");
}

Verdict local_uniqueness() {
  Checker c;
  c.timed_case("two presentations", [&] {
    auto rxy = make_ring(CoeffField::rationals(), {"X", "Y"});
    auto rx = make_ring(CoeffField::rationals(), {"X"});
    auto big = Pres(rxy, "(Y - X^3, Y^2)");
    auto small = Pres(rx, "(X^6)");
    // X -> X, Y -> X^3 and back X -> X
    std::vector<Polynomial> forward{parse_polynomial(rx, "X"), parse_polynomial(rx, "X^3")};
    std::vector<Polynomial> backward{parse_polynomial(rxy, "X")};
    c.expect(check_presentation_invariance(big, small, forward, backward, 0), "J_0 images differ");
    std::vector<Polynomial> image;
    Ideal j0 = jn_ideal(big, 0).value_in_s;
    for (const auto& g : j0.generators()) image.push_back(g.substitute(forward, rx));
    Ideal image_ideal = sum(Ideal(rx, image), small.relations());
    Ideal expected = I(rx, "(X^5)");
    c.expect(image_ideal.equals(expected), "image of J_0 = " + image_ideal.canonical_string());
    c.expect(jn_ideal(small, 0).value_in_s.equals(expected), "J_0 of k[X]/(X^6)");
  });
  return c.verdict("both J_0 = (X^5)");
}

Verdict parabola() {
  Checker c;
  c.timed_case("parabola", [&] {
    auto r = make_ring(CoeffField::rationals(), {"X", "Y"});
    auto p = Pres(r, "(Y - X^2)");
    c.expect(jn_ideal(p, 0).value_in_s.is_unit(), "J_0 != (1)");
    auto locus = singular_locus(p);
    c.expect(locus.provenance == LocusReport::Provenance::jacobian_criterion, "locus not from the criterion");
    c.expect(locus.sing && locus.sing->is_unit(), "Sing not empty");
    c.expect(edd(p).edd == 0, "edd");
  });
  return c.verdict("J_0 = (1), Sing = ∅, edd = 0");
}

Verdict socle_ext() {
  Checker c;
  c.timed_case("socle ring", [&] {
    auto r = make_ring(CoeffField::rationals(), {"X", "Y"});
    auto p = Pres(r, "(X^2, X*Y)");
    auto k = FpModule::residue_field(p);
    auto R = FpModule::free(p);
    auto RX = FpModule::quotient_module(p, I(r, "(X)"));
    c.expect(ext_annihilator(k, k, 1).ann.contains(parse_polynomial(r, "X")), "X outside Ann Ext^1(k,k)");
    std::vector<ModulePair> family{{k, k}, {RX, k}, {k, R}, {RX, RX}};
    for (const auto& [M, N] : family)
      c.expect(ext_annihilator(M, N, 2).ann.contains(parse_polynomial(r, "Y")), "Y outside Ann Ext^2(" + M.name + ", " + N.name + ")");
    auto bound = ca_upper_bound(p, 2, family);
    c.expect(bound.ann.equals(sum(I(r, "(X, Y)"), p.relations())), "ca bound = " + bound.ann.canonical_string());
  });
  return c.verdict("X ∈ Ann Ext^1(k,k), Y ∈ Ann Ext^2, ca bound at 2 = (X, Y) + I");
}

Verdict stability() {
  Checker c;
  std::size_t rings = 0;
  for (const auto& path : corpus_files(kCorpus)) {
    auto p = parse_presentation(read_file(path)).presentation();
    int d = p.codim();
    ++rings;
    c.timed_case(path.stem().string(), [&] {
      auto report = stability_evidence(p, all_pairs(default_family(p)), {d + 1, d + 2, d + 3});
      c.expect(report.radicals_agree, path.stem().string() + ": radicals differ");
    });
  }
  return c.verdict(std::to_string(rings) + " corpus rings, degrees d+1..d+3 (evidence from upper bounds only)");
}

Verdict constructions() {
  Checker c;
  auto r = make_ring(CoeffField::rationals(), {"X", "Y1", "Y2", "Y3"});
  auto p = Pres(r, "(X*Y1, X*Y2, X*Y3)");
  c.timed_case("edd reducer", [&] {
    auto q = p;
    int steps = 0;
    for (int e = edd(q).edd; e > 0; e = edd(q).edd, ++steps) q = edd_reducer(q, minimal_primes(q.relations()));
    c.expect(steps == 2, "reducer took " + std::to_string(steps) + " steps");
    c.expect(edd(q).edd == 0, "final edd");
  });
  c.timed_case("counterexample builder", [&] {
    auto pair = counterexample_builder(p, I(r, "(Y1, Y2, Y3)"), 0);
    for (const auto* out : {&pair.violates_ii, &pair.violates_iii})
      c.expect(same_radical(out->relations(), p.relations()), "radical changed");
    // (ii) fails: P is a minimal prime of I' where the localization is not a field, and J_0 ⊄ P
    c.expect(pair.prime.contains(pair.violates_ii.relations()), "prime not over I'");
    c.expect(!localization_is_field(pair.violates_ii.relations(), pair.prime), "P regular for I'");
    c.expect(!variety_contains(pair.prime, jn_ideal(pair.violates_ii, 0).value_in_s), "Sing ⊆ V(J_0) for I'");
    // (iii) fails: Spec ≠ V(J_1)
    c.expect(!variety_contains(pair.violates_iii.relations(), jn_ideal(pair.violates_iii, 1).value_in_s),
             "Spec = V(J_1) for I''");
  });
  return c.verdict("edd 2 → 0 in two steps; counterexamples keep the radical and fail (ii), (iii)");
}

// ---- oracles for criterion 11 ----

/// f ∈ √I by searching f^k ∈ I for k <= kPowerSearchBound.
bool power_search(const Polynomial& f, const Ideal& I) {
  Polynomial g = f;
  for (unsigned k = 1; k <= kPowerSearchBound; ++k, g = g * f)
    if (I.contains(g)) return true;
  return false;
}

std::int64_t mod(std::int64_t a) { return ((a % kOraclePrime) + kOraclePrime) % kOraclePrime; }

std::int64_t inverse(std::int64_t a) {
  std::int64_t result = 1, base = mod(a);
  for (std::int64_t e = kOraclePrime - 2; e > 0; e >>= 1, base = base * base % kOraclePrime)
    if (e & 1) result = result * base % kOraclePrime;
  return result;
}

/// Basis of the null space of a dense matrix over GF(kOraclePrime).
std::vector<std::vector<std::int64_t>> null_space(std::vector<std::vector<std::int64_t>> a, std::size_t cols) {
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][col] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[row], a[sel]);
    std::int64_t inv = inverse(a[row][col]);
    for (auto& x : a[row]) x = x * inv % kOraclePrime;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col] == 0) continue;
      std::int64_t factor = a[i][col];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = mod(a[i][j] - factor * a[row][j]);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<std::int64_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = mod(-a[i][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Monomial> monomials_of_degree_at_most(std::size_t arity, unsigned degree) {
  std::vector<Monomial> out{Monomial(arity)};
  for (unsigned d = 1; d <= degree; ++d) {
    std::vector<Monomial> next;
    for (const auto& m : out)
      if (m.degree() == d - 1)
        for (std::size_t v = 0; v < arity; ++v) {
          Monomial n = m;
          n.set(v, n[v] + 1);
          if (std::find(out.begin(), out.end(), n) == out.end() && std::find(next.begin(), next.end(), n) == next.end())
            next.push_back(n);
        }
    out.insert(out.end(), next.begin(), next.end());
  }
  return out;
}

/// All relations Σ h_i g_i = 0 with deg h_i <= kSyzygyDegreeBound, by dense linear algebra.
std::vector<ModuleElement> bounded_kernel(const RingPtr& r, std::size_t rank, const std::vector<ModuleElement>& gens) {
  auto multipliers = monomials_of_degree_at_most(r->arity(), kSyzygyDegreeBound);
  // unknown (i, m) is the coefficient of m in h_i; equations indexed by (component, monomial)
  std::map<std::pair<std::size_t, std::vector<unsigned>>, std::size_t> equation;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> columns;
  for (const auto& g : gens)
    for (const auto& m : multipliers) {
      std::vector<std::pair<std::size_t, std::int64_t>> column;
      for (std::size_t comp = 0; comp < rank; ++comp)
        for (const auto& t : g[comp].terms()) {
          Monomial product = t.mono * m;
          std::vector<unsigned> exps(r->arity());
          for (std::size_t v = 0; v < r->arity(); ++v) exps[v] = product[v];
          auto key = std::make_pair(comp, std::move(exps));
          auto it = equation.try_emplace(key, equation.size()).first;
          column.emplace_back(it->second, mod(t.coeff.small()));
        }
      columns.push_back(std::move(column));
    }
  std::vector<std::vector<std::int64_t>> a(equation.size(), std::vector<std::int64_t>(columns.size(), 0));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [i, v] : columns[j]) a[i][j] = mod(a[i][j] + v);
  std::vector<ModuleElement> out;
  for (const auto& v : null_space(std::move(a), columns.size())) {
    ModuleElement h = ModuleElement::zero(r, gens.size());
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j]) h[j / multipliers.size()] += Polynomial::monomial(r, multipliers[j % multipliers.size()], r->field().from_int(v[j]));
    out.push_back(std::move(h));
  }
  return out;
}

Verdict oracle_cross_checks() {
  Checker c;
  std::mt19937 rng(kSeed + 2);
  auto files = corpus();
  std::uniform_int_distribution<std::size_t> pick_file(0, files.size() - 1);
  int in_radical = 0;
  for (int t = 0; t < kRadicalPairs; ++t) {
    const auto& f = files[pick_file(rng)];
    Ideal rel(f.ring, f.relations);
    // products of at most two variables and their sums hit both outcomes on the corpus
    Polynomial g = random_polynomial(rng, f.ring, 2, 2, 0.0);
    if (g.is_zero()) g = Polynomial::variable(f.ring, 0);
    std::string name = "radical #" + std::to_string(t) + " " + g.to_string() + " over " + rel.to_string();
    c.timed_case(name, [&] {
      bool fast = radical_membership(g, rel);
      in_radical += fast;
      c.expect(fast == power_search(g, rel), name);
    });
  }

  std::uniform_int_distribution<std::size_t> arity(2, 3), rank(1, 2), count(2, 3);
  auto field = CoeffField::prime(static_cast<std::uint64_t>(kOraclePrime));
  std::size_t bounded_relations = 0;
  for (int t = 0; t < kSyzygyInstances; ++t) {
    auto r = make_ring(field, arity(rng) == 2 ? std::vector<std::string>{"X", "Y"} : std::vector<std::string>{"X", "Y", "Z"});
    std::size_t rk = rank(rng);
    std::vector<ModuleElement> gens;
    for (std::size_t i = count(rng); i > 0; --i) {
      ModuleElement g = ModuleElement::zero(r, rk);
      for (std::size_t j = 0; j < rk; ++j) g[j] = random_polynomial(rng, r, 2, 2, 0.2);
      gens.push_back(std::move(g));
    }
    std::string name = "syzygy #" + std::to_string(t);
    c.timed_case(name, [&] {
      auto syz = syzygies(r, rk, gens);
      auto apply = [&](const ModuleElement& h) {
        ModuleElement s = ModuleElement::zero(r, rk);
        for (std::size_t i = 0; i < gens.size(); ++i) s = s + gens[i].scaled(h[i]);
        return s;
      };
      for (const auto& s : syz) c.expect(apply(s).is_zero(), name + ": computed syzygy is not a relation");
      ModuleGroebnerBasis span(r, gens.size());
      span.add_all(syz);
      auto kernel = bounded_kernel(r, rk, gens);
      bounded_relations += kernel.size();
      for (const auto& h : kernel) {
        c.expect(apply(h).is_zero(), name + ": oracle vector is not a relation");
        c.expect(span.contains(h), name + ": bounded relation outside the syzygy module");
      }
    });
  }
  return c.verdict(std::to_string(kRadicalPairs) + " radical pairs (" + std::to_string(in_radical) + " members), " +
                   std::to_string(kSyzygyInstances) + " syzygy instances over GF(101) (" + std::to_string(bounded_relations) +
                   " bounded relations)");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"nhensu J_1, edd and loci", nhensu_example},
      {"fixring nilpotent J_0, edd", fixring_example},
      {"closing example X^2", closing_example},
      {"border lemma property suite", border_suite},
      {"generator independence on corpus", generator_invariance},
      {"local uniqueness (X^5)", local_uniqueness},
      {"smooth parabola", parabola},
      {"socle ring Ext annihilators", socle_ext},
      {"ca stability evidence on corpus", stability},
      {"edd reducer and counterexamples", constructions},
      {"oracle cross-checks", oracle_cross_checks},
  };
  auto suite_start = std::chrono::steady_clock::now();
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, run] = criteria[i];
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !v.pass;
    std::printf("criterion %2zu %s  %s (%.2f s): %s\n", i + 1, v.pass ? "PASS" : "FAIL", name.c_str(), s, v.detail.c_str());
    std::fflush(stdout);
  }
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
  bool in_time = total < kSuiteSeconds;
  std::printf("suite %s  total %.2f s (limit %.0f s)\n", in_time ? "PASS" : "FAIL", total, kSuiteSeconds);
  return failed == 0 && in_time ? 0 : 1;
}
