#include <gtest/gtest.h>

#include <random>

#include "jacwb/groebner.hpp"
#include "jacwb/parser.hpp"

using namespace jacwb;

namespace {

RingPtr qring(std::vector<std::string> vars, MonomialOrder order = MonomialOrder::degrevlex()) {
  return make_ring(CoeffField::rationals(), std::move(vars), order);
}

Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(r, s); }

Polynomial random_poly(const RingPtr& r, std::mt19937& rng, int terms, int max_deg) {
  std::uniform_int_distribution<int> coeff(-5, 5), e(0, max_deg);
  std::vector<Term> out;
  for (int t = 0; t < terms; ++t) {
    Monomial m(r->arity());
    for (std::size_t v = 0; v < r->arity(); ++v) m.set(v, e(rng));
    if (m.degree() > static_cast<unsigned>(max_deg)) continue;
    out.push_back({m, r->field().from_int(coeff(rng))});
  }
  return Polynomial::from_terms(r, out);
}

}  // namespace

TEST(Field, RationalsStayExactAcrossOverflow) {
  auto Q = CoeffField::rationals();
  Scalar big = Q.mul(Scalar(std::int64_t{1} << 40), Scalar(std::int64_t{1} << 40));
  EXPECT_FALSE(big.is_small());
  Scalar back = Q.div(big, Scalar(std::int64_t{1} << 40));
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, Scalar(std::int64_t{1} << 40));
  EXPECT_EQ(Q.div(Scalar(1), Scalar(3)).to_string(), "1/3");
  EXPECT_EQ(Q.add(Q.div(Scalar(1), Scalar(3)), Q.div(Scalar(2), Scalar(3))), Scalar(1));
}

TEST(Field, PrimeFieldInverses) {
  auto F = CoeffField::prime(101);
  for (int a = 1; a < 101; ++a) EXPECT_TRUE(F.mul(Scalar(a), F.inv(Scalar(a))).is_one());
  EXPECT_THROW(CoeffField::prime(4), PreconditionFailed);
  EXPECT_THROW(CoeffField::prime(std::uint64_t{1} << 31), PreconditionFailed);
}

TEST(Poly, Arithmetic) {
  auto r = qring({"X", "Y"});
  auto X = P(r, "X"), Y = P(r, "Y");
  EXPECT_TRUE((X + (-X)).is_zero());
  EXPECT_EQ((X + Y) * (X - Y), P(r, "X^2 - Y^2"));
  auto g2 = make_ring(CoeffField::prime(2), {"X"});
  EXPECT_TRUE((P(g2, "X") + P(g2, "X")).is_zero());
}

TEST(Poly, Derivatives) {
  auto r = qring({"X", "Y_1"});
  EXPECT_EQ(partial_derivative(P(r, "X*Y_1"), 0), P(r, "Y_1"));
  auto ry = qring({"Y"});
  EXPECT_EQ(partial_derivative(P(ry, "Y^2+1"), 0), P(ry, "2*Y"));
  EXPECT_TRUE(partial_derivative(P(ry, "7"), 0).is_zero());
  auto g2 = make_ring(CoeffField::prime(2), {"X"});
  EXPECT_TRUE(partial_derivative(P(g2, "X^2"), 0).is_zero());
  EXPECT_THROW(partial_derivative(P(ry, "Y"), 3), PreconditionFailed);
}

TEST(Poly, LeibnizAndSymmetry) {
  std::mt19937 rng(7);
  auto r = qring({"X", "Y", "Z"});
  for (int it = 0; it < 50; ++it) {
    auto f = random_poly(r, rng, 5, 3), g = random_poly(r, rng, 5, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ((f * g).derivative(i), f * g.derivative(i) + g * f.derivative(i));
      EXPECT_EQ((f + g).derivative(i), f.derivative(i) + g.derivative(i));
      for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(f.derivative(i).derivative(j), f.derivative(j).derivative(i));
    }
  }
}

TEST(Poly, PrintParseRoundTrip) {
  std::mt19937 rng(11);
  for (auto field : {CoeffField::rationals(), CoeffField::prime(101), CoeffField::prime(2)}) {
    auto r = make_ring(field, {"X", "Y_1", "Z"});
    for (int it = 0; it < 100; ++it) {
      auto f = random_poly(r, rng, 6, 4);
      if (field.is_rational()) f = f.scale(field.div(Scalar(1), Scalar(1 + it % 7)));
      EXPECT_EQ(P(r, f.to_string()), f) << f.to_string();
    }
  }
}

TEST(Parser, RejectsJuxtapositionAndUnknowns) {
  auto r = qring({"X", "Y"});
  EXPECT_THROW(P(r, "XY"), ParseError);
  EXPECT_THROW(P(r, "2X"), ParseError);
  EXPECT_THROW(P(r, "X (Y)"), ParseError);
  EXPECT_THROW(P(r, "X + Z"), ParseError);
  try {
    P(r, "X + * Y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 5u);
  }
  EXPECT_EQ(P(r, "(X+1)^2"), P(r, "X^2 + 2*X + 1"));
  EXPECT_EQ(P(r, "-X^2/2 + 3"), P(r, "3 - 1/2*X^2"));
  auto gens = parse_generators(r, "(X^2, X*Y)");
  ASSERT_EQ(gens.size(), 2u);
  auto single = parse_generators(r, "(X+1)*Y");
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0], P(r, "X*Y + Y"));
}

TEST(Order, Examples) {
  auto d = MonomialOrder::degrevlex();
  EXPECT_TRUE(d.compare(Monomial{2, 0}, Monomial{1, 1}) > 0);
  for (auto o : {MonomialOrder::lex(), MonomialOrder::degrevlex(), MonomialOrder::block(1)})
    EXPECT_TRUE(o.compare(Monomial{0, 0}, Monomial{1, 0}) < 0);
  EXPECT_TRUE(MonomialOrder::lex().compare(Monomial{1, 0}, Monomial{0, 5}) > 0);
  EXPECT_THROW(d.compare(Monomial{1}, Monomial{1, 0}), Error);
}

TEST(Order, AxiomsOnRandomTriples) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<unsigned> e(0, 4);
  for (auto o : {MonomialOrder::lex(), MonomialOrder::degrevlex(), MonomialOrder::block(2)}) {
    for (int it = 0; it < 500; ++it) {
      Monomial a(4), b(4), c(4);
      for (std::size_t v = 0; v < 4; ++v) {
        a.set(v, e(rng));
        b.set(v, e(rng));
        c.set(v, e(rng));
      }
      auto ab = o.compare(a, b);
      EXPECT_TRUE(o.compare(a * c, b * c) == ab);
      EXPECT_TRUE(o.compare(b, a) == (0 <=> ab));
      EXPECT_TRUE(o.compare(Monomial(4), a) <= 0);
      if (ab < 0 && o.compare(b, c) < 0) {
        EXPECT_TRUE(o.compare(a, c) < 0);
      }
    }
  }
}

TEST(Groebner, SmallExamples) {
  auto r = qring({"X", "Y"});
  std::vector<Polynomial> g1{P(r, "X^2"), P(r, "X*Y")};
  auto G = buchberger(r, g1);
  ASSERT_EQ(G.size(), 2u);
  EXPECT_EQ(G.elements()[0], P(r, "X*Y"));
  EXPECT_EQ(G.elements()[1], P(r, "X^2"));
  EXPECT_TRUE(normal_form(P(r, "X^2*Y"), G).is_zero());
  EXPECT_EQ(normal_form(P(r, "Y"), buchberger(r, std::vector{P(r, "X")})), P(r, "Y"));
  EXPECT_TRUE(normal_form(P(r, "X^2+Y"), buchberger(r, std::vector{P(r, "X^2+Y")})).is_zero());
  auto G2 = buchberger(r, std::vector{P(r, "X - Y"), P(r, "Y")});
  EXPECT_EQ(G2.elements(), (std::vector{P(r, "Y"), P(r, "X")}));
  EXPECT_TRUE(buchberger(r, std::vector{P(r, "1")}).is_unit());
  EXPECT_TRUE(buchberger(r, std::vector<Polynomial>{}).is_zero_ideal());
}

TEST(Groebner, NormalFormOverRationalsIsTrueRemainder) {
  auto r = qring({"X", "Y"});
  auto G = buchberger(r, std::vector{P(r, "2*X^2 - Y")});
  EXPECT_EQ(G.elements()[0], P(r, "X^2 - 1/2*Y"));
  EXPECT_EQ(G.normal_form(P(r, "3*X^2 + X")), P(r, "X + 3/2*Y"));
}

TEST(Groebner, MembershipAndIdempotence) {
  std::mt19937 rng(5);
  for (auto field : {CoeffField::rationals(), CoeffField::prime(101)}) {
    auto r = make_ring(field, {"X", "Y", "Z"});
    for (int it = 0; it < 20; ++it) {
      std::vector<Polynomial> gens{random_poly(r, rng, 3, 2), random_poly(r, rng, 3, 2), random_poly(r, rng, 2, 3)};
      auto G = buchberger(r, gens);
      Polynomial member = Polynomial::zero(r);
      for (const auto& g : gens) member += random_poly(r, rng, 3, 2) * g;
      EXPECT_TRUE(G.contains(member));
      EXPECT_TRUE(G.normal_form(member).is_zero());
      auto again = buchberger(r, G.elements());
      EXPECT_EQ(again.elements(), G.elements());
      // every S-polynomial-free check: generators reduce to zero
      for (const auto& g : gens) EXPECT_TRUE(G.contains(g));
      // different generator orders give byte-identical output
      std::vector<Polynomial> rev(gens.rbegin(), gens.rend());
      auto G3 = buchberger(r, rev);
      std::string a, b;
      for (const auto& e : G.elements()) a += e.to_string() + ";";
      for (const auto& e : G3.elements()) b += e.to_string() + ";";
      EXPECT_EQ(a, b);
    }
  }
}

TEST(Groebner, LexAndBlockOrdersAgreeOnIdeal) {
  auto r = qring({"X", "Y", "Z"});
  std::vector<Polynomial> gens{P(r, "X^2 + Y*Z - 1"), P(r, "X*Y - Z^2"), P(r, "Y^3 - X")};
  auto G1 = buchberger(gens, MonomialOrder::lex());
  auto G2 = buchberger(gens, MonomialOrder::block(1));
  for (const auto& g : G1.elements()) EXPECT_TRUE(G2.contains(g));
  for (const auto& g : G2.elements()) EXPECT_TRUE(G1.contains(g));
}

TEST(Groebner, BudgetIsEnforced) {
  auto r = qring({"X", "Y", "Z"});
  std::vector<Polynomial> gens{P(r, "X^3 + Y*Z - 1"), P(r, "X*Y^2 - Z^2 + X"), P(r, "Y^3 - X*Z + 2")};
  GroebnerOptions tight{3};
  EXPECT_THROW(buchberger(r, gens, tight), BudgetExceeded);
}

TEST(Syzygy, Examples) {
  auto r = qring({"X", "Y"});
  std::vector<ModuleElement> gens{ModuleElement({P(r, "X^2")}), ModuleElement({P(r, "X*Y")})};
  auto syz = syzygies(r, 1, gens);
  ASSERT_EQ(syz.size(), 1u);
  EXPECT_TRUE(syz[0] == ModuleElement({P(r, "Y"), P(r, "-X")}) || syz[0] == ModuleElement({P(r, "-Y"), P(r, "X")}));

  std::vector<ModuleElement> id{ModuleElement::basis(r, 2, 0), ModuleElement::basis(r, 2, 1)};
  EXPECT_TRUE(syzygies(r, 2, id).empty());

  std::vector<ModuleElement> same{ModuleElement({P(r, "X")}), ModuleElement({P(r, "X")})};
  auto s2 = syzygies(r, 1, same);
  ASSERT_EQ(s2.size(), 1u);
  EXPECT_EQ(s2[0][0] + s2[0][1], Polynomial::zero(r));
}

TEST(Syzygy, KillsTheMap) {
  std::mt19937 rng(9);
  for (auto field : {CoeffField::rationals(), CoeffField::prime(101)}) {
    auto r = make_ring(field, {"X", "Y", "Z"});
    for (int it = 0; it < 10; ++it) {
      std::vector<ModuleElement> gens;
      for (int k = 0; k < 3; ++k)
        gens.push_back(ModuleElement({random_poly(r, rng, 2, 2), random_poly(r, rng, 2, 2)}));
      for (const auto& s : syzygies(r, 2, gens)) {
        ModuleElement image = ModuleElement::zero(r, 2);
        for (std::size_t k = 0; k < gens.size(); ++k) image = image + gens[k].scaled(s[k]);
        EXPECT_TRUE(image.is_zero());
      }
    }
  }
}

TEST(ModuleBasis, IncrementalMembership) {
  auto r = qring({"X", "Y"});
  ModuleGroebnerBasis mb(r, 2);
  mb.add(ModuleElement({P(r, "X"), P(r, "Y")}));
  EXPECT_TRUE(mb.contains(ModuleElement({P(r, "X^2"), P(r, "X*Y")})));
  EXPECT_FALSE(mb.contains(ModuleElement({P(r, "X"), P(r, "0")})));
  mb.add(ModuleElement({P(r, "0"), P(r, "Y")}));
  EXPECT_TRUE(mb.contains(ModuleElement({P(r, "X"), P(r, "0")})));
}
