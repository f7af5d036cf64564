#include <gtest/gtest.h>

#include <chrono>

#include "jacwb/ext.hpp"
#include "jacwb/parser.hpp"

using namespace jacwb;

namespace {

RingPtr qring(std::vector<std::string> vars) { return make_ring(CoeffField::rationals(), std::move(vars)); }
Ideal I(const RingPtr& r, const std::string& s) { return Ideal(r, parse_generators(r, s)); }
Presentation Pres(const RingPtr& r, const std::string& s) { return Presentation(r, parse_generators(r, s)); }

struct SocleRing {
  RingPtr r = qring({"X", "Y"});
  Presentation p = Pres(r, "(X^2, X*Y)");
  FpModule k = FpModule::residue_field(p);
  FpModule R = FpModule::free(p);
  FpModule RX = FpModule::quotient_module(p, I(r, "(X)"));
};

}  // namespace

TEST(Resolution, ResidueFieldOfSocleRing) {
  SocleRing s;
  auto res = free_resolution(s.k, 4);
  ASSERT_EQ(res.length(), 4u);
  EXPECT_EQ(res.ranks[0], 1u);
  EXPECT_EQ(res.ranks[1], 2u);
  EXPECT_TRUE(resolution_is_complex(res, s.p));
  // no unit entries: minimal over the graded ring
  for (const auto& A : res.maps)
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j) EXPECT_FALSE(A.at(i, j).is_unit());
  // the first syzygy of (X, Y) is killed by X
  auto syz = FpModule{s.p, res.ranks[1], detail::matrix_columns(res.maps[1]), "omega"};
  EXPECT_TRUE(syz.annihilator().contains(parse_polynomial(s.r, "X")));
}

TEST(Resolution, FreeAndRegular) {
  SocleRing s;
  auto free = free_resolution(s.R, 3);
  EXPECT_EQ(free.length(), 0u);
  EXPECT_TRUE(free.finite);

  auto r = qring({"X"});
  Presentation poly(r, {});
  auto kx = free_resolution(FpModule::residue_field(poly), 3);
  EXPECT_EQ(kx.length(), 1u);
  EXPECT_TRUE(kx.finite);
}

TEST(Ext, SocleRingExamples) {
  SocleRing s;
  auto e1 = ext_annihilator(s.k, s.k, 1);
  EXPECT_TRUE(e1.ann.contains(parse_polynomial(s.r, "X")));
  std::vector<ModulePair> family{{s.k, s.k}, {s.RX, s.k}, {s.k, s.R}, {s.RX, s.RX}};
  for (const auto& [M, N] : family) {
    auto e2 = ext_annihilator(M, N, 2);
    EXPECT_TRUE(e2.ann.contains(parse_polynomial(s.r, "Y"))) << M.name << ", " << N.name;
  }
  auto bound = ca_upper_bound(s.p, 2, family);
  EXPECT_TRUE(bound.ann.equals(sum(I(s.r, "(X, Y)"), s.p.relations())));
}

TEST(Ext, ContainsAnnihilatorsOfArguments) {
  SocleRing s;
  for (const auto& M : {s.k, s.RX, s.R})
    for (const auto& N : {s.k, s.RX, s.R})
      for (int i = 0; i <= 2; ++i) {
        auto e = ext_annihilator(M, N, i);
        EXPECT_TRUE(e.ann.contains(sum(M.annihilator(), N.annihilator()))) << M.name << " " << N.name << " " << i;
      }
}

TEST(Ext, HomOfFreeIsAnnihilatedByRelationsOnly) {
  SocleRing s;
  auto bound = ca_upper_bound(s.p, 0, {{s.R, s.R}});
  EXPECT_TRUE(bound.ann.equals(s.p.relations()));
}

TEST(Ext, RegularRingVanishesAboveDimension) {
  auto r = qring({"X"});
  Presentation poly(r, {});
  auto k = FpModule::residue_field(poly);
  auto e = ext_annihilator(k, FpModule::free(poly), 2);
  EXPECT_TRUE(e.ann.is_unit());
  EXPECT_FALSE(ext_annihilator(k, FpModule::free(poly), 1).ext_vanishes);

  auto rp = qring({"X", "Y"});
  auto parabola = Pres(rp, "(Y - X^2)");
  auto fam = all_pairs(default_family(parabola));
  auto st = stability_evidence(parabola, fam, {2, 3, 4});
  for (const auto& b : st.bounds) EXPECT_TRUE(b.is_unit());
  EXPECT_TRUE(st.radicals_agree);
}

TEST(Ext, SocleRingStability) {
  SocleRing s;
  std::vector<ModulePair> family{{s.k, s.k}, {s.RX, s.k}, {s.k, s.R}, {s.RX, s.RX}};
  auto st = stability_evidence(s.p, family, {2, 3, 4});
  EXPECT_TRUE(st.radicals_agree);
  for (const auto& b : st.bounds) EXPECT_TRUE(same_radical(b, I(s.r, "(X, Y)")));
}

TEST(Ext, DefaultFamily) {
  SocleRing s;
  auto fam = default_family(s.p);
  ASSERT_GE(fam.size(), 3u);
  EXPECT_EQ(fam[0].name, "k");
  EXPECT_EQ(fam[1].name, "R");
  EXPECT_LE(fam.size(), kMaxFamilySize);
}
