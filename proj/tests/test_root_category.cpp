#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hallie/root_category.hpp"

using namespace hallie;

namespace {

struct A2Cat {
  fixtures::A2Modules m;
  ModuleRegistry R;
  RootCategory C;
  explicit A2Cat(int q, int total = 2) : m(fixtures::a2_modules(q)), R(m.Q, m.F, Bound::total_dim(2, total)), C(R) {}
  const Field& F() const { return *m.F; }
};

// A2 registry order: 0 = S2, 1 = S1, 2 = P; P(1) = P, P(2) = S2.
const ObjClassId kS2 = ObjClassId::indecomposable(0, false), kS1 = ObjClassId::indecomposable(1, false),
                 kP = ObjClassId::indecomposable(2, false);

}  // namespace

TEST(Embed, SimpleAtSinkIsProjective) {
  A2Cat c(3);
  const Complex A = embed(c.m.S2);
  EXPECT_EQ(A.c0.summand_vertices, std::vector<int>{1});
  EXPECT_TRUE(A.c1.summand_vertices.empty());
  EXPECT_TRUE(is_complex(c.F(), A));
}

TEST(Embed, SimpleAtSourceHasTwoTermResolution) {
  A2Cat c(3);
  const Complex A = embed(c.m.S1);
  EXPECT_EQ(A.c0.summand_vertices, std::vector<int>{0});
  EXPECT_EQ(A.c1.summand_vertices, std::vector<int>{1});
  EXPECT_TRUE(is_complex(c.F(), A));
  EXPECT_FALSE(A.d1[1].is_zero());
  const Homology H = homology(c.F(), A);
  EXPECT_EQ(H.h0.rep.dims, (DimVector{1, 0}));
  EXPECT_TRUE(H.h1.rep.is_zero());
}

TEST(Embed, ZeroModuleGivesZeroComplex) {
  A2Cat c(3);
  EXPECT_TRUE(embed(c.R.zero()).is_zero());
}

TEST(Embed, HomologyRecoversModule) {
  ModuleRegistry R(fixtures::a3(), make_field(2), Bound::total_dim(3, 3));
  for (int i = 0; i < R.size(); ++i) {
    const Complex A = embed(R.rep(i));
    ASSERT_TRUE(is_complex(*R.field(), A));
    const Homology H = homology(*R.field(), A);
    EXPECT_TRUE(R.is_isomorphic(H.h0.rep, R.rep(i)));
    EXPECT_TRUE(H.h1.rep.is_zero());
    EXPECT_EQ(minimalize(*R.field(), A), A);
  }
}

TEST(Shift, IsAnInvolutionOnTheNose) {
  A2Cat c(3);
  const Complex z = zero_complex(c.m.Q, c.m.F);
  EXPECT_EQ(shift(c.F(), z), z);
  for (const auto& M : {c.m.S1, c.m.S2, c.m.P}) {
    const Complex A = embed(M);
    EXPECT_EQ(shift(c.F(), shift(c.F(), A)), A);
    EXPECT_EQ(c.C.groth(shift(c.F(), A)), -c.C.groth(A));
  }
}

TEST(Shift, HandlesPairUp) {
  A2Cat c(3);
  const Obj a = c.C.object(kS1);
  const Obj ta = c.C.shift(a);
  EXPECT_NE(a, ta);
  EXPECT_EQ(c.C.shift(ta), a);
  EXPECT_EQ(c.C.class_of(ta), kS1.shift());
}

TEST(HomSpace, A2F3Examples) {
  A2Cat c(3);
  const Complex s1 = embed(c.m.S1), s2 = embed(c.m.S2);
  EXPECT_EQ(HomSpace(c.F(), s1, s2).dim(), 0);
  EXPECT_EQ(HomSpace(c.F(), s1, shift(c.F(), s2)).dim(), 1);
  EXPECT_EQ(HomSpace(c.F(), s1, s1).dim(), 1);
}

TEST(HomSpace, TransportMatchesModuleHomAndExt) {
  for (auto [Q, q] : {std::pair{fixtures::a2(), 3}, {fixtures::a3(), 2}, {fixtures::kronecker(), 2}}) {
    const Bound b = Q->num_vertices() == 2 && Q->num_arrows() == 2 ? Bound{{1, 2}, 3} : Bound::total_dim(Q->num_vertices(), 3);
    ModuleRegistry R(Q, make_field(q), b);
    const Field& F = *R.field();
    for (int i = 0; i < R.size(); ++i)
      for (int j = 0; j < R.size(); ++j) {
        const Complex A = embed(R.rep(i)), B = embed(R.rep(j));
        const auto [euler, ext] = euler_and_ext(R.rep(i), R.rep(j));
        EXPECT_EQ(HomSpace(F, A, B).dim(), R.hom_dim(i, j)) << Q->name() << " " << i << "," << j;
        EXPECT_EQ(HomSpace(F, A, shift(F, B)).dim(), ext) << Q->name() << " " << i << "," << j;
        EXPECT_EQ(euler, R.hom_dim(i, j) - ext);
      }
  }
}

TEST(HomSpace, CoordinatesRoundTrip) {
  A2Cat c(3);
  const Complex A = complex_sum(embed(c.m.S1), embed(c.m.P));
  const Complex B = complex_sum(embed(c.m.P), shift(c.F(), embed(c.m.S2)));
  const HomSpace H(c.F(), A, B);
  ASSERT_GT(H.dim(), 0);
  for_each_vector(c.F(), H.dim(), [&](const std::vector<Elem>& v) {
    const ChainMap u = H.map(v);
    EXPECT_TRUE(is_chain_map(c.F(), A, B, u));
    EXPECT_EQ(H.coords(u), v);
  });
}

TEST(HomSpace, NullHomotopicMapsVanish) {
  A2Cat c(3);
  const Complex A = embed(c.m.S1);
  // The homotopy s0 = identity on P(1) composed into a contractible target.
  const Cone k = cone(c.F(), A, A, identity_map(A));
  const HomSpace H(c.F(), A, k.cone);
  EXPECT_EQ(H.dim(), 0);
  EXPECT_TRUE(H.is_null_homotopic(k.incl));
}

TEST(Cone, OfIdentityIsContractible) {
  A2Cat c(3);
  for (const auto& M : {c.m.S1, c.m.S2, c.m.P}) {
    const Complex A = embed(M);
    const Cone k = cone(c.F(), A, A, identity_map(A));
    EXPECT_TRUE(is_complex(c.F(), k.cone));
    EXPECT_TRUE(minimalize(c.F(), k.cone).is_zero());
    EXPECT_TRUE(c.C.classify(k.cone).is_zero());
  }
}

TEST(Cone, OfZeroSplits) {
  A2Cat c(3);
  const Complex A = embed(c.m.S1), B = embed(c.m.P);
  const Cone k = cone(c.F(), A, B, zero_map(A, B));
  EXPECT_TRUE(is_chain_map(c.F(), B, k.cone, k.incl));
  EXPECT_TRUE(is_chain_map(c.F(), k.cone, shift(c.F(), A), k.proj));
  EXPECT_EQ(c.C.classify(k.cone), kP.plus(kS1.shift()));
}

TEST(Cone, ProjectiveOntoSimpleGivesShiftedKernel) {
  A2Cat c(3);
  const Complex A = embed(c.m.P), B = embed(c.m.S1);
  const HomSpace H(c.F(), A, B);
  ASSERT_EQ(H.dim(), 1);
  const std::vector<Elem> one{1};
  const Cone k = cone(c.F(), A, B, H.map(one));
  EXPECT_EQ(c.C.classify(k.cone), kS2.shift());
  EXPECT_EQ(c.C.groth(k.cone), (GrothClass{0, -1}));
}

TEST(Cone, GrothendieckClassIsAdditive) {
  A2Cat c(2);
  const Complex A = complex_sum(embed(c.m.S1), embed(c.m.P));
  const Complex B = complex_sum(embed(c.m.S2), shift(c.F(), embed(c.m.S1)));
  const HomSpace H(c.F(), A, B);
  for_each_vector(c.F(), H.dim(), [&](const std::vector<Elem>& v) {
    const Cone k = cone(c.F(), A, B, H.map(v));
    EXPECT_EQ(c.C.groth(k.cone), c.C.groth(B) + -c.C.groth(A));
  });
}

TEST(Minimalize, StripsContractibleSummand) {
  A2Cat c(3);
  const Complex M = embed(c.m.S1);
  const Complex P = embed(c.m.P);
  const Complex junk = cone(c.F(), P, P, identity_map(P)).cone;
  const Complex reduced = minimalize(c.F(), complex_sum(M, junk));
  EXPECT_EQ(reduced, M);
  EXPECT_EQ(minimalize(c.F(), reduced), reduced);
}

TEST(Minimalize, PreservesClassOfCones) {
  A2Cat c(2);
  const Complex A = complex_sum(embed(c.m.P), embed(c.m.S2));
  const Complex B = complex_sum(embed(c.m.S1), embed(c.m.P));
  const HomSpace H(c.F(), A, B);
  for_each_vector(c.F(), H.dim(), [&](const std::vector<Elem>& v) {
    const Complex k = cone(c.F(), A, B, H.map(v)).cone;
    const Complex m = minimalize(c.F(), k);
    EXPECT_TRUE(is_complex(c.F(), m));
    EXPECT_EQ(c.C.classify(m), c.C.classify(k));
    EXPECT_EQ(minimalize(c.F(), m), m);
  });
}

TEST(ObjectClass, A2Examples) {
  A2Cat c(3);
  const Complex A = complex_sum(embed(c.m.P), shift(c.F(), embed(c.m.S1)));
  const ObjClassId cls = c.C.classify(A);
  EXPECT_EQ(cls, kP.plus(kS1.shift()));
  EXPECT_EQ(c.C.groth(A), (GrothClass{0, 1}));
  EXPECT_EQ(c.C.groth(cls), (GrothClass{0, 1}));
  EXPECT_TRUE(c.C.classify(zero_complex(c.m.Q, c.m.F)).is_zero());
  EXPECT_EQ(c.C.groth(shift(c.F(), embed(c.m.S2))), (GrothClass{0, -1}));
}

TEST(ObjectClass, StringRoundTrip) {
  const ObjClassId c = kP.plus(kS1.shift()).plus(kS2).plus(kS2.shift());
  EXPECT_EQ(c.str(), "[0+:1,0-:1,1-:1,2+:1]");
  EXPECT_EQ(ObjClassId::parse(c.str()), c);
  EXPECT_EQ(ObjClassId::parse("[]"), ObjClassId{});
  EXPECT_THROW(ObjClassId::parse("[1:1]"), InputError);
}

TEST(ObjectRegistry, Counts) {
  ModuleRegistry r1(fixtures::a1(), make_field(2), Bound::total_dim(1, 1));
  EXPECT_EQ(RootCategory(r1).num_indecomposables(), 2);
  A2Cat c(2, 2);
  EXPECT_EQ(c.C.num_indecomposables(), 6);
  for (int k = 0; k < c.C.num_indecomposables(); ++k) {
    const ObjClassId x = c.C.indecomposable(k);
    EXPECT_EQ(c.C.indecomposable_index(x), k);
    const GrothClass g = c.C.groth(x);
    EXPECT_TRUE(std::any_of(g.begin(), g.end(), [](long long v) { return v != 0; })) << x.str();
  }
}

// Every small complex over A2/F2 is isomorphic to the registered object of its class.
TEST(ObjectRegistry, EverySmallComplexIsRegistered) {
  A2Cat c(2, 3);
  const Field& F = c.F();
  const std::vector<std::vector<int>> sums = {{}, {0}, {1}, {0, 1}, {1, 1}, {0, 0}};
  int seen = 0;
  for (const auto& v0 : sums)
    for (const auto& v1 : sums) {
      if (v0.size() + v1.size() > 3) continue;
      const ProjectiveSum c0 = projective_sum(c.m.Q, c.m.F, v0), c1 = projective_sum(c.m.Q, c.m.F, v1);
      const Matrix H01 = hom_basis_flat(c0.rep, c1.rep), H10 = hom_basis_flat(c1.rep, c0.rep);
      const MapLayout l01(c0.rep.dims, c1.rep.dims), l10(c1.rep.dims, c0.rep.dims);
      for_each_vector(F, H01.cols(), [&](const std::vector<Elem>& a) {
        for_each_vector(F, H10.cols(), [&](const std::vector<Elem>& b) {
          Complex A{c0, c1, l01.unflatten(apply(F, H01, a)), l10.unflatten(apply(F, H10, b))};
          if (!is_complex(F, A)) return;
          ++seen;
          const ObjClassId cls = c.C.classify(A);
          const Obj h = c.C.insert(A);
          const Obj canon = c.C.object(cls);
          EXPECT_TRUE(c.C.find_iso(h, canon).has_value()) << cls.str();
          EXPECT_TRUE(c.C.find_iso(canon, h).has_value()) << cls.str();
        });
      });
    }
  EXPECT_GT(seen, 50);
}

TEST(RootCategory, CompositionMatchesChainMaps) {
  A2Cat c(3);
  const Obj a = c.C.object(kS1.plus(kP)), b = c.C.object(kP.plus(kS2.shift())), d = c.C.object(kS1.shift());
  const HomSpace &ab = c.C.hom(a, b), &bd = c.C.hom(b, d), &ad = c.C.hom(a, d);
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<Elem> f(ab.dim()), g(bd.dim());
    for (auto& x : f) x = rng() % 3;
    for (auto& x : g) x = rng() % 3;
    EXPECT_EQ(c.C.compose(a, b, d, g, f), ad.coords(compose(c.F(), bd.map(g), ab.map(f))));
  }
}

TEST(RootCategory, ShiftMapIsFunctorial) {
  A2Cat c(3);
  const Obj a = c.C.object(kS1), b = c.C.object(kS2.shift());
  const auto& H = c.C.hom(a, b);
  ASSERT_EQ(H.dim(), 1);
  const std::vector<Elem> one{1};
  const auto t = c.C.shift_map(a, b, one);
  EXPECT_EQ(t.size(), 1u);
  EXPECT_NE(t[0], 0);
  EXPECT_EQ(c.C.shift_map(c.C.shift(a), c.C.shift(b), t), one);
}

TEST(RootCategory, AutomorphismGroups) {
  A2Cat c(3);
  EXPECT_EQ(c.C.aut(c.C.object(kS1)).order(), 2);
  EXPECT_EQ(c.C.aut(c.C.object(kS1.plus(kS1))).order(), 48);
  // Aut(S1 + S2[1]) contains the unipotent part Hom(S1, S2[1]).
  EXPECT_EQ(c.C.aut(c.C.object(kS1.plus(kS2.shift()))).order(), 4 * 3);
  const AutGroup& G = c.C.aut(c.C.object(kP.plus(kS2)));
  for (size_t i = 0; i < G.elements.size(); ++i)
    EXPECT_EQ(G.inverse[G.inverse[i]], static_cast<int>(i));
}

TEST(RootCategory, ProjectiveSummandBudget) {
  A2Cat c(2, 3);
  Complex A = zero_complex(c.m.Q, c.m.F);
  for (int k = 0; k < 4; ++k) A = complex_sum(A, embed(c.m.S1));
  EXPECT_THROW(c.C.insert(A), BudgetExceeded);
}
