#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "hallie/hall_exact.hpp"
#include "hallie/hall_tri.hpp"

using namespace hallie;

namespace {

struct Cat {
  ModuleRegistry R;
  RootCategory C;
  TriangleCounts T;
  Cat(QuiverPtr Q, int q, Bound b) : R(Q, make_field(q), std::move(b)), C(R), T(C) {}

  std::vector<ObjClassId> indecomposables() const {
    std::vector<ObjClassId> v;
    for (int k = 0; k < C.num_indecomposables(); ++k) v.push_back(C.indecomposable(k));
    return v;
  }
};

Cat a1(int q) { return Cat(fixtures::a1(), q, Bound::total_dim(1, 2)); }
Cat a2(int q) { return Cat(fixtures::a2(), q, Bound::total_dim(2, 2)); }

const ObjClassId kK = ObjClassId::indecomposable(0, false), kTK = kK.shift(), kZero{};
// A2 registry order: 0 = S2, 1 = S1, 2 = P.
const ObjClassId kS2 = ObjClassId::indecomposable(0, false), kS1 = ObjClassId::indecomposable(1, false),
                 kP = ObjClassId::indecomposable(2, false);

// Every (f, g, h) in the three Hom spaces that passes the exactness test.
std::set<Triangle> exact_by_brute_force(const RootCategory& C, Obj x, Obj y, Obj l) {
  const Obj ty = C.shift(y);
  std::set<Triangle> out;
  for_each_vector(C.field(), C.hom(y, l).dim(), [&](const std::vector<Elem>& f) {
    for_each_vector(C.field(), C.hom(l, x).dim(), [&](const std::vector<Elem>& g) {
      for_each_vector(C.field(), C.hom(x, ty).dim(), [&](const std::vector<Elem>& h) {
        const Triangle t{f, g, h};
        if (is_exact_triangle(C, y, l, x, t)) out.insert(t);
      });
    });
  });
  return out;
}

}  // namespace

TEST(TriangleCount, SplitSquareOfSimpleOverF3) {
  Cat s = a1(3);
  EXPECT_EQ(s.T.triangles(kK, kK, kK.plus(kK)).size(), 16);
}

TEST(TriangleCount, ZeroSecondTermGivesAutomorphisms) {
  Cat s = a2(3);
  for (const auto& X : {kS1, kP, kS2.shift(), kS1.plus(kP)}) {
    const TriangleSet& W = s.T.triangles(X, kZero, X);
    EXPECT_EQ(W.size(), s.C.aut(s.C.object(X)).order()) << X.str();
    EXPECT_EQ(s.T.hall_number(X, kZero, X), 1) << X.str();
  }
}

TEST(TriangleCount, A2ExtensionTriangles) {
  Cat s = a2(3);
  EXPECT_EQ(s.T.triangles(kS1, kS2, kP).size(), 4);
  EXPECT_EQ(s.T.hall_number(kS1, kS2, kP), 1);
}

TEST(TriangleCount, ShiftedPairWithZeroMiddle) {
  Cat s = a1(3);
  // Tk -> 0 -> k -> k with h invertible.
  EXPECT_EQ(s.T.hall_number(kK, kTK, kZero), 1);
  EXPECT_EQ(s.T.triangles(kK, kTK, kZero).size(), 2);
}

TEST(ExactTriangle, ConeTrianglesAreExact) {
  Cat s = a2(3);
  const Obj y = s.C.object(kS2), l = s.C.object(kP.plus(kS1.shift()));
  const auto& hyl = s.C.hom(y, l);
  for_each_vector(s.C.field(), hyl.dim(), [&](const std::vector<Elem>& f) {
    const Cone k = cone(s.C.field(), s.C.complex(y), s.C.complex(l), hyl.map(f));
    const Obj x = s.C.insert(k.cone);
    const Obj ty = s.C.shift(y);
    const Triangle t{f, s.C.hom(l, x).coords(k.incl), s.C.hom(x, ty).coords(k.proj)};
    EXPECT_TRUE(is_exact_triangle(s.C, y, l, x, t));
  });
}

TEST(ExactTriangle, ZeroTriangleIsNotExact) {
  Cat s = a2(3);
  const Obj x = s.C.object(kS1), y = s.C.object(kS2), l = s.C.object(kP);
  const Triangle t{s.C.zero(y, l), s.C.zero(l, x), s.C.zero(x, s.C.shift(y))};
  EXPECT_FALSE(is_exact_triangle(s.C, y, l, x, t));
}

TEST(ExactTriangle, ModuleExtension) {
  Cat s = a2(3);
  const Obj x = s.C.object(kS1), y = s.C.object(kS2), l = s.C.object(kP);
  const Obj ty = s.C.shift(y);
  // Inclusion S2 -> P, projection P -> S1 and the extension class S1 -> T S2.
  ASSERT_EQ(s.C.hom(y, l).dim(), 1);
  ASSERT_EQ(s.C.hom(l, x).dim(), 1);
  ASSERT_EQ(s.C.hom(x, ty).dim(), 1);
  int exact = 0;
  for (Elem a : {1, 2})
    for (Elem b : {1, 2})
      for (Elem c : {1, 2}) exact += is_exact_triangle(s.C, y, l, x, {{a}, {b}, {c}});
  EXPECT_EQ(exact, 4);
  EXPECT_FALSE(is_exact_triangle(s.C, y, l, x, {{1}, {1}, {0}}));
}

TEST(ExactTriangle, EnumerationMatchesBruteForce) {
  Cat s = a2(2);
  const std::vector<ObjClassId> objs = {kS1, kS2, kP, kS1.shift(), kS2.shift(), kP.shift()};
  int nonempty = 0;
  for (const auto& X : objs)
    for (const auto& Y : objs)
      for (const auto& L : s.T.middle_terms(X, Y)) {
        const TriangleSet& W = s.T.triangles(X, Y, L);
        const auto brute = exact_by_brute_force(s.C, W.x, W.y, W.l);
        EXPECT_EQ(std::set<Triangle>(W.items.begin(), W.items.end()), brute) << detail::triple_str(X, Y, L);
        nonempty += !brute.empty();
      }
  EXPECT_GT(nonempty, 20);
}

TEST(ExactTriangle, RotationPreservesExactness) {
  Cat s = a2(3);
  for (const auto& [X, Y, L] : {std::tuple{kS1, kS2, kP}, {kS1, kS2, kS1.plus(kS2)}, {kS1.shift(), kS2.shift(), kP.shift()},
                                {kS1.shift(), kS1, kZero}}) {
    const TriangleSet& W = s.T.triangles(X, Y, L);
    ASSERT_GT(W.size(), 0) << detail::triple_str(X, Y, L);
    const TriangleSet& R = s.T.triangles(s.C.shift(W.y), W.l, W.x);
    EXPECT_EQ(R.size(), W.size());
    for (const auto& t : W.items) EXPECT_GE(R.find(rotate(s.C, W.y, W.l, t)), 0);
  }
}

TEST(ExactTriangle, GrothendieckClassIsAdditive) {
  Cat s = a2(3);
  for (const auto& X : s.indecomposables())
    for (const auto& Y : s.indecomposables())
      for (const auto& L : s.T.middle_terms(X, Y)) EXPECT_EQ(s.C.groth(L), s.C.groth(X) + s.C.groth(Y));
}

TEST(SplitCriterion, A2F3) {
  Cat s = a2(3);
  auto objs = s.indecomposables();
  objs.push_back(kZero);
  objs.push_back(kS1.plus(kS2.shift()));
  const CheckReport r = check_split_criterion(s.T, objs);
  EXPECT_GT(r.checked(), 30u);
  EXPECT_EQ(r.violations(), 0u);
}

TEST(ModuleCorrespondence, TriangleOrbitsMatchHallNumbers) {
  for (auto [Q, q] : {std::pair{fixtures::a2(), 3}, {fixtures::a3(), 2}}) {
    ModuleRegistry R(Q, make_field(q), Bound::total_dim(Q->num_vertices(), 3));
    RootCategory C(R);
    TriangleCounts T(C);
    HallTable H(R);
    const Bound small = Bound::total_dim(Q->num_vertices(), 2);
    int checked = 0;
    for (const auto& L : R.classes_within(R.bound()))
      for (const auto& [xy, f] : H.row(L)) {
        if (!small.contains(R.dims_of(xy.first)) || !small.contains(R.dims_of(xy.second))) continue;
        const ObjClassId X{xy.first, {}}, Y{xy.second, {}}, Lo{L, {}};
        EXPECT_EQ(T.hall_number(X, Y, Lo), f) << detail::triple_str(X, Y, Lo);
        ++checked;
      }
    EXPECT_GT(checked, 10);
  }
}

TEST(Orbits, StabilizersAreSometimesNontrivial) {
  Cat s = a1(3);
  const TriangleSet& W = s.T.triangles(kK, kTK, kZero);
  const OrbitCount& O = s.T.orbits(W, kEta | kXi);
  long long total = 0;
  for (auto st : O.stabilizers) total += O.group_order / st;
  EXPECT_EQ(total, W.size());
  EXPECT_TRUE(std::any_of(O.stabilizers.begin(), O.stabilizers.end(), [](long long v) { return v > 1; }));
}

TEST(PairedOrbits, AllZero) {
  Cat s = a1(3);
  EXPECT_EQ(s.T.n_count(kZero, kZero, kZero, kZero, kZero), 1);
  EXPECT_EQ(s.T.n_hat_count(kZero, kZero, kZero, kZero, kZero), 1);
}

TEST(PairedOrbits, SplitCaseWithMNotY) {
  // L = M + TZ = X + Y with M = X = S1, Y = TZ = T S2.
  Cat s = a2(3);
  const ObjClassId X = kS1, Y = kS2.shift(), Z = kS2, M = kS1, L = kS1.plus(kS2.shift());
  EXPECT_EQ(s.T.n_count(X, Y, Z, L, M), 1);
}

TEST(PairedOrbits, SquareOfSimpleIsEven) {
  Cat s = a1(3);
  const BigInt n = s.T.n_count(kK, kK, kTK, kK.plus(kK), kK);
  EXPECT_EQ(mod_floor(n, 2), 0) << n;
}

TEST(PairedOrbits, AgreeWithFreeCaseProduct) {
  Cat s = a2(3);
  // L = P is not M + TZ for M = P + S2 ... here M = P + S1, Z = S1, L = P.
  const BigInt n = s.T.n_count(kS1, kS2, kS1, kP, kP.plus(kS1));
  EXPECT_EQ(mod_floor(n - BigInt(s.T.hall_number(kS1, kS2, kP)) * s.T.hall_number(kP, kS1, kP.plus(kS1)), 2), 0);
}

TEST(Octahedral, DegenerateZero) {
  Cat s = a1(2);
  const auto [l, r] = octahedral_sides(s.T, kZero, kZero, kZero, kZero);
  EXPECT_EQ(l, 1);
  EXPECT_EQ(r, 1);
}

TEST(Octahedral, A1F2AllObjects) {
  Cat s = a1(2);
  const std::vector<ObjClassId> xyz = {kK, kTK};
  const std::vector<ObjClassId> ms = {kZero, kK, kTK, kK.plus(kK), kK.plus(kTK), kTK.plus(kTK)};
  CheckReport r;
  for (const auto& X : xyz)
    for (const auto& Y : xyz)
      for (const auto& Z : xyz)
        for (const auto& M : ms) r.append(verify_octahedral_counts(s.T, X, Y, Z, M));
  EXPECT_EQ(r.checked(), 48u);
  EXPECT_EQ(r.violations(), 0u);
}

TEST(Octahedral, A2F3ShiftedThirdTerm) {
  Cat s = a2(3);
  for (const auto& M : {kZero, kS1, kP, kS1.plus(kS2.shift()), kP.plus(kS2.shift()), kS1.plus(kS2).plus(kS2.shift())}) {
    const auto [l, r] = octahedral_sides(s.T, kS1, kS2, kS2.shift(), M);
    EXPECT_EQ(l, r) << M.str();
  }
}

TEST(TriangleIdentities, SplitFirstTriangle) {
  Cat s = a2(3);
  const ObjClassId L = kP.plus(kS2.shift());
  EXPECT_EQ(s.T.hall_number(L, kS2, kP), 1);
}

TEST(TriangleIdentities, SplitMiddleCountsHom) {
  Cat s = a2(3);
  EXPECT_EQ(s.T.hall_number(kS1, kS2, kS1.plus(kS2)), 1);
  EXPECT_EQ(s.T.hall_number(kS2, kS1, kS1.plus(kS2)), 1);
}

TEST(TriangleIdentities, A1F3Suite) {
  Cat s = a1(3);
  const auto ind = s.indecomposables();
  const CheckReport r = check_triangle_identities(s.T, ind);
  EXPECT_GT(r.checked(), 20u);
  for (const auto& rec : r.records()) EXPECT_TRUE(rec.ok) << rec.check << " " << rec.instance << " " << rec.lhs << " vs " << rec.rhs;
}

TEST(TriangleIdentities, A2F3Suite) {
  Cat s = a2(3);
  const auto ind = s.indecomposables();
  const CheckReport r = check_triangle_identities(s.T, ind);
  std::set<std::string> kinds;
  for (const auto& rec : r.records()) {
    kinds.insert(rec.check);
    EXPECT_TRUE(rec.ok) << rec.check << " " << rec.instance << " " << rec.lhs << " vs " << rec.rhs;
  }
  for (const char* k : {"first.congruence", "first.split.F", "middle.congruence", "middle.split.F", "middle.triangle_count", "n.identity",
                        "n.other_middle", "n.hom_congruence", "n.radical_congruence", "n_hat.identity", "n_hat.other_middle",
                        "n_hat.hom_congruence", "n_hat.radical_congruence"})
    EXPECT_TRUE(kinds.contains(k)) << k;
}

// Nonsplit triangles with a decomposable middle term first appear for A3.
TEST(TriangleIdentities, A3F3DecomposableMiddle) {
  Cat s(fixtures::a3(), 3, Bound::total_dim(3, 3));
  const auto ind = s.indecomposables();
  const CheckReport r = check_triangle_identities(s.T, ind);
  std::set<std::string> kinds;
  for (const auto& rec : r.records()) {
    kinds.insert(rec.check);
    EXPECT_TRUE(rec.ok) << rec.check << " " << rec.instance << " " << rec.lhs << " vs " << rec.rhs;
  }
  EXPECT_TRUE(kinds.contains("n.decomposable_middle"));
  EXPECT_TRUE(kinds.contains("n_hat.decomposable_middle"));
}

TEST(TriangleCache, RoundTrip) {
  Cat s = a2(3);
  s.T.counts(kS1, kS2, kP);
  s.T.counts(kS1, kS2, kS1.plus(kS2));
  std::stringstream buf;
  s.T.write_csv(buf);
  Cat t = a2(3);
  std::stringstream in(buf.str());
  t.T.read_csv(in);
  std::stringstream again;
  t.T.write_csv(again);
  EXPECT_EQ(buf.str(), again.str());
  EXPECT_EQ(t.T.counts(kS1, kS2, kP).w, 4);
}

TEST(TriangleCache, RejectsTruncatedFile) {
  Cat s = a2(3);
  s.T.counts(kS1, kS2, kP);
  std::stringstream buf;
  s.T.write_csv(buf);
  const std::string text = buf.str();
  Cat t = a2(3);
  std::stringstream in(text.substr(0, text.rfind("# end")));
  EXPECT_THROW(t.T.read_csv(in), InputError);
}

TEST(TriangleCache, RejectsOtherField) {
  Cat s = a2(3), t = a2(2);
  std::stringstream buf;
  s.T.write_csv(buf);
  EXPECT_THROW(t.T.read_csv(buf), InputError);
}

TEST(Octahedral, ObjectsWithinTotalDimension) {
  Cat s = a1(3);
  const auto objs = objects_within(s.R, 2);
  EXPECT_EQ(objs.size(), 6u);
  EXPECT_EQ(objs.front(), kZero);
}

TEST(Octahedral, SeededSampleIsDeterministicAndBalanced) {
  Cat s = a2(3);
  const auto ind = s.indecomposables();
  const auto a = sample_octahedral_instances(s.T, ind, 20, 7);
  const auto b = sample_octahedral_instances(s.T, ind, 20, 7);
  ASSERT_EQ(a.size(), 20u);
  EXPECT_EQ(a, b);
  for (const auto& [X, Y, Z, M] : a) {
    const auto [l, r] = octahedral_sides(s.T, X, Y, Z, M);
    EXPECT_EQ(l, r) << X.str() << Y.str() << Z.str() << M.str();
  }
}
