#include <gtest/gtest.h>

#include <random>
#include <set>

#include "hallie/ffield.hpp"

using namespace hallie;

TEST(Field, PrimeFieldHasDegreeOne) {
  auto F = make_field(3);
  EXPECT_EQ(F->p(), 3);
  EXPECT_EQ(F->n(), 1);
  EXPECT_EQ(F->q(), 3);
}

// Exhaustive oracle: x^2 + x + 1 is the only monic irreducible quadratic over F_2.
TEST(Field, F4ModulusIsOnlyIrreducibleQuadratic) {
  int irreducible = 0;
  std::vector<int> found;
  for (int c0 = 0; c0 < 2; ++c0)
    for (int c1 = 0; c1 < 2; ++c1) {
      bool has_root = false;
      for (int x = 0; x < 2; ++x)
        if ((x * x + c1 * x + c0) % 2 == 0) has_root = true;
      if (!has_root) {
        ++irreducible;
        found = {c0, c1, 1};
      }
    }
  ASSERT_EQ(irreducible, 1);
  auto F = make_field(4);
  EXPECT_EQ(F->p(), 2);
  EXPECT_EQ(F->n(), 2);
  EXPECT_EQ(F->modulus(), found);
}

TEST(Field, RejectsNonPrimePowers) {
  EXPECT_THROW(make_field(6), InputError);
  EXPECT_THROW(make_field(1), InputError);
  EXPECT_THROW(make_field(12), InputError);
  EXPECT_NO_THROW(make_field(9));
  EXPECT_NO_THROW(make_field(25));
}

TEST(Field, F4XSquaredIsXPlusOne) {
  auto F = make_field(4);
  const int xc[] = {0, 1};
  const int xp1[] = {1, 1};
  const Elem x = F->from_coeffs(xc);
  EXPECT_EQ(F->mul(x, x), F->from_coeffs(xp1));
}

TEST(Field, F5InverseOfTwo) {
  auto F = make_field(5);
  EXPECT_EQ(F->inv(2), 3);
  EXPECT_THROW(F->inv(0), Error);
}

class FieldAxioms : public ::testing::TestWithParam<int> {};

TEST_P(FieldAxioms, HoldExhaustively) {
  auto F = make_field(GetParam());
  const int q = F->q();
  int units = 0;
  for (int a = 0; a < q; ++a) {
    const Elem ea = static_cast<Elem>(a);
    EXPECT_EQ(F->add(ea, F->neg(ea)), 0);
    if (a != 0) {
      EXPECT_EQ(F->mul(ea, F->inv(ea)), 1);
      ++units;
    }
    for (int b = 0; b < q; ++b) {
      const Elem eb = static_cast<Elem>(b);
      EXPECT_EQ(F->add(ea, eb), F->add(eb, ea));
      EXPECT_EQ(F->mul(ea, eb), F->mul(eb, ea));
      for (int c = 0; c < q; ++c) {
        const Elem ec = static_cast<Elem>(c);
        EXPECT_EQ(F->mul(ea, F->add(eb, ec)), F->add(F->mul(ea, eb), F->mul(ea, ec)));
        EXPECT_EQ(F->mul(F->mul(ea, eb), ec), F->mul(ea, F->mul(eb, ec)));
      }
    }
  }
  EXPECT_EQ(units, q - 1);
  // The primitive element generates all units.
  std::set<Elem> powers;
  Elem x = 1;
  for (int i = 0; i < q - 1; ++i, x = F->mul(x, F->primitive())) powers.insert(x);
  EXPECT_EQ(static_cast<int>(powers.size()), q - 1);
}

INSTANTIATE_TEST_SUITE_P(SmallFields, FieldAxioms, ::testing::Values(2, 3, 4, 5, 7, 8, 9));

TEST(Matrix, IdentityAndZeroRanks) {
  auto F = make_field(3);
  EXPECT_EQ(rank(*F, Matrix::identity(2)), 2);
  EXPECT_EQ(kernel_basis(*F, Matrix::identity(2)).cols(), 0);
  Matrix z(2, 3);
  EXPECT_EQ(rank(*F, z), 0);
  EXPECT_EQ(kernel_basis(*F, z).cols(), 3);
}

TEST(Matrix, RankOneOverF5) {
  auto F = make_field(5);
  Matrix A(2, 2);
  A(0, 0) = 1, A(0, 1) = 2, A(1, 0) = 2, A(1, 1) = 4;
  EXPECT_EQ(rank(*F, A), 1);
  const Matrix K = kernel_basis(*F, A);
  ASSERT_EQ(K.cols(), 1);
  // The kernel is the line through (3, 1).
  const std::vector<Elem> v = K.column(0);
  EXPECT_EQ(F->mul(v[0], F->inv(v[1])), 3);
  EXPECT_TRUE(mul(*F, A, K).is_zero());
}

TEST(Matrix, SingularInverseThrows) {
  auto F = make_field(5);
  Matrix A(2, 2);
  A(0, 0) = 1, A(0, 1) = 2, A(1, 0) = 2, A(1, 1) = 4;
  EXPECT_THROW(inverse(*F, A), Error);
  EXPECT_THROW(inverse(*F, Matrix(2, 3)), Error);
}

TEST(Matrix, EmptyShapes) {
  auto F = make_field(2);
  Matrix a(0, 3), b(3, 0);
  EXPECT_EQ(mul(*F, b, a).rows(), 3);
  EXPECT_TRUE(mul(*F, b, a).is_zero());
  EXPECT_EQ(mul(*F, a, b).rows(), 0);
  EXPECT_EQ(rank(*F, a), 0);
  EXPECT_EQ(kernel_basis(*F, a).cols(), 3);
}

class RandomMatrices : public ::testing::TestWithParam<int> {};

TEST_P(RandomMatrices, RankKernelSolveInverse) {
  auto F = make_field(GetParam());
  std::mt19937 rng(1234 + GetParam());
  for (int trial = 0; trial < 200; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 5), c = 1 + static_cast<int>(rng() % 5);
    Matrix A(r, c);
    for (auto& x : A.data()) x = static_cast<Elem>(rng() % F->q());
    const int rk = rank(*F, A);
    EXPECT_EQ(rk, rank(*F, transpose(A)));
    const Matrix K = kernel_basis(*F, A);
    EXPECT_EQ(rk + K.cols(), c);
    EXPECT_TRUE(mul(*F, A, K).is_zero());
    std::vector<Elem> x(c);
    for (auto& e : x) e = static_cast<Elem>(rng() % F->q());
    const std::vector<Elem> b = apply(*F, A, x);
    auto sol = solve(*F, A, b);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(apply(*F, A, *sol), b);
    if (r == c) {
      auto inv = try_inverse(*F, A);
      EXPECT_EQ(inv.has_value(), rk == r);
      if (inv) EXPECT_EQ(mul(*F, A, *inv), Matrix::identity(r));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SmallFields, RandomMatrices, ::testing::Values(2, 3, 4, 5, 9));

TEST(Matrix, ExtendToBasisKeepsPrefix) {
  auto F = make_field(3);
  Matrix S(3, 1);
  S(0, 0) = 1, S(1, 0) = 2;
  const Matrix E = extend_to_basis(*F, S);
  EXPECT_EQ(E.cols(), 3);
  EXPECT_TRUE(is_invertible(*F, E));
  EXPECT_EQ(submatrix(E, 0, 0, 3, 1), S);
}
