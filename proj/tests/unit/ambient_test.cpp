#include <random>

#include <gtest/gtest.h>

#include "norden/ambient.hpp"
#include "norden/errors.hpp"
#include "support.hpp"

namespace norden {
namespace {

using testing::example_algebra;
using testing::example_ambient;
using testing::example_norden;
using testing::mat;
using testing::vec;

// Expected values below come from tests/oracle/oracle.py.

TEST(Validation, AcceptsExample) {
  EXPECT_TRUE(validate_lie_algebra(example_algebra()).passed());
  EXPECT_TRUE(validate_norden(example_norden()).passed());
}

TEST(Validation, RejectsBrokenAntisymmetry) {
  auto spec = example_algebra();
  spec.structure_constants(1, 0, 3) = Rational(0);
  const auto rep = validate_lie_algebra(spec);
  const Check* f = rep.first_failure();
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->name, "antisymmetry");
  EXPECT_EQ(f->witness, (std::vector<std::size_t>{1, 2, 4}));
}

TEST(Validation, RejectsJacobiViolation) {
  auto spec = LieAlgebraSpec::abelian(4);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, long q) {
    spec.structure_constants(i, j, k) = Rational(q);
    spec.structure_constants(j, i, k) = Rational(-q);
  };
  // [X1,X2] = X3, [X1,X3] = X1: [[X1,X2],X1] + ... does not cancel.
  set(0, 1, 2, 1);
  set(0, 2, 0, 1);
  const auto rep = validate_lie_algebra(spec);
  ASSERT_NE(rep.first_failure(), nullptr);
  EXPECT_EQ(rep.first_failure()->name, "jacobi");
}

TEST(Validation, RejectsOddDimension) {
  const auto rep = validate_lie_algebra(LieAlgebraSpec::abelian(3));
  ASSERT_NE(rep.find("dimension"), nullptr);
  EXPECT_FALSE(rep.find("dimension")->passed);
}

TEST(Validation, RejectsIdentityJ) {
  const auto ns = NordenStructure::make(example_norden().g, Matrix::Identity(4, 4));
  const auto rep = validate_norden(ns);
  EXPECT_FALSE(rep.find("J_squared")->passed);
  EXPECT_THROW(build_ambient(example_algebra(), ns), ValidationFailure);
}

TEST(Validation, RejectsMetricThatIsNotAntiIsometric) {
  Matrix g = example_norden().g;
  g(0, 0) = Rational(2);
  EXPECT_FALSE(validate_norden(NordenStructure::make(g, testing::example_J())).find("anti_isometry")->passed);
}

TEST(Validation, RejectsDegenerateMetric) {
  const auto ns = NordenStructure::make(Matrix::Zero(4, 4), testing::example_J());
  EXPECT_FALSE(validate_norden(ns).passed());
}

TEST(LeviCivita, ExampleConnectionNonzeros) {
  const auto amb = example_ambient();
  Tensor expected = Tensor::cube(3, 4);
  expected(1, 0, 3) = Rational(2);
  expected(1, 1, 2) = Rational(-2);
  expected(1, 2, 1) = Rational(-2);
  expected(1, 3, 0) = Rational(2);
  expected(3, 0, 1) = Rational(-2);
  expected(3, 1, 0) = Rational(2);
  expected(3, 2, 3) = Rational(-2);
  expected(3, 3, 2) = Rational(2);
  EXPECT_EQ(amb.gamma, expected);
  EXPECT_TRUE(amb.gamma(0, 0, 0).is_zero());
}

TEST(Kaehler, ExampleIsKaehler) {
  const auto amb = example_ambient();
  EXPECT_TRUE(amb.kaehler.is_kaehler_norden);
  EXPECT_TRUE(amb.kaehler.F.is_zero());
  EXPECT_TRUE(amb.kaehler.Phi.is_zero());
}

TEST(Kaehler, FundamentalTensorForModifiedMetric) {
  const auto ns = example_norden(2);
  const auto spec = example_algebra();
  const Tensor F = fundamental_tensor(levi_civita(spec, ns.g), ns.g, ns.J);
  Tensor expected = Tensor::cube(3, 4);
  expected(1, 1, 0) = Rational(-2);
  expected(1, 3, 2) = Rational(-1);
  expected(3, 1, 2) = Rational(-1);
  expected(3, 3, 0) = Rational(2);
  EXPECT_EQ(F, expected);
}

TEST(Curvature, ExampleRiemannNonzeros) {
  const auto amb = example_ambient();
  Tensor expected = Tensor::cube(4, 4);
  auto put = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l, long v) {
    expected(i - 1, j - 1, k - 1, l - 1) = Rational(v);
  };
  put(1, 2, 1, 2, -4), put(1, 2, 2, 1, 4), put(1, 2, 3, 4, 4), put(1, 2, 4, 3, -4);
  put(1, 4, 1, 4, 4), put(1, 4, 2, 3, -4), put(1, 4, 3, 2, 4), put(1, 4, 4, 1, -4);
  put(2, 3, 1, 4, -4), put(2, 3, 2, 3, 4), put(2, 3, 3, 2, -4), put(2, 3, 4, 1, 4);
  put(3, 4, 1, 2, 4), put(3, 4, 2, 1, -4), put(3, 4, 3, 4, -4), put(3, 4, 4, 3, 4);
  // slot (1,2) antisymmetric copies
  for (std::size_t f = 0; f < expected.size(); ++f) {
    const auto idx = expected.unflatten(f);
    if (!expected.entries()[f].is_zero() && idx[0] < idx[1])
      expected(idx[1], idx[0], idx[2], idx[3]) = -expected.entries()[f];
  }
  EXPECT_EQ(amb.curv.riemann04, expected);
  EXPECT_TRUE(is_zero(amb.curvature_vector(vec({0, 1, 0, 0}), vec({0, 0, 0, 1}), vec({0, 0, 0, 1}))));
}

TEST(Curvature, FlatAbelian) {
  const auto amb = testing::flat_ambient();
  EXPECT_TRUE(amb.curv.riemann04.is_zero());
  EXPECT_TRUE(amb.ricci.is_zero());
  EXPECT_TRUE(amb.trsc.constant);
  EXPECT_TRUE(amb.trsc.nu.is_zero());
  EXPECT_TRUE(amb.trsc.nu_tilde.is_zero());
  ASSERT_TRUE(amb.associated.primed);
  EXPECT_TRUE(amb.associated.primed->nu.is_zero());
  EXPECT_TRUE(amb.associated.primed->nu_tilde.is_zero());
}

TEST(PiTensors, ExampleComponents) {
  const auto pi = pi_tensors(example_norden());
  EXPECT_EQ(pi.pi1(0, 3, 3, 0), Rational(-1));
  EXPECT_EQ(pi.pi2(0, 3, 3, 0), Rational(0));
  EXPECT_FALSE(pi_relations_violation(example_norden()));
}

TEST(Trsc, ExampleConstants) {
  const auto amb = example_ambient();
  ASSERT_TRUE(amb.trsc.constant);
  EXPECT_FALSE(amb.trsc.degenerate);
  EXPECT_EQ(amb.trsc.nu, Rational(4));
  EXPECT_EQ(amb.trsc.nu_tilde, Rational(0));
  ASSERT_TRUE(amb.associated.primed);
  EXPECT_EQ(amb.associated.primed->nu, Rational(0));
  EXPECT_EQ(amb.associated.primed->nu_tilde, Rational(4));
  EXPECT_TRUE(amb.associated.primed_relation_holds);
}

TEST(Trsc, PerturbedTableIsNotConstant) {
  const auto amb = example_ambient();
  Tensor r = amb.curv.riemann04;
  r(0, 3, 3, 0) = Rational(-5);
  EXPECT_FALSE(constant_trsc(r, amb.pi).constant);
}

TEST(Ricci, ExampleTrace) {
  const auto amb = example_ambient();
  EXPECT_EQ(amb.ricci.to_matrix(), mat({{8, 0, 0, 0}, {0, 8, 0, 0}, {0, 0, -8, 0}, {0, 0, 0, -8}}));
  // nu = 4 != 0, so the closed form cross-check is skipped.
  EXPECT_FALSE(amb.ricci_closed_form_agrees);
}

TEST(Ricci, SyntheticPi3MatchesClosedForm) {
  const auto ns = example_norden();
  const auto pi = pi_tensors(ns);
  const Matrix ginv = inverse(ns.g);
  Tensor r13 = Tensor::cube(4, 4);
  for (std::size_t f = 0; f < r13.size(); ++f) {
    const auto idx = r13.unflatten(f);
    Rational acc;
    for (std::size_t m = 0; m < 4; ++m) acc += pi.pi3(idx[0], idx[1], idx[2], m) * ginv(static_cast<Index>(m), static_cast<Index>(idx[3]));
    r13.entries()[f] = acc;
  }
  const Tensor ric = ambient_ricci(r13);
  EXPECT_EQ(ric, ambient_ricci_closed_form(ns, Rational(1)));
  EXPECT_EQ(ric.to_matrix(), mat({{0, 0, 2, 0}, {0, 0, 0, 2}, {2, 0, 0, 0}, {0, 2, 0, 0}}));
}

TEST(Ricci, SwappedExampleMatchesClosedForm) {
  const auto amb = testing::swapped_ambient();
  ASSERT_TRUE(amb.trsc.constant);
  EXPECT_EQ(amb.trsc.nu, Rational(0));
  EXPECT_EQ(amb.trsc.nu_tilde, Rational(4));
  ASSERT_TRUE(amb.ricci_closed_form_agrees);
  EXPECT_TRUE(*amb.ricci_closed_form_agrees);
}

TEST(Identities, ExamplePassesAll) {
  const auto amb = example_ambient();
  EXPECT_TRUE(amb.identities.passed()) << amb.identities.first_failure()->name;
  EXPECT_NE(amb.identities.find("kaehler_identities"), nullptr);
  EXPECT_NE(amb.identities.find("holomorphic_curvature_zero"), nullptr);
}

TEST(Format, LinearCombinations) {
  EXPECT_EQ(format_combination(vec({0, -2, 0, 0})), "-2X2");
  EXPECT_EQ(format_combination(vec({1, 0, -1, 0})), "X1 - X3");
  Vector half(2);
  half << Rational(1, 2), Rational(-1, 3);
  EXPECT_EQ(format_combination(half), "(1/2)X1 - (1/3)X2");
  EXPECT_EQ(format_combination(vec({0, 0})), "0");
}

// Properties over random instances.

TEST(AmbientProperty, ConjugatedExampleKeepsInvariants) {
  std::mt19937_64 rng(101);
  for (int n = 0; n < 100; ++n) {
    const Matrix P = testing::random_invertible(rng, 4);
    const auto inst = testing::conjugate(example_algebra(), example_norden(), P);
    const auto amb = build_ambient(inst.algebra, inst.norden);
    ASSERT_TRUE(amb.kaehler.is_kaehler_norden);
    ASSERT_TRUE(amb.identities.passed()) << amb.identities.first_failure()->name;
    ASSERT_TRUE(amb.trsc.constant);
    EXPECT_EQ(amb.trsc.nu, Rational(4));
    EXPECT_EQ(amb.trsc.nu_tilde, Rational(0));
    EXPECT_EQ(amb.associated.primed->nu_tilde, Rational(4));
  }
}

TEST(AmbientProperty, ComplexKaehlerInstances) {
  std::mt19937_64 rng(202);
  for (int n = 0; n < 100; ++n) {
    const auto inst = testing::random_complex_kaehler(rng, n % 3 == 0 ? 3 : 2);
    const auto amb = build_ambient(inst.algebra, inst.norden);
    ASSERT_TRUE(amb.kaehler.is_kaehler_norden) << "instance " << n;
    ASSERT_TRUE(amb.identities.passed()) << amb.identities.first_failure()->name;
    if (amb.trsc.constant && !amb.trsc.degenerate) EXPECT_TRUE(amb.associated.primed_relation_holds);
  }
}

TEST(AmbientProperty, GenericNordenInstances) {
  std::mt19937_64 rng(303);
  int built = 0;
  int non_kaehler = 0;
  while (built < 120) {
    const std::size_t d = built % 4 == 0 ? 6 : 4;
    const auto ns = testing::random_norden(rng, d);
    if (!validate_norden(ns).passed()) continue;
    const auto amb = build_ambient(testing::random_semidirect(rng, d), ns);
    ++built;
    if (!amb.kaehler.is_kaehler_norden) ++non_kaehler;
    EXPECT_TRUE(amb.identities.passed()) << amb.identities.first_failure()->name;
    EXPECT_EQ(amb.kaehler.F.is_zero(), amb.kaehler.Phi.is_zero());
  }
  EXPECT_GT(non_kaehler, 0);
}

}  // namespace
}  // namespace norden
