#include <random>

#include <gtest/gtest.h>

#include "norden/errors.hpp"
#include "norden/hypersurface.hpp"
#include "support.hpp"

namespace norden {
namespace {

using testing::build_lightlike;
using testing::example_ambient;
using testing::example_hypersurface;
using testing::vec;

Vector half_x1() {
  Vector v = Vector::Zero(4);
  v(0) = Rational(1, 2);
  return v;
}

TEST(Classify, ExampleAssociatedIsLightlike) {
  const auto amb = example_ambient();
  const auto cls = induce_and_classify(example_hypersurface(), amb);
  ASSERT_TRUE(cls.lightlike);
  EXPECT_EQ(*cls.radical, vec({0, 0, 1, 0}));
}

TEST(Classify, ExamplePrincipalIsNondegenerate) {
  const auto amb = example_ambient();
  const auto hs = HypersurfaceSpec::coordinate(4, {1, 2, 3}, InducingMetric::principal);
  const auto cls = induce_and_classify(hs, amb);
  EXPECT_FALSE(cls.lightlike);
  EXPECT_EQ(cls.gram, testing::mat({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}));
}

TEST(Classify, SecondSubalgebraRadical) {
  const auto amb = example_ambient();
  const auto hs = HypersurfaceSpec::coordinate(4, {0, 1, 3}, InducingMetric::associated);
  const auto cls = induce_and_classify(hs, amb);
  ASSERT_TRUE(cls.lightlike);
  EXPECT_EQ(*cls.radical, vec({1, 0, 0, 0}));
}

TEST(Classify, RejectsNonSubalgebraAndBadSpans) {
  const auto amb = example_ambient();
  // [X1, X2] = -2X4 leaves span{X1, X2, X3}.
  EXPECT_THROW(induce_and_classify(HypersurfaceSpec::coordinate(4, {0, 1, 2}, InducingMetric::principal), amb),
               HypothesisFailure);
  HypersurfaceSpec dependent;
  dependent.span = {vec({0, 1, 0, 0}), vec({0, 2, 0, 0}), vec({0, 0, 0, 1})};
  EXPECT_THROW(induce_and_classify(dependent, amb), HypothesisFailure);
  EXPECT_THROW(induce_and_classify(HypersurfaceSpec::coordinate(4, {1, 2}, InducingMetric::principal), amb),
               ShapeError);
}

TEST(Screen, ExampleScreenIsX2X4) {
  const auto amb = example_ambient();
  const auto ll = build_lightlike(example_hypersurface(), amb);
  ASSERT_EQ(ll.frame.screen.size(), 2u);
  EXPECT_EQ(ll.frame.screen[0], vec({0, 1, 0, 0}));
  EXPECT_EQ(ll.frame.screen[1], vec({0, 0, 0, 1}));
}

TEST(Screen, ReversedInputOrderGivesValidScreen) {
  const auto amb = example_ambient();
  auto hs = HypersurfaceSpec::coordinate(4, {3, 2, 1}, InducingMetric::associated, vec({0, 0, -1, 0}));
  const auto ll = build_lightlike(hs, amb);
  EXPECT_EQ(ll.frame.screen[0], vec({0, 0, 0, 1}));
  EXPECT_EQ(ll.frame.screen[1], vec({0, 1, 0, 0}));
  EXPECT_EQ(ll.frame.N, vec({1, 0, 0, 0}));
  EXPECT_TRUE(ll.rt.is_rt);
  EXPECT_EQ(*ll.umb.rho, Rational(-2));
}

TEST(Screen, FlatNullDirectionIsDeterministic) {
  const auto amb = testing::flat_ambient();
  HypersurfaceSpec hs;
  hs.span = {vec({1, 0, 1, 0}), vec({0, 1, 0, 0}), vec({0, 0, 0, 1})};
  const auto cls = induce_and_classify(hs, amb);
  ASSERT_TRUE(cls.lightlike);
  EXPECT_EQ(*cls.radical, vec({1, 0, 1, 0}));
  const auto first = construct_screen(hs, *cls.radical, amb);
  const auto second = construct_screen(hs, *cls.radical, amb);
  EXPECT_EQ(first, second);
  EXPECT_EQ(first, (std::vector<Vector>{vec({0, 1, 0, 0}), vec({0, 0, 0, 1})}));
}

TEST(Transversal, ExampleNormal) {
  const auto amb = example_ambient();
  const auto ll = build_lightlike(example_hypersurface(), amb);
  EXPECT_EQ(ll.frame.xi, vec({0, 0, -1, 0}));
  EXPECT_EQ(ll.frame.N, vec({1, 0, 0, 0}));
  EXPECT_EQ(ll.frame.inner(ll.frame.N, ll.frame.xi), Rational(1));
  EXPECT_TRUE(ll.frame.inner(ll.frame.N, ll.frame.N).is_zero());
  for (const auto& w : ll.frame.screen) EXPECT_TRUE(ll.frame.inner(ll.frame.N, w).is_zero());
}

TEST(Transversal, RescaledHint) {
  const auto amb = example_ambient();
  auto hs = example_hypersurface();
  hs.xi_hint = vec({0, 0, -2, 0});
  const auto ll = build_lightlike(hs, amb);
  EXPECT_EQ(ll.frame.N, half_x1());
  EXPECT_EQ(*ll.rt.b, Rational(4));
}

TEST(Transversal, HintOutsideRadicalIsRejected) {
  const auto amb = example_ambient();
  auto hs = example_hypersurface();
  hs.xi_hint = vec({0, 1, 0, 0});
  const auto cls = induce_and_classify(hs, amb);
  const auto screen = construct_screen(hs, *cls.radical, amb);
  EXPECT_THROW(construct_transversal(hs, amb, *cls.radical, screen), HypothesisFailure);
}

TEST(RadicalTransversal, ExampleB) {
  const auto amb = example_ambient();
  const auto ll = build_lightlike(example_hypersurface(), amb);
  EXPECT_TRUE(ll.rt.is_rt);
  EXPECT_TRUE(ll.rt.screen_holomorphic);
  EXPECT_EQ(*ll.rt.b, Rational(1));
}

TEST(RadicalTransversal, SecondSubalgebra) {
  const auto amb = example_ambient();
  const auto ll = build_lightlike(HypersurfaceSpec::coordinate(4, {0, 1, 3}, InducingMetric::associated), amb);
  EXPECT_EQ(ll.frame.xi, vec({1, 0, 0, 0}));
  EXPECT_EQ(ll.frame.N, vec({0, 0, -1, 0}));
  EXPECT_TRUE(ll.rt.is_rt);
  EXPECT_EQ(*ll.rt.b, Rational(-1));
}

TEST(GaussWeingarten, ExampleShapeOperators) {
  const auto amb = example_ambient();
  const auto ll = build_lightlike(example_hypersurface(), amb);
  const auto& f = ll.frame;
  // span coordinates: s1 = X2, s2 = X3, s3 = X4
  EXPECT_EQ(f.to_ambient(ll.sf.A_star_xi.col(0)), vec({0, -2, 0, 0}));
  EXPECT_EQ(f.to_ambient(ll.sf.A_star_xi.col(2)), vec({0, 0, 0, -2}));
  EXPECT_EQ(f.to_ambient(ll.sf.A_N.col(0)), vec({0, 0, 0, -2}));
  EXPECT_EQ(f.to_ambient(ll.sf.A_N.col(2)), vec({0, 2, 0, 0}));
  EXPECT_TRUE(is_zero(ll.sf.tau));
  EXPECT_EQ(ll.sf.B, testing::mat({{0, 0, 2}, {0, 0, 0}, {2, 0, 0}}));
  EXPECT_EQ(f.inner(vec({0, 1, 0, 0}), vec({0, 0, 0, 1})), Rational(-1));
}

TEST(GaussWeingarten, FlatTotallyGeodesic) {
  const auto amb = testing::flat_ambient();
  const auto ll = build_lightlike(example_hypersurface(), amb);
  EXPECT_TRUE(is_zero(ll.sf.B));
  EXPECT_TRUE(is_zero(ll.sf.A_star_xi));
  EXPECT_TRUE(is_zero(ll.sf.A_N));
  ASSERT_TRUE(ll.umb.rho);
  EXPECT_EQ(*ll.umb.rho, Rational(0));
  EXPECT_TRUE(verify_frame_identities(ll.sf, ll.frame, amb).passed());
}

TEST(Umbilical, ExampleRho) {
  const auto amb = example_ambient();
  const auto ll = build_lightlike(example_hypersurface(), amb);
  ASSERT_TRUE(ll.umb.rho);
  EXPECT_EQ(*ll.umb.rho, Rational(-2));
}

TEST(Umbilical, SecondSubalgebraWitness) {
  const auto amb = example_ambient();
  const auto ll = build_lightlike(HypersurfaceSpec::coordinate(4, {0, 1, 3}, InducingMetric::associated), amb);
  EXPECT_FALSE(ll.umb.rho);
  EXPECT_EQ(ll.umb.witness_vector, vec({0, 1, 0, 0}));
  EXPECT_EQ(ll.umb.witness_image, vec({0, 0, 0, -2}));
  EXPECT_EQ(ll.umb.detail, "A*_xi(X2) = -2X4 is not parallel to X2");
}

TEST(FrameIdentities, ExamplePassesAll) {
  const auto amb = example_ambient();
  const auto ll = build_lightlike(example_hypersurface(), amb);
  const auto rep = verify_frame_identities(ll.sf, ll.frame, amb);
  EXPECT_TRUE(rep.passed()) << rep.first_failure()->name;
  ASSERT_NE(rep.find("A_N_umbilical_form"), nullptr);
  // A_N X2 = (rho / b) J X2 = -2X4
  EXPECT_EQ(ll.frame.to_ambient(ll.sf.A_N.col(0)), Rational(-2) * amb.norden.apply_J(vec({0, 1, 0, 0})));
}

TEST(FrameIdentities, NeedRadicalTransversalFrame) {
  const auto amb = example_ambient();
  auto ll = build_lightlike(example_hypersurface(), amb);
  ll.frame.b.reset();
  EXPECT_THROW(verify_frame_identities(ll.sf, ll.frame, amb), HypothesisFailure);
}

TEST(Gauge, RescaleMatchesRecompute) {
  const auto amb = example_ambient();
  const auto ll = build_lightlike(example_hypersurface(), amb);
  for (long c : {2L, -1L, 3L}) {
    const auto g = gauge_rescale(ll.frame, ll.sf, Rational(c));
    auto hs = example_hypersurface();
    hs.xi_hint = Rational(c) * *hs.xi_hint;
    const auto direct = build_lightlike(hs, amb);
    EXPECT_EQ(g.frame.N, direct.frame.N);
    EXPECT_EQ(*g.frame.b, *direct.rt.b);
    EXPECT_EQ(*g.sf.rho, *direct.umb.rho);
    EXPECT_EQ(g.sf.B, direct.sf.B);
    EXPECT_EQ(g.sf.A_star_xi, direct.sf.A_star_xi);
    EXPECT_EQ(g.sf.A_N, direct.sf.A_N);
    EXPECT_EQ(g.sf.C, direct.sf.C);
    EXPECT_EQ(g.sf.tau, direct.sf.tau);
    EXPECT_EQ(g.sf.induced_gamma, direct.sf.induced_gamma);
    EXPECT_TRUE(verify_frame_identities(g.sf, g.frame, amb).passed());
  }
  const auto two = gauge_rescale(ll.frame, ll.sf, Rational(2));
  EXPECT_EQ(*two.frame.b, Rational(4));
  EXPECT_EQ(*two.sf.rho, Rational(-4));
  const auto minus = gauge_rescale(ll.frame, ll.sf, Rational(-1));
  EXPECT_EQ(*minus.frame.b, Rational(1));
  EXPECT_EQ(*minus.sf.rho, Rational(2));
  const auto one = gauge_rescale(ll.frame, ll.sf, Rational(1));
  EXPECT_EQ(one.frame.N, ll.frame.N);
  EXPECT_EQ(one.sf.B, ll.sf.B);
  EXPECT_THROW(gauge_rescale(ll.frame, ll.sf, Rational(0)), std::domain_error);
}

// Intrinsic curvature-free check of the Gauss formula pieces: the induced
// connection must be the tangential part of nabla-bar for every random frame.

struct RandomRun {
  AmbientGeometry amb;
  HypersurfaceSpec hs;
};

std::vector<RandomRun> conjugated_examples(std::mt19937_64& rng, int count) {
  std::vector<RandomRun> runs;
  while (static_cast<int>(runs.size()) < count) {
    const Matrix P = testing::random_invertible(rng, 4);
    const Matrix Pinv = inverse(P);
    const bool swapped = runs.size() % 2 == 1;
    const auto base = testing::example_norden();
    const auto ns = swapped ? NordenStructure::make(base.g_assoc, base.J) : base;
    const auto inst = testing::conjugate(testing::example_algebra(), ns, P);
    HypersurfaceSpec hs;
    hs.inducing = swapped ? InducingMetric::principal : InducingMetric::associated;
    // Random basis of the image of span{X2, X3, X4}.
    const Matrix mix = testing::random_invertible(rng, 3);
    for (Index a = 0; a < 3; ++a) {
      Vector v = Vector::Zero(4);
      for (Index b = 0; b < 3; ++b) v += mix(b, a) * Pinv.col(b + 1);
      hs.span.push_back(v);
    }
    if (runs.size() % 3 == 0) hs.xi_hint = testing::small_rational(rng, 1, 3) * (Pinv * vec({0, 0, -1, 0}));
    runs.push_back({build_ambient(inst.algebra, inst.norden), hs});
  }
  return runs;
}

TEST(HypersurfaceProperty, ConjugatedExamplesAreRtUmbilical) {
  std::mt19937_64 rng(404);
  for (const auto& run : conjugated_examples(rng, 100)) {
    const auto ll = build_lightlike(run.hs, run.amb);
    ASSERT_TRUE(ll.rt.is_rt);
    ASSERT_TRUE(ll.rt.screen_holomorphic);
    ASSERT_TRUE(ll.umb.rho);
    EXPECT_EQ(*ll.umb.rho * *ll.umb.rho / *ll.rt.b, Rational(4));
    const auto rep = verify_frame_identities(ll.sf, ll.frame, run.amb);
    ASSERT_TRUE(rep.passed()) << rep.first_failure()->name;
    EXPECT_TRUE(is_zero(Vector(ll.sf.B * ll.frame.xi_coords)));

    const Rational c = testing::small_rational(rng, 1, 4) * (rng() % 2 ? Rational(1) : Rational(-1));
    const auto g = gauge_rescale(ll.frame, ll.sf, c);
    EXPECT_EQ(*g.sf.rho * *g.sf.rho / *g.frame.b, Rational(4));
    EXPECT_TRUE(verify_frame_identities(g.sf, g.frame, run.amb).passed());
  }
}

TEST(HypersurfaceProperty, ComplexKaehlerIdealsSatisfyFrameIdentities) {
  std::mt19937_64 rng(505);
  int rt_runs = 0;
  int other_runs = 0;
  for (int n = 0; n < 120; ++n) {
    const std::size_t cn = n % 4 == 0 ? 3 : 2;
    const bool want_rt = n % 6 != 5;
    const auto inst = testing::random_complex_kaehler(rng, cn, want_rt);
    const auto amb = build_ambient(inst.algebra, inst.norden);
    std::vector<std::size_t> idx;
    for (std::size_t i = 1; i < 2 * cn; ++i) idx.push_back(i);
    const auto hs = HypersurfaceSpec::coordinate(2 * cn, idx, InducingMetric::principal);
    const auto cls = induce_and_classify(hs, amb);
    ASSERT_TRUE(cls.lightlike) << "instance " << n;
    const auto ll = build_lightlike(hs, amb);
    // tangential part of nabla-bar reproduces the induced connection
    for (std::size_t a = 0; a < hs.span.size(); ++a)
      for (std::size_t b = 0; b < hs.span.size(); ++b) {
        Vector expect = amb.nabla(hs.span[a], hs.span[b]) - ll.sf.B(static_cast<Index>(a), static_cast<Index>(b)) * ll.frame.N;
        Vector got = Vector::Zero(static_cast<Index>(2 * cn));
        for (std::size_t c = 0; c < hs.span.size(); ++c) got += ll.sf.induced_gamma(a, b, c) * hs.span[c];
        ASSERT_EQ(got, expect);
      }
    ASSERT_EQ(ll.rt.is_rt, want_rt) << "instance " << n;
    if (!ll.rt.is_rt) {
      ++other_runs;
      continue;
    }
    ++rt_runs;
    const auto rep = verify_frame_identities(ll.sf, ll.frame, amb);
    ASSERT_TRUE(rep.passed()) << rep.first_failure()->name << " instance " << n;
  }
  EXPECT_GE(rt_runs, 100);
  EXPECT_GT(other_runs, 0);
}

}  // namespace
}  // namespace norden
