#include <gtest/gtest.h>

#include "pointwise.hpp"
#include "saw/oracle.hpp"
#include "saw/sampling.hpp"

namespace saw {
namespace {

using testing::pointwise_member;

SemiAlgebraicSet unit_sphere() { return sphere_of(AffineMap::identity(3), 3); }

TEST(Fiber, ProjectedSphereExamples) {
  Expr e = parse_rae("proj[1,2](S)", {}, 3);
  MembershipOracle o = eval_oracle(e, unit_sphere());
  EXPECT_EQ(o(Point{0, 0}), Answer::In);
  EXPECT_EQ(o(Point{2, 0}), Answer::Out);
  EXPECT_EQ(o(Point{1, 0}), Answer::In);
  EXPECT_EQ(o(Point{Rational(1, 3), Rational(1, 7)}), Answer::In);  // irrational fiber point
  EXPECT_EQ(o(Point{Rational(101, 100), 0}), Answer::Out);
  EXPECT_FALSE(o.closed_form.has_value());
  EXPECT_THROW(o(Point{0, 0, 0}), DimensionMismatch);
}

TEST(Fiber, DirectSearch) {
  SemiAlgebraicSet k = sphere_of(AffineMap(Rational(1, 4), {1, 1, 1}), 3);
  CoordBounds b = bounds_of(k);
  std::vector<std::optional<Rational>> fixed{Rational(1), std::nullopt, std::nullopt};
  EXPECT_EQ(fiber_search(k, fixed, b), Answer::In);
  fixed[0] = Rational(3, 2);
  EXPECT_EQ(fiber_search(k, fixed, b), Answer::Out);
}

TEST(EvalOracle, MissingBoundIsAnError) {
  Environment env{{"H", SemiAlgebraicSet::from_basic(BasicSet(3, {}, {parse_polynomial("x3 - x1", 3)}))}};
  Expr e = parse_rae("proj[1,2](H)", env, 3);
  EXPECT_THROW(eval_oracle(e, unit_sphere()), Error);
  OracleOptions opts;
  opts.search_range = Interval(-4, 4);
  MembershipOracle o = eval_oracle(e, unit_sphere(), opts);
  EXPECT_EQ(o(Point{0, 0}), Answer::In);
}

TEST(EvalOracle, ProjectedDisksAnalytic) {
  // proj[1,2](S) & proj[1,2](D): unit disk meets the disk of radius 1 about (1, 0).
  Environment env{{"D", ball_of(AffineMap(1, {1, 0, 0}), 3)}};
  Expr e = parse_rae("proj[1,2](S) & proj[1,2](D)", env, 3);
  MembershipOracle o = eval_oracle(e, unit_sphere());
  Rng rng(3);
  int unknown = 0;
  for (int i = 0; i < 400; ++i) {
    Point y = rng.in_box(Box::cube(2, -2, 2), 5);
    bool truth = y[0] * y[0] + y[1] * y[1] <= 1 && (y[0] - 1) * (y[0] - 1) + y[1] * y[1] <= 1;
    Answer a = o(y);
    if (a == Answer::Unknown) ++unknown;
    if (a != Answer::Unknown) ASSERT_EQ(a == Answer::In, truth) << to_string(y);
  }
  EXPECT_LT(unknown, 8);
}

TEST(EvalOracle, ProjectionOfProductLinksCoordinates) {
  // proj[1,4](S x S) is the square [-1,1]^2.
  Expr e = parse_rae("proj[1,4](S x S)", {}, 3);
  MembershipOracle o = eval_oracle(e, unit_sphere());
  EXPECT_EQ(o(Point{Rational(1, 2), Rational(-1, 3)}), Answer::In);
  EXPECT_EQ(o(Point{Rational(1, 2), Rational(3, 2)}), Answer::Out);
  Expr twice = parse_rae("proj[1](proj[1,3](S) & proj[2,1](S))", {}, 3);
  MembershipOracle t = eval_oracle(twice, unit_sphere());
  EXPECT_EQ(t(Point{Rational(1, 2)}), Answer::In);
  EXPECT_EQ(t(Point{Rational(5, 4)}), Answer::Out);
}

TEST(EvalOracle, SampledProjectionNeverClaimsOut) {
  // S minus the cylinder over its own shadow is empty; only Out by bounds or Unknown.
  Expr e = parse_rae("proj[1,2](S \\ (proj[1,2](S) x R1))", {}, 3);
  OracleOptions opts;
  opts.sample_budget = 8;
  MembershipOracle o = eval_oracle(e, unit_sphere(), opts);
  Rng rng(6);
  for (int i = 0; i < 50; ++i) EXPECT_NE(o(rng.in_box(Box::cube(2, -1, 1), 5)), Answer::In);
  EXPECT_EQ(o(Point{3, 0}), Answer::Out);
}

TEST(EvalOracle, HintsCarryDistinguishedPoints) {
  AffineMap tau(Rational(1, 4), {Rational(1, 2), 0, 0});
  MembershipOracle o = eval_oracle(parse_rae("proj[1,2](S)", {}, 3), dotted_sphere_of(tau, 3));
  ASSERT_EQ(o.hints.size(), 1u);
  EXPECT_EQ(o.hints[0], (Point{Rational(1, 2), 0}));
  EXPECT_EQ(o(o.hints[0]), Answer::In);
}

Environment quadric_env() {
  Box b = Box::cube(3, -2, 2);
  return {
      {"G1", SemiAlgebraicSet::from_basic(BasicSet(3, {}, {parse_polynomial("x1 + x2 - 1/2", 3)})).clipped(b)},
      {"G2", ball_of(AffineMap(Rational(3, 4), {Rational(1, 2), 0, 0}), 3)},
      {"G3", SemiAlgebraicSet::from_basic(BasicSet(3, {}, {parse_polynomial("1 - x1^2 - x3^2", 3)})).clipped(b)},
  };
}

TEST(OracleProperty, AgreesWithClosedFormWhenProjectionFree) {
  Environment env = quadric_env();
  SemiAlgebraicSet s = dotted_sphere_of(AffineMap(Rational(1, 2), {0, Rational(1, 4), 0}), 3);
  Rng rng(12);
  for (const char* text : {"S", "(S & G1) | (G2 \\ S)", "G3 \\ (S | G1)", "(G1 & G2) | (S & G3)", "S \\ G2"}) {
    Expr e = parse_rae(text, env, 3);
    MembershipOracle o = eval_oracle(e, s);
    ASSERT_TRUE(o.closed_form.has_value());
    for (int i = 0; i < 1000; ++i) {
      Point p = i % 3 ? rng.in_box(Box::cube(3, -2, 2), 8) : rng.in_box(Box::cube(3, -2, 2), 3);
      Answer a = o(p);
      ASSERT_NE(a, Answer::Unknown);
      ASSERT_EQ(a == Answer::In, pointwise_member(e, s, p)) << text << " " << to_string(p);
    }
    for (const auto& h : o.hints) EXPECT_EQ(o(h) == Answer::In, pointwise_member(e, s, h));
  }
}

TEST(OracleProperty, PositiveExpressionsAreMonotone) {
  Environment env = quadric_env();
  AffineMap tau(Rational(1, 2), {0, 0, Rational(1, 4)});
  SemiAlgebraicSet small = sphere_of(tau, 3), large = ball_of(tau, 3);
  Rng rng(44);
  for (const char* text : {"proj[1,2](S & G1)", "proj[1,3](S) | proj[2,3](G2)", "proj[2,3](G3 & (S | G1))"}) {
    Expr e = parse_rae(text, env, 3);
    MembershipOracle lo = eval_oracle(e, small), hi = eval_oracle(e, large);
    int in = 0;
    for (int i = 0; i < 400; ++i) {
      Point p = rng.in_box(Box::cube(2, -1, 1), 6);
      if (lo(p) != Answer::In) continue;
      ++in;
      ASSERT_EQ(hi(p), Answer::In) << text << " " << to_string(p);
    }
    EXPECT_GT(in, 5) << text;
  }
}

}  // namespace
}  // namespace saw
