#include <gtest/gtest.h>

#include "saw/polynomial.hpp"
#include "saw/sampling.hpp"

namespace saw {
namespace {

Polynomial P(const char* text, std::size_t n = 3) { return parse_polynomial(text, n); }
Point pt(std::initializer_list<Rational> xs) { return Point(xs); }

TEST(Polynomial, EvalUnitSphere) {
  Polynomial p = P("x1^2 + x2^2 + x3^2 - 1");
  EXPECT_EQ(p.eval(pt({1, 0, 0})), 0);
  EXPECT_EQ(p.eval(pt({0, 0, 0})), -1);
  EXPECT_EQ(p.eval(pt({Rational(1, 2), Rational(1, 2), Rational(1, 2)})), Rational(-1, 4));
}

TEST(Polynomial, EvalDimensionMismatchThrows) {
  EXPECT_THROW(P("x1 + x2").eval(pt({1, 2})), DimensionMismatch);
}

TEST(Polynomial, ParseAndPrintRoundTrip) {
  for (const char* text : {"x1^2 + 2*x1*x2 - 3/4", "-x3 + 1", "0", "x1*x2*x3 - 5*x2^3", "(x1 - 1)^2"}) {
    Polynomial p = P(text);
    EXPECT_EQ(P(p.to_string().c_str()), p) << text << " -> " << p.to_string();
  }
  EXPECT_EQ(P("(x1 - 1)^2").to_string(), "x1^2 - 2*x1 + 1");
  EXPECT_EQ(P("0.25*x1"), P("1/4*x1"));
}

TEST(Polynomial, ParseErrors) {
  EXPECT_THROW(P("x4"), ParseError);
  EXPECT_THROW(P("x1 +"), ParseError);
  EXPECT_THROW(P("1/0"), ParseError);
  EXPECT_THROW(P("x1 ) "), ParseError);
}

TEST(Polynomial, ArithmeticAndDerivative) {
  Polynomial p = P("x1^2*x2 + 3*x3");
  EXPECT_EQ(p.derivative(0), P("2*x1*x2"));
  EXPECT_EQ(p.derivative(2), P("3"));
  EXPECT_EQ(p.degree(), 3u);
  EXPECT_EQ(p.degree_in(1), 1u);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(P("x1 + 1") * P("x1 - 1"), P("x1^2 - 1"));
}

TEST(Polynomial, ComposeAffineTranslatesLinear) {
  // p = x, tau = (s=2, t=3): image condition is (x - 3)/2 scaled by s^1.
  AffineMap tau(2, {3, 0, 0});
  Polynomial q = P("x1").compose_affine(tau);
  EXPECT_EQ(q, P("x1 - 3"));
}

TEST(Polynomial, ComposeAffineIdentityIsNoop) {
  Polynomial p = P("x1^2 + x2^2 + x3^2 - 1");
  EXPECT_EQ(p.compose_affine(AffineMap::identity(3)), p);
}

TEST(Polynomial, ComposeAffinePreservesSignAtImage) {
  // Oracle: direct evaluation of p at q versus the composed polynomial at tau(q).
  Rng rng(7);
  Polynomial p = P("x1^2 - 2*x2*x3 + x3 - 1/3");
  AffineMap tau(Rational(3, 8), {Rational(1, 2), -1, Rational(5, 7)});
  Polynomial q = p.compose_affine(tau);
  Box box = Box::cube(3, -2, 2);
  for (int i = 0; i < 100; ++i) {
    Point x = rng.in_box(box, 8);
    EXPECT_EQ(sgn(q.eval(tau.apply(x))), sgn(p.eval(x)));
  }
}

TEST(Polynomial, RestrictAndRemap) {
  Polynomial p = P("x1*x2 + x3^2");
  std::vector<std::optional<Rational>> assign{Rational(2), std::nullopt, std::nullopt};
  EXPECT_EQ(p.restrict(assign), P("2*x1 + x2^2", 2));
  std::vector<std::size_t> diag{0, 0, 1};
  EXPECT_EQ(p.remap(2, diag), P("x1^2 + x2^2", 2));
  EXPECT_EQ(P("x1 + x2", 2).shifted(4, 2), P("x3 + x4", 4));
}

TEST(Polynomial, SubstituteAndShift) {
  Polynomial p = P("x1^2 + x2", 2);
  EXPECT_EQ(p.substitute(0, P("x2 + 1", 2)), P("x2^2 + 3*x2 + 1", 2));
  Point c{Rational(1), Rational(-2)};
  Polynomial q = p.shift_to(c);
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    Point h = rng.in_box(Box::cube(2, -1, 1), 6);
    Point x{c[0] + h[0], c[1] + h[1]};
    EXPECT_EQ(q.eval(h), p.eval(x));
  }
}

TEST(Polynomial, PrimitiveKeepsSign) {
  Polynomial p = P("-6/5*x1 + 3/10");
  Polynomial q = p.primitive();
  EXPECT_EQ(q, P("-4*x1 + 1"));
}

TEST(UniPoly, GcdAndSquarefree) {
  UniPoly a({-1, 0, 1});       // x^2 - 1
  UniPoly b({1, 2, 1});        // (x + 1)^2
  UniPoly g = UniPoly::gcd(a, b);
  EXPECT_EQ(g.coeffs(), (std::vector<Rational>{1, 1}));
  UniPoly sq = b.squarefree();
  EXPECT_EQ(sq.degree(), 1);
  EXPECT_EQ(sq.eval(-1), 0);
}

TEST(UniPoly, RangeEnclosesSamples) {
  UniPoly p({Rational(-1, 3), 2, -5, 1});
  Interval x(Rational(-1, 2), Rational(3, 2));
  Interval r = p.range(x);
  for (int k = 0; k <= 64; ++k) {
    Rational t = x.lo + x.width() * Rational(k, 64);
    EXPECT_TRUE(r.contains(p.eval(t)));
  }
}

}  // namespace
}  // namespace saw
