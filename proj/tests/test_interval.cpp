#include <gtest/gtest.h>

#include "saw/interval.hpp"
#include "saw/sampling.hpp"

namespace saw {
namespace {

Polynomial P(const char* text, std::size_t n = 3) { return parse_polynomial(text, n); }
const char* kSphere = "x1^2 + x2^2 + x3^2 - 1";

SemiAlgebraicSet gt(const char* text, std::size_t n = 3) {
  return SemiAlgebraicSet::from_basic(BasicSet(n, {}, {P(text, n)}));
}

TEST(PolyRange, ConstantIsExact) {
  Interval r = poly_range(P("5"), Box::cube(3, -7, 2));
  EXPECT_EQ(r.lo, 5);
  EXPECT_EQ(r.hi, 5);
}

TEST(PolyRange, LinearCoversUnitInterval) {
  Interval r = poly_range(P("x1", 1), Box::cube(1, 0, 1));
  EXPECT_LE(r.lo, 0);
  EXPECT_GE(r.hi, 1);
}

TEST(PolyRange, SphereOnSmallCube) {
  // Term by term: each square lies in [0, 1/16], so the sum lies in [-1, -13/16].
  Interval r = poly_range(P(kSphere), Box::cube(3, Rational(-1, 4), Rational(1, 4)));
  EXPECT_GE(r.lo, -1);
  EXPECT_LE(r.hi, Rational(-13, 16));
}

TEST(PolyRange, DimensionMismatchThrows) {
  EXPECT_THROW(poly_range(P("x1 + x2", 2), Box::cube(3, 0, 1)), DimensionMismatch);
}

TEST(PolyRange, TightEnclosesTranslatedSphere) {
  // Expanded translated sphere: the natural extension is loose, the tight one is not.
  AffineMap tau(Rational(1, 64), {Rational(1, 3), Rational(1, 5), Rational(1, 7)});
  Polynomial p = sphere_of(tau, 3).disjuncts()[0].equations[0];
  Box far = Box::cube(3, Rational(1, 2), Rational(5, 8));
  Interval tight = poly_range_tight(p, far);
  EXPECT_GT(tight.lo, 0);
  Rng rng(1);
  for (int i = 0; i < 200; ++i) EXPECT_TRUE(tight.contains(p.eval(rng.in_box(far, 10))));
}

TEST(CertifySign, Examples) {
  Polynomial s = P(kSphere);
  EXPECT_EQ(certify_sign(s, Box::cube(3, Rational(-1, 4), Rational(1, 4)), Relation::Positive), SignVerdict::CertFalse);
  EXPECT_EQ(certify_sign(s, Box::cube(3, 2, 3), Relation::Positive), SignVerdict::CertTrue);
  for (std::size_t budget : {1u, 8u, 4096u}) {
    SignVerdict v = certify_sign(P("x1", 1), Box::cube(1, -1, 1), Relation::Positive, budget);
    EXPECT_TRUE(v == SignVerdict::Unknown || v == SignVerdict::Mixed) << to_string(v);
  }
  EXPECT_EQ(certify_sign(P("x1^2 + 1", 1), Box::cube(1, -1, 1), Relation::NonZero), SignVerdict::CertTrue);
  EXPECT_EQ(certify_sign(P("0", 1), Box::cube(1, -1, 1), Relation::Zero), SignVerdict::CertTrue);
}

TEST(CertifySet, Examples) {
  Box strip(Point{Rational(1, 4), -1, -1}, Point{Rational(3, 4), 1, 1});
  EXPECT_EQ(certify_set_status(gt("x1"), strip).status, Containment::FullyIn);
  SemiAlgebraicSet sphere = sphere_of(AffineMap::identity(3), 3);
  EXPECT_EQ(certify_set_status(sphere, Box::cube(3, Rational(-1, 4), Rational(1, 4))).status, Containment::FullyOut);
  BoxStatus mixed = certify_set_status(gt("x1"), Box::cube(3, -1, 1));
  ASSERT_EQ(mixed.status, Containment::Mixed);
  ASSERT_TRUE(mixed.member && mixed.non_member);
  EXPECT_TRUE(sa_member(gt("x1"), *mixed.member));
  EXPECT_FALSE(sa_member(gt("x1"), *mixed.non_member));
}

TEST(CertifySet, EmptySetIsFullyOut) {
  BoxStatus s = certify_set_status(SemiAlgebraicSet::empty(3), Box::cube(3, -1, 1));
  EXPECT_EQ(s.status, Containment::FullyOut);
}

TEST(CertifySet, EquationDisjunctNeverFullyIn) {
  // A plane through a box is lower-dimensional there.
  SemiAlgebraicSet plane = SemiAlgebraicSet::from_basic(BasicSet(3, {P("x1")}, {}));
  Containment c = certify_set_status(plane, Box::cube(3, -1, 1)).status;
  EXPECT_NE(c, Containment::FullyIn);
  SemiAlgebraicSet trivial = SemiAlgebraicSet::from_basic(BasicSet(3, {P("x1 - x1")}, {}));
  EXPECT_EQ(certify_set_status(trivial, Box::cube(3, -1, 1)).status, Containment::FullyIn);
}

TEST(CertifyRegular, Examples) {
  Regularity lin = certify_regular(P("x1 + x2 + x3"), Box::cube(3, -5, 5));
  ASSERT_TRUE(lin.regular);
  EXPECT_EQ(lin.profile, std::vector<Monotonicity>(3, Monotonicity::Increasing));
  Regularity sq = certify_regular(P("x1^2"), Box(Point{1, 0, 0}, Point{2, 1, 1}));
  ASSERT_TRUE(sq.regular);
  EXPECT_EQ(sq.profile,
            (std::vector<Monotonicity>{Monotonicity::Increasing, Monotonicity::Constant, Monotonicity::Constant}));
  EXPECT_FALSE(certify_regular(P("x1^2"), Box::cube(3, -1, 1)).regular);
  Regularity dec = certify_regular(P("-x2"), Box::cube(3, 0, 1));
  ASSERT_TRUE(dec.regular);
  EXPECT_EQ(dec.profile[1], Monotonicity::Decreasing);
}

Polynomial random_poly(Rng& rng, std::size_t n) {
  Polynomial p = Polynomial::constant(n, rng.integer(-3, 3));
  for (std::size_t i = 0; i < n; ++i) {
    p += Polynomial::variable(n, i) * Rational(rng.integer(-3, 3));
    for (std::size_t j = i; j < n; ++j)
      if (rng.below(2)) p += Polynomial::variable(n, i) * Polynomial::variable(n, j) * Rational(rng.integer(-2, 2));
  }
  return p;
}

Box random_box(Rng& rng, std::size_t n) {
  Point lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational a = rng.uniform(-3, 3, 4);
    lo[i] = a;
    hi[i] = a + rng.uniform(Rational(1, 8), 2, 4);
  }
  return Box(lo, hi);
}

bool holds(Relation rel, const Rational& v) {
  switch (rel) {
    case Relation::Positive: return sgn(v) > 0;
    case Relation::Negative: return sgn(v) < 0;
    case Relation::NonZero: return sgn(v) != 0;
    case Relation::Zero: return sgn(v) == 0;
  }
  return false;
}

TEST(IntervalProperty, CertifySignIsSound) {
  Rng rng(99);
  int certified = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Polynomial p = random_poly(rng, 3);
    Box b = random_box(rng, 3);
    for (Relation rel : {Relation::Positive, Relation::Negative, Relation::NonZero}) {
      SignVerdict v = certify_sign(p, b, rel, 256);
      if (v != SignVerdict::CertTrue && v != SignVerdict::CertFalse) continue;
      ++certified;
      bool expect = v == SignVerdict::CertTrue;
      for (int s = 0; s < 300; ++s) ASSERT_EQ(holds(rel, p.eval(rng.in_box(b, 12))), expect) << p.to_string();
    }
  }
  EXPECT_GT(certified, 20);
}

TEST(IntervalProperty, EnclosureMonotoneUnderSubdivision) {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial p = random_poly(rng, 3);
    Box parent = random_box(rng, 3);
    Interval whole = poly_range(p, parent);
    std::vector<Box> level{parent};
    for (int depth = 0; depth < 3; ++depth) {
      std::vector<Box> next;
      for (const Box& b : level) {
        auto [l, r] = b.bisect();
        next.push_back(l);
        next.push_back(r);
      }
      for (const Box& b : next) {
        Interval part = poly_range(p, b);
        EXPECT_GE(part.lo, whole.lo);
        EXPECT_LE(part.hi, whole.hi);
      }
      level = std::move(next);
    }
  }
}

TEST(IntervalProperty, SetStatusAgreesWithMembership) {
  Rng rng(31);
  int decided = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<BasicSet> ds{BasicSet(3, {}, {random_poly(rng, 3)}), BasicSet(3, {}, {random_poly(rng, 3)})};
    SemiAlgebraicSet x(3, ds);
    Box b = random_box(rng, 3);
    BoxStatus st = certify_set_status(x, b, 512);
    if (st.status == Containment::FullyIn || st.status == Containment::FullyOut) ++decided;
    for (int s = 0; s < 200; ++s) {
      Point p = rng.in_box(b, 12);
      if (st.status == Containment::FullyIn) ASSERT_TRUE(sa_member(x, p));
      if (st.status == Containment::FullyOut) ASSERT_FALSE(sa_member(x, p));
    }
    if (st.status == Containment::Mixed) {
      EXPECT_TRUE(sa_member(x, *st.member));
      EXPECT_FALSE(sa_member(x, *st.non_member));
    }
  }
  EXPECT_GT(decided, 5);
}

}  // namespace
}  // namespace saw
