#include <gtest/gtest.h>

#include "saw/findset.hpp"
#include "saw/sampling.hpp"

namespace saw {
namespace {

SemiAlgebraicSet gt(const char* text) { return SemiAlgebraicSet::from_basic(BasicSet(3, {}, {parse_polynomial(text, 3)})); }

// Independent re-check: sampled points of V respect the claimed partition.
void expect_partition(const std::vector<SemiAlgebraicSet>& lambdas, const UniformBoxResult& r, Rng& rng, int samples) {
  std::vector<bool> seen(lambdas.size(), false);
  for (std::size_t i : r.inside) seen[i] = true;
  for (std::size_t j : r.outside) {
    ASSERT_FALSE(seen[j]);
    seen[j] = true;
  }
  for (bool s : seen) ASSERT_TRUE(s);
  for (int k = 0; k < samples; ++k) {
    Point p = rng.in_box(r.v, 12);
    for (std::size_t i : r.inside) ASSERT_TRUE(sa_member(lambdas[i], p));
    for (std::size_t j : r.outside) ASSERT_FALSE(sa_member(lambdas[j], p));
  }
}

TEST(FindUniformBox, NoSetsKeepsInitial) {
  Box initial = Box::cube(3, -1, 1);
  UniformBoxResult r = find_uniform_box({}, initial);
  EXPECT_EQ(r.v, initial);
  EXPECT_TRUE(r.inside.empty());
  EXPECT_TRUE(r.outside.empty());
}

TEST(FindUniformBox, HalfSpace) {
  std::vector<SemiAlgebraicSet> ls{gt("x1")};
  UniformBoxResult r = find_uniform_box(ls, Box::cube(3, -1, 1));
  Rng rng(1);
  expect_partition(ls, r, rng, 2000);
  EXPECT_TRUE(Box::cube(3, -1, 1).contains_box(r.v));
  ASSERT_EQ(r.certificates.size(), 1u);
  EXPECT_TRUE(r.certificates[0].status == Containment::FullyIn || r.certificates[0].status == Containment::FullyOut);
}

TEST(FindUniformBox, NestedQuadrants) {
  std::vector<SemiAlgebraicSet> ls{gt("x1"), sa_intersect(gt("x1"), gt("x2"))};
  UniformBoxResult r = find_uniform_box(ls, Box::cube(3, -1, 1));
  Rng rng(2);
  expect_partition(ls, r, rng, 2000);
}

TEST(FindUniformBox, EmptySetIsOutImmediately) {
  std::vector<SemiAlgebraicSet> ls{SemiAlgebraicSet::empty(3)};
  FindOptions tiny;
  tiny.candidate_budget = 0;
  UniformBoxResult r = find_uniform_box(ls, Box::cube(3, -1, 1), tiny);
  EXPECT_EQ(r.outside, std::vector<std::size_t>{0});
  EXPECT_EQ(r.certificates[0].status, Containment::FullyOut);
}

TEST(FindUniformBox, BudgetNamesTheSet) {
  std::vector<SemiAlgebraicSet> ls{gt("x1 + 5"), gt("x1")};
  FindOptions tiny;
  tiny.candidate_budget = 1;
  try {
    find_uniform_box(ls, Box::cube(3, -1, 1), tiny);
    FAIL();
  } catch (const BudgetExhausted& e) {
    EXPECT_NE(std::string(e.what()).find("set 2 of 2"), std::string::npos) << e.what();
  }
}

TEST(FindUniformBox, PrefersOutsideWithinALevel) {
  // The level-1 halves of (-1,1) in x1 are both uniform: x1 < 0 is out, x1 > 0 is in.
  UniformBoxResult r = find_uniform_box({gt("x1")}, Box(Point{-1, -1, -1}, Point{1, Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(r.outside, std::vector<std::size_t>{0});
}

SemiAlgebraicSet random_lambda(Rng& rng) {
  std::vector<BasicSet> ds;
  int count = 1 + static_cast<int>(rng.below(2));
  for (int c = 0; c < count; ++c) {
    Polynomial p = Polynomial::constant(3, Rational(rng.integer(-4, 4), 4));
    for (std::size_t i = 0; i < 3; ++i) {
      p += Polynomial::variable(3, i) * Rational(rng.integer(-2, 2));
      if (rng.below(2)) p += Polynomial::variable(3, i).pow(2) * Rational(rng.integer(-2, 2));
    }
    if (rng.below(5) == 0)
      ds.push_back(BasicSet(3, {p}, {}));
    else
      ds.push_back(BasicSet(3, {}, {p}));
  }
  return SemiAlgebraicSet(3, ds);
}

TEST(FindUniformBoxProperty, RandomFamiliesPartitionCorrectly) {
  Rng rng(77);
  for (int family = 0; family < 20; ++family) {
    std::vector<SemiAlgebraicSet> ls;
    std::size_t k = rng.below(7);
    for (std::size_t i = 0; i < k; ++i) ls.push_back(random_lambda(rng));
    UniformBoxResult r = find_uniform_box(ls, Box::cube(3, -1, 1));
    expect_partition(ls, r, rng, 300);
    UniformBoxResult again = find_uniform_box(ls, Box::cube(3, -1, 1));
    EXPECT_EQ(again.v, r.v);
    EXPECT_EQ(again.inside, r.inside);
  }
}

}  // namespace
}  // namespace saw
