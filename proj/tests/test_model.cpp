#include <gtest/gtest.h>

#include "support.hpp"

using namespace conhoch;
using conhoch::testing::Gen;
using conhoch::testing::x;

TEST(FlatModel, ValidatesDimensions) {
  EXPECT_NO_THROW(FlatModel(3, 2, 1));
  EXPECT_NO_THROW(FlatModel(1, 0, 0));
  EXPECT_THROW(FlatModel(0, 0, 0), InvalidModel);
  EXPECT_THROW(FlatModel(2, 3, 1), InvalidModel);
  EXPECT_THROW(FlatModel(3, 1, 2), InvalidModel);
  EXPECT_THROW(FlatModel(3, 2, -1), InvalidModel);
}

TEST(FlatModel, Blocks) {
  FlatModel m(4, 3, 1);
  EXPECT_EQ(m.block(1), Block::D);
  EXPECT_EQ(m.block(2), Block::DPerp);
  EXPECT_EQ(m.block(3), Block::DPerp);
  EXPECT_EQ(m.block(4), Block::TCPerp);
  EXPECT_THROW(m.block(0), IndexOutOfRange);
  EXPECT_THROW(m.block(5), IndexOutOfRange);
  EXPECT_EQ(m.reduced_dimension(), 2);
}

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(make_rational(2, 4), make_rational(1, 2));
  EXPECT_EQ(make_rational(1, -2).get_den(), 2);
  EXPECT_EQ(make_rational(1, -2).get_num(), -1);
  EXPECT_THROW(make_rational(1, 0), PreconditionViolation);
  EXPECT_EQ(falling_factorial(5, 2), 20);
  EXPECT_EQ(falling_factorial(2, 3), 0);
  EXPECT_EQ(binomial(5, 2), 10);
}

TEST(Poly, Arithmetic) {
  const int n = 3;
  EXPECT_TRUE((x(n, 1) - x(n, 1)).is_zero());
  EXPECT_EQ((x(n, 1) * x(n, 1) * x(n, 3)).partial(1), Rational(2) * x(n, 1) * x(n, 3));
  EXPECT_EQ((x(n, 1) + x(n, 3)) * (x(n, 1) - x(n, 3)), x(n, 1) * x(n, 1) - x(n, 3) * x(n, 3));
  EXPECT_THROW(x(n, 1).partial(4), IndexOutOfRange);
  EXPECT_THROW(x(n, 1).partial(0), IndexOutOfRange);
  EXPECT_THROW(Poly::variable(n, 0), IndexOutOfRange);
  EXPECT_THROW(x(3, 1) + x(4, 1), ModelMismatch);
  EXPECT_EQ(Poly(n).degree(), -1);
}

TEST(Poly, CanonicalPrinting) {
  const int n = 3;
  Poly p = x(n, 1) * x(n, 1) - make_rational(1, 2) * x(n, 2) * x(n, 3) + Poly::constant(n, 3);
  EXPECT_EQ(p.to_string(), "x1^2 - 1/2*x2*x3 + 3");
  EXPECT_EQ(Poly(n).to_string(), "0");
  EXPECT_EQ((-x(n, 2)).to_string(), "-x2");
}

TEST(Poly, MonomialEnumerationOrder) {
  auto ms = monomials_of_degree(3, 2);
  ASSERT_EQ(ms.size(), 6u);
  EXPECT_EQ(ms.front(), (Exponent{2, 0, 0}));
  EXPECT_EQ(ms.back(), (Exponent{0, 0, 2}));
  EXPECT_EQ(monomials_of_degree(0, 0).size(), 1u);
  EXPECT_TRUE(monomials_of_degree(0, 1).empty());
}

TEST(Functions, RestrictToC) {
  FlatModel m(3, 2, 1);
  const int n = 3;
  EXPECT_TRUE(restrict_to_c(m, x(n, 1) * x(n, 3)).is_zero());
  EXPECT_EQ(restrict_to_c(m, x(n, 2) * x(n, 2) + x(n, 3)), x(n, 2) * x(n, 2));
  EXPECT_EQ(restrict_to_c(m, Poly::constant(n, 5)), Poly::constant(n, 5));
  EXPECT_THROW(restrict_to_c(m, x(4, 1)), ModelMismatch);
}

TEST(Functions, Classify) {
  FlatModel m(3, 2, 1);
  const int n = 3;
  EXPECT_EQ(classify_function(m, x(n, 1) * x(n, 3)), FunctionClassTag::Null);
  EXPECT_EQ(classify_function(m, x(n, 1)), FunctionClassTag::Total);
  EXPECT_EQ(classify_function(m, x(n, 2)), FunctionClassTag::Wobs);
  EXPECT_EQ(classify_function(m, Poly(n)), FunctionClassTag::Null);
}

TEST(Functions, Reduce) {
  FlatModel m(3, 2, 1);
  const int n = 3;
  EXPECT_EQ(reduce_function(m, x(n, 2) + x(n, 1) * x(n, 3)), Poly::variable(1, 1));
  EXPECT_TRUE(reduce_function(m, x(n, 1) * x(n, 3)).is_zero());
  EXPECT_THROW(reduce_function(m, x(n, 1)), NotWobs);
  FlatModel m2(4, 3, 1);
  EXPECT_EQ(reduce_function(m2, x(4, 2) * x(4, 3)), Poly::variable(2, 1) * Poly::variable(2, 2));
}

TEST(Functions, SliceBasis) {
  FlatModel m(3, 2, 1);
  auto null1 = function_slice_basis(m, FunctionClassTag::Null, 1);
  ASSERT_EQ(null1.size(), 1u);
  EXPECT_EQ(null1[0], x(3, 3));
  auto wobs1 = function_slice_basis(m, FunctionClassTag::Wobs, 1);
  ASSERT_EQ(wobs1.size(), 2u);
  EXPECT_EQ(wobs1[0], x(3, 2));
  EXPECT_EQ(wobs1[1], x(3, 3));
  EXPECT_EQ(function_slice_basis(m, FunctionClassTag::Total, 2).size(), 6u);
  EXPECT_TRUE(function_slice_basis(m, FunctionClassTag::Total, -1).empty());
}

TEST(FunctionProperties, MonomialCriterionMatchesDefinition) {
  for (const auto& m : conhoch::testing::all_models(5))
    for (int d = 0; d <= 6; ++d)
      for (const auto& e : monomials_of_degree(m.n_total(), d))
        ASSERT_EQ(monomial_function_class(m, e), classify_function(m, Poly::monomial(e)))
            << m.to_string() << " degree " << d;
}

TEST(FunctionProperties, NullInsideWobsAndClosure) {
  Gen g(11);
  for (int trial = 0; trial < 200; ++trial) {
    const FlatModel& m = conhoch::testing::grid_models()[trial % 4];
    const int n = m.n_total();
    auto wobs = function_slice_basis(m, FunctionClassTag::Wobs, g.uniform(0, 2));
    auto wobs2 = function_slice_basis(m, FunctionClassTag::Wobs, g.uniform(0, 2));
    auto nulls = function_slice_basis(m, FunctionClassTag::Null, g.uniform(1, 2));
    Poly f = g.combination(wobs, Poly(n));
    Poly h = g.combination(wobs2, Poly(n));
    Poly z = g.combination(nulls, Poly(n));
    Poly any = g.poly(n, 4);
    ASSERT_TRUE(function_in(m, z, FunctionClassTag::Wobs));
    ASSERT_TRUE(function_in(m, f + h, FunctionClassTag::Wobs));
    ASSERT_TRUE(function_in(m, f * h, FunctionClassTag::Wobs));
    ASSERT_TRUE(function_in(m, z * any, FunctionClassTag::Null));
    ASSERT_EQ(reduce_function(m, f * h), reduce_function(m, f) * reduce_function(m, h));
    ASSERT_EQ(reduce_function(m, f + z), reduce_function(m, f));
  }
}
