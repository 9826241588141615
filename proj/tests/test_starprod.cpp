#include <gtest/gtest.h>

#include "support.hpp"

using namespace conhoch;
using conhoch::testing::term;
using conhoch::testing::x;

namespace {
const FlatModel m321(3, 2, 1);
constexpr int n3 = 3;

MultiVector bi(int n, int i, int j) { return MultiVector::term(n, {i, j}); }
TruncatedStar star1(const SymbolChain& c1) { return TruncatedStar::first_order(c1); }
SymbolChain sym13() { return term(n3, {{1}, {3}}) + term(n3, {{3}, {1}}); }
}  // namespace

TEST(Star, Construction) {
  EXPECT_THROW(TruncatedStar({}), PreconditionViolation);
  EXPECT_THROW(star1(term(n3, {{1}})), ArityMismatch);
  EXPECT_THROW(TruncatedEquivalence({MultiDiffOp(term(n3, {{1}, {2}}))}), ArityMismatch);
}

TEST(Star, Apply) {
  const TruncatedStar zero = star1(SymbolChain(2, n3));
  EXPECT_EQ(star_apply(zero, x(n3, 1), x(n3, 3))[0], x(n3, 1) * x(n3, 3));
  const TruncatedStar s = star1(hkr(bi(n3, 1, 3)));
  auto v = star_apply(s, x(n3, 1), x(n3, 3));
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0], x(n3, 1) * x(n3, 3));
  EXPECT_EQ(v[1], Poly::constant(n3, make_rational(1, 2)));
  v = star_apply(s, x(n3, 3), x(n3, 1));
  EXPECT_EQ(v[1], Poly::constant(n3, make_rational(-1, 2)));
  // unit
  v = star_apply(s, Poly::one(n3), x(n3, 2) * x(n3, 3));
  EXPECT_TRUE(v[1].is_zero());
}

TEST(Star, Associativity) {
  EXPECT_FALSE(check_associativity(star1(hkr(bi(n3, 1, 3))), 1).has_value());
  // ∂1⊗∂1 = -1/2 D(∂1∨∂1) is exact, hence closed
  EXPECT_FALSE(check_associativity(star1(term(n3, {{1}, {1}})), 1).has_value());
  auto v = check_associativity(star1(term(n3, {{1}, {1, 1}})), 1);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->order, 1);
  EXPECT_FALSE(v->defect.is_zero());
  EXPECT_FALSE(check_associativity(star1(hkr(bi(n3, 1, 3)) - sym13()), 1).has_value());
  EXPECT_THROW(check_associativity(star1(hkr(bi(n3, 1, 3))), 2), PreconditionViolation);
}

TEST(Star, AssociativityAtOrderTwo) {
  // truncation of exp(ħ/2 (∂1⊗∂3 - ∂3⊗∂1)): C_2 = 1/8 (∂1∂1⊗∂3∂3 - 2 ∂1∂3⊗∂1∂3 + ∂3∂3⊗∂1∂1)
  const SymbolChain c1 = hkr(bi(n3, 1, 3));
  const SymbolChain c2 = make_rational(1, 8) * (term(n3, {{1, 1}, {3, 3}}) - Rational(2) * term(n3, {{1, 3}, {1, 3}}) +
                                                 term(n3, {{3, 3}, {1, 1}}));
  const TruncatedStar moyal({MultiDiffOp(c1), MultiDiffOp(c2)});
  EXPECT_FALSE(check_associativity(moyal, 2).has_value());
  const TruncatedStar broken({MultiDiffOp(c1), MultiDiffOp(Rational(2) * c2)});
  auto v = check_associativity(broken, 2);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->order, 2);
}

TEST(Star, ConstraintCheck) {
  EXPECT_TRUE(is_constraint_star(m321, star1(hkr(bi(n3, 1, 3)))));
  EXPECT_FALSE(is_constraint_star(m321, star1(hkr(bi(n3, 2, 3)))));
  EXPECT_TRUE(is_constraint_star(m321, star1(-sym13())));
}

TEST(Star, PoissonFromStar) {
  EXPECT_EQ(poisson_from_star(star1(hkr(bi(n3, 1, 3)))), bi(n3, 1, 3));
  EXPECT_TRUE(poisson_from_star(star1(sym13())).is_zero());
  EXPECT_EQ(poisson_from_star(star1(hkr(bi(n3, 1, 3)) + differential_D(term(n3, {{1, 3}})))), bi(n3, 1, 3));
  EXPECT_THROW(poisson_from_star(star1(term(n3, {{1}, {1, 1}}))), NotClosed);
  // the bracket C_1^- evaluates as π(df, dg)
  const TruncatedStar s = star1(hkr(bi(n3, 1, 3)));
  const Poly f = x(n3, 1) * x(n3, 2), g = x(n3, 3) * x(n3, 3);
  const Poly minus = op_apply(s.cochain(1), {f, g}) - op_apply(s.cochain(1), {g, f});
  EXPECT_EQ(minus, f.partial(1) * g.partial(3) - f.partial(3) * g.partial(1));
}

TEST(Star, Coisotropy) {
  EXPECT_TRUE(coisotropy_check(m321, bi(n3, 1, 3)));
  EXPECT_FALSE(coisotropy_check(m321, bi(n3, 2, 3)));
  EXPECT_TRUE(coisotropy_check(m321, MultiVector(2, n3)));
  EXPECT_TRUE(coisotropy_check(m321, MultiVector::term(n3, {2, 3}, x(n3, 3))));
  EXPECT_THROW(coisotropy_check(m321, MultiVector::term(n3, {1})), ArityMismatch);
}

TEST(Equivalence, Steps) {
  const SymbolChain c1 = hkr(bi(n3, 1, 3));
  const TruncatedStar s = star1(c1);
  // non-constraint potential ∂1∨∂3
  const TruncatedStar s2 = star1(c1 + differential_D(term(n3, {{1, 3}})));
  EXPECT_TRUE(plain_equivalence_step(m321, s, s2, 0).has_value());
  EXPECT_FALSE(equivalence_step(m321, s, s2, 0).has_value());
  auto rep = equivalence_report(m321, s, s2, 0);
  EXPECT_TRUE(rep.plain_equivalent);
  EXPECT_FALSE(rep.constraint_equivalent);

  const SymbolChain pot = term(n3, {{1, 1}}, x(n3, 2));
  const TruncatedStar s3 = star1(c1 + differential_D(pot));
  auto st = equivalence_step(m321, s, s3, 0);
  ASSERT_TRUE(st.has_value());
  EXPECT_EQ(st->symbol(), pot);
  EXPECT_TRUE(op_membership(m321, *st, FunctionClassTag::Wobs));

  auto same = equivalence_step(m321, s, s, 0);
  ASSERT_TRUE(same.has_value());
  EXPECT_TRUE(same->symbol().is_zero());

  EXPECT_THROW(equivalence_step(m321, s, star1(c1 + term(n3, {{1}, {1, 1}})), 0), PreconditionViolation);
  EXPECT_THROW(equivalence_step(m321, s, s, 1), PreconditionViolation);
  EXPECT_THROW(equivalence_step(m321, s, star1(hkr(bi(n3, 2, 3))), 0), PreconditionViolation);
}

TEST(Equivalence, SignConventionIsFunctional) {
  // S = id + ħ S_1 turns ⋆ into ⋆' with C'_1 = C_1 + δS_1
  const SymbolChain c1 = hkr(bi(n3, 1, 3));
  const SymbolChain pot = term(n3, {{1, 1}}, x(n3, 2)) + term(n3, {{2}}, x(n3, 3));
  const TruncatedStar s = star1(c1);
  const TruncatedStar s2 = star1(c1 + differential_D(pot));
  auto st = equivalence_step(m321, s, s2, 0);
  ASSERT_TRUE(st.has_value());
  for_each_monomial_tuple(n3, 2, 4, [&](const std::vector<Poly>& fs) {
    ASSERT_EQ(transformed_order_coefficient(s, *st, 0, fs[0], fs[1]), op_apply(s2.cochain(1), fs));
  });
}

TEST(Classify, Examples) {
  auto cls = classify_infinitesimal(m321, MultiDiffOp(-sym13()));
  EXPECT_TRUE(cls.x.is_zero());
  EXPECT_EQ(cls.psi, term(n3, {{1, 3}}));
  cls = classify_infinitesimal(m321, MultiDiffOp(hkr(bi(n3, 1, 2))));
  EXPECT_EQ(cls.x, bi(n3, 1, 2));
  EXPECT_TRUE(cls.psi.is_zero());
  cls = classify_infinitesimal(m321, MultiDiffOp(hkr(bi(n3, 1, 3)) + differential_D(term(n3, {{1, 1, 3}}))));
  EXPECT_EQ(cls.x, bi(n3, 1, 3));
  EXPECT_EQ(cls.psi, term(n3, {{1, 1, 3}}));
  EXPECT_THROW(classify_infinitesimal(m321, MultiDiffOp(hkr(bi(n3, 2, 3)))), NotConstraint);
  EXPECT_THROW(classify_infinitesimal(m321, MultiDiffOp(term(n3, {{1}, {1, 1}}))), NotClosed);
}
