#include "common.hpp"

using namespace adelic;
using namespace testing_util;

namespace {

using Op = DifferentialOperator;

KernelBasis scalar_kernel(const Algebra& s, std::vector<std::pair<ScalarPolynomial, Rational>> fs) {
  std::vector<std::vector<KernelTerm>> elems;
  for (auto& [p, alpha] : fs) elems.push_back({{alpha, AlgebraPolynomial::from_scalar(s, p)}});
  return KernelBasis(s, std::move(elems));
}

AlgebraPolynomial zpoly(const Algebra& a, const ScalarPolynomial& p) { return AlgebraPolynomial::from_scalar(a, p); }

std::vector<Rational> rs(std::initializer_list<int> v) {
  std::vector<Rational> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(BuildPoint, CatalogExamples) {
  for (const std::string name : {"dual-numbers", "a2", "kronecker"}) {
    KernelBasis v = kernel(name);
    DecoratedAdelicPoint pt = build_point(v);
    Report r = verify_point(pt);
    EXPECT_TRUE(r.ok()) << name << ": " << why(r);
    EXPECT_EQ(pt.order(), v.rank());
    EXPECT_EQ(pt.P, operator_from_kernel(v));
  }
  EXPECT_EQ(build_point(kernel("dual-numbers")).exponents, (std::vector<std::vector<Rational>>{rs({1, 1})}));
  EXPECT_EQ(build_point(kernel("kronecker")).exponents, (std::vector<std::vector<Rational>>{rs({0, 0}), rs({0, 0})}));
}

TEST(BuildPoint, DegenerateRejected) {
  try {
    build_point(kernel("degenerate-m2"));
    FAIL() << "degenerate kernel accepted";
  } catch (const PointRejected& e) {
    EXPECT_EQ(e.reason, "degenerate");
    EXPECT_FALSE(e.report.ok());
  }
}

TEST(VerifyPoint, DetectsTampering) {
  DecoratedAdelicPoint pt = build_point(kernel("dual-numbers"));
  DecoratedAdelicPoint bad = pt;
  bad.certificate = ScalarPolynomial::linear_root(Rational(1)).pow(2);
  Report r = verify_point(bad);
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(catalog::find(r, "certificate divides")->passed);
  bad = pt;
  bad.P = pt.P + Op::multiplication(AlgebraElement::one(pt.algebra));
  EXPECT_FALSE(catalog::find(verify_point(bad), "operator annihilates kernel")->passed);
  bad = pt;
  bad.exponents[0][0] = Rational(2);
  EXPECT_FALSE(catalog::find(verify_point(bad), "exponents match kernel")->passed);
}

TEST(Normalize, Normalizers) {
  ScalarPolynomial z = ScalarPolynomial::monomial(Rational(1), 1), z1 = ScalarPolynomial::linear_root(Rational(1));
  NormalizedAdelicPoint dual = normalize(build_point(kernel("dual-numbers")));
  EXPECT_EQ(dual.g, zpoly(dual.point.algebra, z1.pow(2)));

  NormalizedAdelicPoint a2 = normalize(build_point(kernel("a2")));
  const Algebra& a = a2.point.algebra;
  AlgebraPolynomial want = zpoly(a, z1).right_mul(AlgebraElement::idempotent(a, 0)) + zpoly(a, z).right_mul(AlgebraElement::idempotent(a, 1));
  EXPECT_EQ(a2.g, want);

  NormalizedAdelicPoint kr = normalize(build_point(kernel("kronecker")));
  EXPECT_EQ(kr.g, zpoly(kr.point.algebra, z.pow(2)));
}

TEST(Successor, ScalarExponential) {
  Algebra s = algebra("scalar.json");
  DecoratedAdelicPoint pt = build_point(scalar_kernel(s, {{ScalarPolynomial(1), Rational(1)}}));
  DecoratedAdelicPoint succ = immediate_successor(pt, rs({0}));
  // (d - 1) d
  EXPECT_EQ(succ.P, Op::d(s, 2) - Op::d(s));
  EXPECT_EQ(succ.order(), 2u);
  EXPECT_TRUE(verify_point(succ).ok());
}

TEST(Successor, A2) {
  DecoratedAdelicPoint pt = build_point(kernel("a2"));
  for (const auto& gamma : {rs({0, 0}), rs({1, 1}), rs({2, -1})}) {
    DecoratedAdelicPoint succ = immediate_successor(pt, gamma);
    EXPECT_EQ(succ.P, compose(pt.P, successor_factor(pt.algebra, gamma)));
    EXPECT_EQ(succ.order(), pt.order() + 1);
    EXPECT_TRUE(verify_point(succ).ok()) << why(verify_point(succ));
    EXPECT_EQ(succ.exponents[0].back(), gamma[0]);
    EXPECT_EQ(succ.exponents[1].back(), gamma[1]);
  }
  EXPECT_THROW(immediate_successor(pt, rs({0})), std::invalid_argument);
}

TEST(Successor, KernelContainsOldKernelImage) {
  // P (d - gamma) annihilates W, and (d - gamma) maps W onto V.
  KernelBasis v = kernel("dual-numbers");
  std::vector<Rational> gamma = rs({3});
  KernelBasis w = successor_kernel(v, gamma);
  Op fac = successor_factor(v.algebra(), gamma);
  for (std::size_t j = 0; j < v.rank(); ++j) {
    QuasiFraction r = apply(fac, w.element(j));
    EXPECT_EQ(r.den, ScalarPolynomial(1));
    EXPECT_EQ(r.num, v.element(j)) << j;
  }
  EXPECT_TRUE(apply(fac, w.element(v.rank())).is_zero());
}

TEST(SameFiber, SuccessorsStayInFiber) {
  for (const std::string name : {"dual-numbers", "a2", "kronecker"}) {
    DecoratedAdelicPoint pt = build_point(kernel(name));
    std::vector<Rational> zero(pt.algebra->num_idempotents(), Rational(0));
    EXPECT_TRUE(same_fiber(pt, immediate_successor(pt, zero))) << name;
    EXPECT_TRUE(same_fiber(pt, pt)) << name;
  }
}

TEST(SameFiber, DistinctPoints) {
  Algebra s = algebra("scalar.json");
  // ker d = span{1} and ker (d - 1/x) = span{x} both have g = z.
  DecoratedAdelicPoint one = build_point(scalar_kernel(s, {{ScalarPolynomial(1), Rational(0)}}));
  DecoratedAdelicPoint x = build_point(scalar_kernel(s, {{ScalarPolynomial::monomial(Rational(1), 1), Rational(0)}}));
  EXPECT_FALSE(same_fiber(one, x));
  // Pure exponentials all normalize to the trivial point.
  DecoratedAdelicPoint e2 = build_point(scalar_kernel(s, {{ScalarPolynomial(1), Rational(2)}}));
  EXPECT_TRUE(same_fiber(one, e2));
}

TEST(SuccessorChain, ComposesSteps) {
  DecoratedAdelicPoint pt = build_point(kernel("a2"));
  std::vector<std::vector<Rational>> steps{rs({1, 0}), rs({0, 2})};
  DecoratedAdelicPoint c = successor_chain(pt, steps);
  EXPECT_EQ(c.order(), pt.order() + 2);
  EXPECT_EQ(c.P, compose({pt.P, successor_factor(pt.algebra, steps[0]), successor_factor(pt.algebra, steps[1])}));
  EXPECT_TRUE(same_fiber(pt, c));
  EXPECT_EQ(successor_chain(pt, {}), pt);
}
