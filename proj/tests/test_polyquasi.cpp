#include "common.hpp"
#include "adelic/random.hpp"

using namespace adelic;
using namespace testing_util;

namespace {

AlgebraPolynomial dual_poly(const Algebra& a, const ScalarPolynomial& one, const ScalarPolynomial& eps) {
  return AlgebraPolynomial::from_coordinates(a, {one, eps});
}

}  // namespace

TEST(Regularity, DualNumbersWitness) {
  Algebra dual = algebra("dual_numbers.json");
  auto w = poly_regularity_witness(dual_poly(dual, sp({0, 1}), sp({1})));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->q, dual_poly(dual, sp({0, 1}), sp({-1})));
  EXPECT_EQ(w->s, sp({0, 0, 1}));
}

TEST(Regularity, OneAndZeroDivisor) {
  Algebra dual = algebra("dual_numbers.json");
  auto w = poly_regularity_witness(AlgebraPolynomial(AlgebraElement::one(dual)));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->q, AlgebraPolynomial(AlgebraElement::one(dual)));
  EXPECT_EQ(w->s, ScalarPolynomial(1));
  EXPECT_FALSE(poly_regularity_witness(dual_poly(dual, {}, sp({0, 1}))).has_value());
}

// p q = q p = s for every regular p.
TEST(Regularity, RandomWitnessesAreTwoSided) {
  for (const auto& [name, a] : props::catalog_algebras()) {
    gen::Gen g(11);
    int regular = 0;
    for (int i = 0; i < 60; ++i) {
      AlgebraPolynomial p = g.algebra_poly(a, 3);
      auto w = poly_regularity_witness(p);
      if (!w) continue;
      ++regular;
      AlgebraPolynomial s = AlgebraPolynomial::from_scalar(a, w->s);
      ASSERT_EQ(p * w->q, s) << name << " p = " << p.str();
      ASSERT_EQ(w->q * p, s) << name << " p = " << p.str();
    }
    EXPECT_GT(regular, 0) << name;
  }
}

TEST(QPDerivative, Examples) {
  Algebra dual = algebra("dual_numbers.json");
  AlgebraElement one = AlgebraElement::one(dual), eps = AlgebraElement::basis(dual, 1);
  EXPECT_EQ(qp_derivative(qe(one, 1, 0)), qe(one, 0, 0));
  EXPECT_EQ(qp_derivative(qe(one, 0, 1)), qe(one, 0, 1));
  QuasiExp f = qe(eps, 0, 1) + qe(one, 1, 1);
  QuasiExp want = qe(one + eps, 0, 1) + qe(one, 1, 1);
  EXPECT_EQ(qp_derivative(f), want);
}

TEST(Wronski, SmallCases) {
  Algebra s = algebra("scalar.json");
  AlgebraElement one = AlgebraElement::one(s);
  auto w1 = wronski({qe(one, 0, 0)});
  ASSERT_EQ(w1.size(), 1u);
  EXPECT_EQ(w1[0][0], qe(one, 0, 0));
  auto w2 = wronski({qe(one, 0, 0), qe(one, 1, 0)});
  EXPECT_EQ(w2[0][1], qe(one, 1, 0));
  EXPECT_TRUE(w2[1][0].is_zero());
  EXPECT_EQ(w2[1][1], qe(one, 0, 0));
}

TEST(Wronski, SecondRowIsDerivatives) {
  KernelBasis v = kernel("dual-numbers");
  auto w = wronski(v.elements());
  for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(w[1][j], qp_derivative(v.element(j)));
}

TEST(Nondegenerate, DualNumbersFlattenedDet) {
  KernelBasis v = kernel("dual-numbers");
  Nondegeneracy nd = is_nondegenerate(v.elements(), v.algebra());
  EXPECT_TRUE(nd.nondegenerate);
  const Json& o = oracle()["dual-numbers"]["flattened_det"];
  EXPECT_EQ(nd.det, QuasiScalar(poly(o["poly"]), Rational::parse(o["exp"].get<std::string>())));
}

// Polynomial part 1 - 2 eps x - (1 + eps) x^2 as printed; the exponential is
// exp(2x), where the printed text has exp(x).
TEST(Nondegenerate, DualNumbersCommutativeDet) {
  KernelBasis v = kernel("dual-numbers");
  const Algebra& a = v.algebra();
  QuasiExp det = commutative_wronskian_det(v.elements(), a);
  QuasiExp printed_poly(dual_poly(a, sp({1, 0, -1}), sp({0, -2, -1})), Rational(2));
  EXPECT_EQ(det, printed_poly);
  const Json& o = oracle()["dual-numbers"]["commutative_det"];
  QuasiExp from_oracle(dual_poly(a, poly(o["one"]["poly"]), poly(o["eps"]["poly"])), Rational::parse(o["one"]["exp"].get<std::string>()));
  EXPECT_EQ(det, from_oracle);
  EXPECT_EQ(det.exponents(), std::vector<Rational>{Rational(2)});
}

TEST(Nondegenerate, M2KernelIsDegenerate) {
  KernelBasis v = kernel("degenerate-m2");
  Nondegeneracy nd = is_nondegenerate(v.elements(), v.algebra());
  EXPECT_FALSE(nd.nondegenerate);
  EXPECT_TRUE(nd.det.is_zero());
}

TEST(Nondegenerate, OneIsNondegenerateEverywhere) {
  for (const auto& [name, a] : props::catalog_algebras())
    EXPECT_TRUE(is_nondegenerate({qe(AlgebraElement::one(a), 0, 0)}, a).nondegenerate) << name;
}

TEST(Nondegenerate, OracleDeterminants) {
  for (const std::string name : {"a2", "kronecker"}) {
    KernelBasis v = kernel(name);
    const Json& o = oracle()[name]["flattened_det"];
    EXPECT_EQ(is_nondegenerate(v.elements(), v.algebra()).det,
              QuasiScalar(poly(o["poly"]), Rational::parse(o["exp"].get<std::string>())))
        << name;
  }
}

TEST(KernelClassification, A2Exponents) {
  TheoremACheck th = check_theorem_A(kernel("a2"));
  EXPECT_TRUE(th.ok()) << why(th.report);
  EXPECT_EQ(th.structured->exponent_matrix(), (std::vector<std::vector<Rational>>{{Rational(1)}, {Rational(0)}}));
}

TEST(KernelClassification, DualNumbersExponents) {
  TheoremACheck th = check_theorem_A(kernel("dual-numbers"));
  EXPECT_TRUE(th.ok()) << why(th.report);
  EXPECT_EQ(th.structured->exponent_matrix(), (std::vector<std::vector<Rational>>{{Rational(1), Rational(1)}}));
}

TEST(KernelClassification, MixedExponentsFailGrading) {
  Algebra dual = algebra("dual_numbers.json");
  AlgebraElement one = AlgebraElement::one(dual);
  TheoremACheck th = check_theorem_A(dual, {qe(one, 0, 0) + qe(one, 0, 1)});
  EXPECT_FALSE(th.ok());
  EXPECT_FALSE(th.graded);
  EXPECT_EQ(th.failed_condition(), "exponent grading");
}

TEST(KernelClassification, NonFreeFamily) {
  Algebra dual = algebra("dual_numbers.json");
  AlgebraElement eps = AlgebraElement::basis(dual, 1);
  TheoremACheck th = check_theorem_A(dual, {qe(eps, 0, 0)});
  EXPECT_FALSE(th.free);
}

// Accepted kernels are right direct summands of the ambient QP_{alpha,N}(R).
TEST(KernelClassification, AcceptedKernelsAreSummands) {
  for (const std::string name : {"dual-numbers", "a2", "kronecker"}) {
    KernelBasis v = kernel(name);
    PairingContext ctx = PairingContext::for_kernel(v);
    EXPECT_TRUE(right_summand_witness(v.algebra(), v.elements(), ambient_basis(v.algebra(), ctx)).has_value()) << name;
  }
}

// Summand but degenerate: the two notions differ.
TEST(KernelClassification, M2SummandButDegenerate) {
  KernelBasis v = kernel("degenerate-m2");
  const Algebra& a = v.algebra();
  std::vector<QuasiExp> ker3;
  for (std::size_t k = 0; k < 3; ++k) ker3.push_back(qe(AlgebraElement::one(a), k, 0));
  EXPECT_TRUE(right_summand_witness(a, v.elements(), ker3).has_value());
  EXPECT_FALSE(is_nondegenerate(v.elements(), a).nondegenerate);
}

TEST(Fitting, Examples) {
  auto zero = fitting_split(Matrix<Rational>(3, 3));
  EXPECT_EQ(zero.U0.cols(), 3u);
  EXPECT_EQ(zero.U1.cols(), 0u);
  auto inv = fitting_split(Matrix<Rational>::from_rows({{2, 1}, {0, 3}}, 2));
  EXPECT_EQ(inv.U0.cols(), 0u);
  Algebra dual = algebra("dual_numbers.json");
  auto nil = fitting_split(left_regular_matrix(AlgebraElement::basis(dual, 1)));
  EXPECT_EQ(nil.U0.cols(), 2u);
  auto mixed = fitting_split(Matrix<Rational>::from_rows({{0, 1, 0}, {0, 0, 0}, {0, 0, 5}}, 3));
  EXPECT_EQ(mixed.U0.cols(), 2u);
  EXPECT_EQ(mixed.U1.cols(), 1u);
}

TEST(FA, Examples) {
  Algebra s = algebra("scalar.json");
  AlgebraElement one = AlgebraElement::one(s);
  // A = 0: antiderivative vanishing at 0.
  EXPECT_EQ(f_a_apply(Rational(1), {Rational(1)}, AlgebraPolynomial::monomial(one, 1)),
            AlgebraPolynomial::monomial(one.scaled(Rational(1, 2)), 2));
  // A = 3: constant solution 1/3.
  EXPECT_EQ(f_a_apply(Rational(3), {Rational(0)}, AlgebraPolynomial(one)), AlgebraPolynomial(one.scaled(Rational(1, 3))));
  // A = eps (nilpotent), u = 1: x - eps x^2 / 2.
  Algebra dual = algebra("dual_numbers.json");
  auto v = f_a_apply_matrix(left_regular_matrix(AlgebraElement::basis(dual, 1)), {Coords{1, 0}});
  AlgebraPolynomial got(dual, v);
  EXPECT_EQ(got, AlgebraPolynomial::from_coordinates(dual, {sp({0, 1}), sp({0, 0, Rational(-1, 2)})}));
}

// (d + A) F_A(u) = u for deg u <= 8 and random (alpha, gamma).
TEST(FA, InverseIdentityHighDegree) {
  for (const auto& [name, a] : props::catalog_algebras()) {
    gen::Gen g(29);
    for (int i = 0; i < 100; ++i) {
      Rational alpha(g.integer(-2, 2));
      std::vector<Rational> gamma;
      for (std::size_t k = 0; k < a->num_idempotents(); ++k) gamma.push_back(Rational(g.integer(-2, 2)));
      AlgebraPolynomial u = g.algebra_poly(a, 8);
      AlgebraPolynomial v = f_a_apply(alpha, gamma, u);
      AlgebraElement A = AlgebraElement::zero(a);
      for (std::size_t k = 0; k < gamma.size(); ++k) A += AlgebraElement::idempotent(a, k).scaled(alpha - gamma[k]);
      ASSERT_EQ(v.derivative() + v.left_mul(A), u) << name << " alpha " << alpha << " u = " << u.str();
    }
  }
}
