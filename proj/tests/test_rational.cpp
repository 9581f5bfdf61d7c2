#include "common.hpp"
#include "adelic/random.hpp"

using namespace adelic;
using namespace testing_util;

namespace {

Matrix<Rational> oracle_span(const Json& rows, std::size_t n) {
  std::vector<std::vector<Rational>> cols;
  for (const auto& r : rows) {
    std::vector<Rational> c;
    for (const auto& v : r) c.push_back(Rational::parse(v.get<std::string>()));
    cols.push_back(std::move(c));
  }
  return Matrix<Rational>::from_columns(cols, n);
}

AlgebraPolynomial zp(const Algebra& a, const ScalarPolynomial& p) { return AlgebraPolynomial::from_scalar(a, p); }

std::vector<Rational> rs(std::initializer_list<int> v) {
  std::vector<Rational> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(Pairing, Examples) {
  Algebra s = algebra("scalar.json");
  AlgebraElement one = AlgebraElement::one(s);
  // <z^2, x exp(x)> = 2
  EXPECT_EQ(pairing(AlgebraPolynomial::monomial(one, 2), qe(one, 1, 1)), one.scaled(Rational(2)));
  // <z^3, exp(2x)> = 8
  EXPECT_EQ(pairing(AlgebraPolynomial::monomial(one, 3), qe(one, 0, 2)), one.scaled(Rational(8)));
  // <z - 1, exp(x)> = 0
  EXPECT_TRUE(pairing(zp(s, sp({-1, 1})), qe(one, 0, 1)).is_zero());
  Algebra dual = algebra("dual_numbers.json");
  AlgebraElement eps = AlgebraElement::basis(dual, 1);
  EXPECT_TRUE(pairing(AlgebraPolynomial(eps), qe(eps, 0, 0)).is_zero());
}

// <p, f> = (p(d) f)(0)
TEST(Pairing, AgreesWithOperatorForm) {
  for (const auto& [name, a] : props::catalog_algebras()) {
    gen::Gen g(17);
    for (int i = 0; i < 100; ++i) {
      AlgebraPolynomial p = g.algebra_poly(a, 4);
      QuasiExp f = QuasiExp(g.algebra_poly(a, 3), Rational(g.integer(-2, 2))) + QuasiExp(g.algebra_poly(a, 2), Rational(g.integer(-2, 2)));
      ASSERT_EQ(pairing(p, f), pairing_alt(p, f)) << name;
    }
  }
}

TEST(PairingContext, Construction) {
  PairingContext c({{Rational(1), 3u}, {Rational(0), 2u}});
  EXPECT_EQ(c.str(), "0:2,1:3");
  EXPECT_EQ(c.degree(), 5u);
  EXPECT_EQ(c.h(), ScalarPolynomial::monomial(Rational(1), 2) * ScalarPolynomial::linear_root(Rational(1)).pow(3));
  EXPECT_THROW(PairingContext({{Rational(0), 0u}}), std::invalid_argument);
  EXPECT_THROW(PairingContext({{Rational(1), 1u}, {Rational(1), 2u}}), std::invalid_argument);
  EXPECT_EQ(PairingContext::for_kernel(kernel("dual-numbers")).str(), "1:3");
}

TEST(Perp, MatchesOracle) {
  KernelBasis dual = kernel("dual-numbers");
  Matrix<Rational> got = perp_truncated(dual.algebra(), dual.elements(), 6);
  Matrix<Rational> want = oracle_span(oracle()["dual-numbers"]["perp_T6"], 12);
  EXPECT_EQ(got.cols(), 8u);
  EXPECT_TRUE(same_column_span(got, want));

  KernelBasis kr = kernel("kronecker");
  Matrix<Rational> gk = perp_truncated(kr.algebra(), kr.elements(), 4);
  EXPECT_TRUE(same_column_span(gk, oracle_span(oracle()["kronecker"]["perp_T4"], 16)));
}

TEST(Perp, InsufficientContext) {
  KernelBasis dual = kernel("dual-numbers");
  EXPECT_THROW(perp_of_kernel(dual, PairingContext({{Rational(1), 2u}})), InsufficientContext);
  EXPECT_THROW(perp_of_kernel(dual, PairingContext({{Rational(0), 5u}})), InsufficientContext);
  // A larger context is fine.
  EXPECT_TRUE(double_perp(dual, PairingContext({{Rational(0), 1u}, {Rational(1), 4u}})).ok());
}

TEST(Perp, DoublePerpOnCatalog) {
  for (const std::string name : {"dual-numbers", "a2", "kronecker"}) {
    KernelBasis v = kernel(name);
    Report r = double_perp(v, PairingContext::for_kernel(v));
    EXPECT_TRUE(r.ok()) << name << ": " << why(r);
  }
}

// Conditions on p at the exponents: evaluations and derivatives per coordinate.
TEST(Perp, A2Conditions) {
  KernelBasis v = kernel("a2");
  // p11(1) + p11'(1) = 0, p21(1) + p21'(1) = 0, p22''(0) = p22(0)
  std::vector<catalog::Functional> conds = {
      {{0, Rational(1), 1, Rational(1)}, {0, Rational(1), 0, Rational(1)}},
      {{1, Rational(1), 1, Rational(1)}, {1, Rational(1), 0, Rational(1)}},
      {{2, Rational(0), 2, Rational(1)}, {2, Rational(0), 0, Rational(-1)}}};
  EXPECT_TRUE(catalog::conditions_match(v, conds, 7, "a2").passed);
  conds.pop_back();
  EXPECT_FALSE(catalog::conditions_match(v, conds, 7, "a2").passed);
}

TEST(CandidateGenerators, NegativeControl) {
  KernelBasis v = kernel("dual-numbers");
  const Algebra& a = v.algebra();
  ScalarPolynomial u = sp({-1, 1});
  // (z-1)^3 and (z-1)^4 are in V^perp; 1 is not.
  Report good = verify_candidate_generators(a, v.elements(), {zp(a, u.pow(3)), zp(a, u.pow(4))});
  EXPECT_TRUE(catalog::find(good, "generators lie in V^perp")->passed);
  EXPECT_FALSE(catalog::find(good, "generators span V^perp below the truncation")->passed);
  Report bad = verify_candidate_generators(a, v.elements(), {zp(a, ScalarPolynomial(1)), zp(a, u.pow(3))});
  const Report* in = catalog::find(bad, "generators lie in V^perp");
  EXPECT_FALSE(in->passed);
  EXPECT_NE(in->witness.find("generator 1"), std::string::npos);
}

TEST(RationalPoint, TrivialPointPasses) {
  for (const auto& [name, a] : props::catalog_algebras()) {
    RationalPoint M{a, ScalarPolynomial(1), {AlgebraPolynomial(AlgebraElement::one(a))}, ScalarPolynomial(1), ScalarPolynomial(1)};
    Report r = is_rational_point(M);
    EXPECT_TRUE(r.ok()) << name << ": " << why(r);
  }
}

// Q eps + z R[z] sits between z R[z] and R[z] but R[z]/M = R/(eps) is not free.
TEST(RationalPoint, NonFreeQuotientFails) {
  Algebra dual = algebra("dual_numbers.json");
  RationalPoint M{dual, ScalarPolynomial(1), {AlgebraPolynomial(AlgebraElement::basis(dual, 1))}, sp({0, 1}), ScalarPolynomial(1)};
  Report r = is_rational_point(M);
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(catalog::find(r, "direct summand of g^{-1}R[z]/hR[z]")->passed);
}

TEST(RationalPoint, PoleBeyondGFails) {
  Algebra s = algebra("scalar.json");
  RationalPoint M{s, sp({0, 0, 1}), {AlgebraPolynomial(AlgebraElement::one(s))}, ScalarPolynomial(1), sp({0, 1})};
  EXPECT_FALSE(catalog::find(is_rational_point(M), "M inside g^{-1} R[z]")->passed);
}

TEST(DirectSummand, FreeModuleWitness) {
  Algebra dual = algebra("dual_numbers.json");
  auto pi = direct_summand_witness_free(Matrix<Rational>::identity(2), dual, 1);
  ASSERT_TRUE(pi.has_value());
  EXPECT_TRUE(verify_projection(*pi, Matrix<Rational>::identity(2), free_left_action(dual, 1)));
  // eps R inside R has no complement.
  Matrix<Rational> epsR = Matrix<Rational>::from_columns({AlgebraElement::basis(dual, 1).coords()}, 2);
  EXPECT_FALSE(direct_summand_witness_free(epsR, dual, 1).has_value());
  // The first copy of R inside R^2 splits off.
  Matrix<Rational> first = Matrix<Rational>::from_columns({rs({1, 0, 0, 0}), rs({0, 1, 0, 0})}, 4);
  EXPECT_TRUE(direct_summand_witness_free(first, dual, 2).has_value());
}

TEST(EmbedIota, ThetaAndMembership) {
  ScalarPolynomial z = ScalarPolynomial::monomial(Rational(1), 1), z1 = ScalarPolynomial::linear_root(Rational(1));
  std::vector<std::pair<std::string, ScalarPolynomial>> want = {{"dual-numbers", z1.pow(2)}, {"a2", z * z1}, {"kronecker", z.pow(2)}};
  for (const auto& [name, theta] : want) {
    NormalizedAdelicPoint n = normalize(build_point(kernel(name)));
    RationalPoint M = embed_iota(n);
    EXPECT_EQ(M.theta, theta) << name;
    EXPECT_EQ(M.g, theta) << name;
    Report r = is_rational_point(M);
    EXPECT_TRUE(r.ok()) << name << ": " << why(r);
    // Minimizing h does not change the point.
    EXPECT_TRUE(M == embed_iota(n, std::nullopt, false)) << name;
  }
}

TEST(EmbedIota, ContextIndependent) {
  NormalizedAdelicPoint n = normalize(build_point(kernel("dual-numbers")));
  RationalPoint M = embed_iota(n);
  RationalPoint big = embed_iota(n, PairingContext({{Rational(-1), 2u}, {Rational(1), 5u}}));
  EXPECT_TRUE(M == big);
  EXPECT_EQ(big.h, M.h);
}

TEST(PerpShift, Examples) {
  Algebra s = algebra("scalar.json");
  KernelBasis ex(s, {{{Rational(1), AlgebraPolynomial(AlgebraElement::one(s))}}});
  EXPECT_TRUE(verify_perp_shift(ex, successor_kernel(ex, rs({0})), rs({0})).ok());

  KernelBasis dual = kernel("dual-numbers");
  EXPECT_TRUE(verify_perp_shift(dual, successor_kernel(dual, rs({0})), rs({0})).ok());

  KernelBasis a2 = kernel("a2");
  Report r = verify_perp_shift(a2, successor_kernel(a2, rs({1, 1})), rs({1, 1}));
  EXPECT_TRUE(r.ok()) << why(r);
  // Shifting by the wrong gamma is caught.
  EXPECT_FALSE(verify_perp_shift(a2, successor_kernel(a2, rs({1, 1})), rs({0, 1})).ok());
}
