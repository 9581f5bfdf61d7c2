#include <random>

#include "common.hpp"
#include "adelic/random.hpp"

using namespace adelic;
using namespace testing_util;

TEST(Rational, CanonicalForm) {
  Rational r = Rational::parse("-6/4");
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_THROW(Rational::parse("4/-2"), std::invalid_argument);  // serialized denominators are positive
  EXPECT_EQ((Rational(1, 3) + Rational(1, 6)).str(), "1/2");
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
}

TEST(Rational, ArbitraryPrecision) {
  Rational big = Rational::parse("123456789012345678901234567890/7");
  EXPECT_EQ((big * Rational(7)).str(), "123456789012345678901234567890");
}

TEST(Multiply, CatalogIdentities) {
  Algebra dual = algebra("dual_numbers.json");
  AlgebraElement eps = AlgebraElement::basis(dual, 1);
  EXPECT_TRUE((eps * eps).is_zero());

  Algebra m2 = algebra("m2.json");
  EXPECT_EQ(AlgebraElement::basis(m2, 0) * AlgebraElement::basis(m2, 1), AlgebraElement::basis(m2, 1));
  for (const auto& [name, a] : props::catalog_algebras()) {
    gen::Gen g(1);
    for (int i = 0; i < 10; ++i) {
      AlgebraElement r = g.element(a);
      EXPECT_EQ(AlgebraElement::one(a) * r, r) << name;
      EXPECT_EQ(r * AlgebraElement::one(a), r) << name;
    }
  }
}

TEST(Multiply, AlgebraMismatchThrows) {
  Algebra dual = algebra("dual_numbers.json"), m2 = algebra("m2.json");
  EXPECT_THROW(AlgebraElement::one(dual) * AlgebraElement::one(m2), AlgebraMismatch);
}

TEST(RegularMatrix, DualNumbers) {
  Algebra dual = algebra("dual_numbers.json");
  Matrix<Rational> L = left_regular_matrix(el(dual, {1, 1}));
  EXPECT_EQ(L, Matrix<Rational>::from_rows({{1, 0}, {1, 1}}, 2));
  EXPECT_EQ(determinant(L), Rational(1));
  EXPECT_EQ(left_regular_matrix(AlgebraElement::one(dual)), Matrix<Rational>::identity(2));
  EXPECT_EQ(determinant(left_regular_matrix(AlgebraElement::basis(dual, 1))), Rational(0));
}

TEST(Invert, Examples) {
  Algebra dual = algebra("dual_numbers.json");
  EXPECT_EQ(invert(el(dual, {1, 1})), el(dual, {1, -1}));
  EXPECT_FALSE(is_invertible(AlgebraElement::basis(dual, 1)));
  try {
    invert(AlgebraElement::basis(dual, 1));
    FAIL() << "eps inverted";
  } catch (const NonInvertible& e) {
    EXPECT_EQ(e.det, "0");
  }
  Algebra m2 = algebra("m2.json");
  EXPECT_FALSE(is_invertible(AlgebraElement::basis(m2, 0)));
}

// Invertibility via left and right determinants agrees; inverses are two-sided.
TEST(Invert, RegularityEquivalences) {
  for (const auto& [name, a] : props::catalog_algebras()) {
    gen::Gen g(7);
    int invertible = 0;
    for (int i = 0; i < 100; ++i) {
      AlgebraElement r = g.element(a);
      bool l = !determinant(left_regular_matrix(r)).is_zero();
      bool rr = !determinant(right_regular_matrix(r)).is_zero();
      ASSERT_EQ(l, rr) << name << " " << r.str();
      ASSERT_EQ(is_invertible(r), l);
      if (!l) continue;
      ++invertible;
      AlgebraElement s = invert(r);
      ASSERT_EQ(r * s, AlgebraElement::one(a)) << name;
      ASSERT_EQ(s * r, AlgebraElement::one(a)) << name;
    }
    EXPECT_GT(invertible, 0) << name;
  }
}

TEST(Radical, Catalog) {
  Algebra dual = algebra("dual_numbers.json");
  auto J = radical(dual);
  ASSERT_EQ(J.size(), 1u);
  EXPECT_EQ(span_of({J[0].coords()}, 2), span_of({AlgebraElement::basis(dual, 1).coords()}, 2));

  EXPECT_TRUE(radical(algebra("m2.json")).empty());
  EXPECT_TRUE(radical(algebra("scalar.json")).empty());

  Algebra a2 = algebra("a2_path.json");
  auto Ja = radical(a2);
  ASSERT_EQ(Ja.size(), 1u);
  EXPECT_TRUE(same_column_span(span_of({Ja[0].coords()}, 3), span_of({AlgebraElement::basis(a2, 1).coords()}, 3)));

  Algebra kr = algebra("kronecker.json");
  auto Jk = radical(kr);
  ASSERT_EQ(Jk.size(), 2u);
  EXPECT_TRUE(same_column_span(span_of(detail::coords_of(Jk), 4),
                               span_of({AlgebraElement::basis(kr, 1).coords(), AlgebraElement::basis(kr, 2).coords()}, 4)));
}

TEST(Radical, VerifiedOnCatalog) {
  for (const auto& [name, a] : props::catalog_algebras()) {
    Report r = verify_radical(a, radical(a));
    EXPECT_TRUE(r.ok()) << name << ": " << why(r);
  }
}

TEST(Radical, RejectsWrongCandidate) {
  Algebra dual = algebra("dual_numbers.json");
  EXPECT_FALSE(verify_radical(dual, {AlgebraElement::one(dual)}).ok());
  EXPECT_FALSE(verify_radical(dual, {}).ok());
}

TEST(IdempotentFamily, CatalogPasses) {
  for (const auto& [name, a] : props::catalog_algebras()) {
    Report r = verify_idempotent_family(a);
    EXPECT_TRUE(r.ok()) << name << ": " << why(r);
    EXPECT_TRUE(verify_algebra(a).ok()) << name;
  }
}

TEST(IdempotentFamily, IdentityInM2IsNotPrimitive) {
  Json j = io::read_json_file(io::data_dir() / "algebras" / "m2.json");
  j["idempotents"] = Json::array({j["one"]});
  Report r = verify_idempotent_family(io::algebra_from(j));
  ASSERT_FALSE(r.ok());
  const Report* f = r.first_failure();
  EXPECT_EQ(f->name, "e1 primitive");
  EXPECT_EQ(f->witness, "dim e(R/rad R)e = 4");
}

TEST(IdempotentFamily, NonOrthogonalFamily) {
  Json j = io::read_json_file(io::data_dir() / "algebras" / "m2.json");
  j["idempotents"] = Json::array({j["idempotents"][0], j["one"]});
  EXPECT_FALSE(verify_idempotent_family(io::algebra_from(j)).ok());
}

TEST(AlgebraAxioms, NonAssociativeTableFails) {
  // b1 b1 = b2 with b2 acting as identity on one side only.
  Json j = io::read_json_file(io::data_dir() / "algebras" / "dual_numbers.json");
  j["structure_constants"][1][1] = Json::array({"1", "0"});
  j["structure_constants"][1][0] = Json::array({"0", "0"});
  Report r = verify_algebra(io::algebra_from(j));
  EXPECT_FALSE(r.ok());
}
