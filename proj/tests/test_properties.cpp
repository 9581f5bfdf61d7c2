// Property laws at reduced sizes and a second seed; the acceptance binary runs
// the full suite.

#include <cctype>
#include <memory>

#include "common.hpp"

using namespace adelic;
using namespace testing_util;

namespace {

constexpr std::uint64_t kSeed = 1729;

class Laws : public ::testing::TestWithParam<std::size_t> {
 protected:
  void SetUp() override {
    auto algs = props::catalog_algebras();
    name = algs[GetParam()].name;
    a = algs[GetParam()].algebra;
    g = std::make_unique<gen::Gen>(kSeed + GetParam());
    pool = std::make_unique<props::Pool>(props::make_pool(a, *g, 6));
  }
  std::string name;
  Algebra a;
  std::unique_ptr<gen::Gen> g;
  std::unique_ptr<props::Pool> pool;
};

std::string algebra_name(const ::testing::TestParamInfo<std::size_t>& info) {
  std::string n = props::catalog_algebras()[info.param].name;
  for (auto& c : n)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return n;
}

}  // namespace

TEST_P(Laws, Factorization) { EXPECT_TRUE(props::factorization(*pool, *g, 30).ok()); }
TEST_P(Laws, Division) { EXPECT_TRUE(props::division(a, *g, 30).ok()); }
TEST_P(Laws, FAInverse) {
  Report r = props::f_a_inverse(a, *g, 30);
  EXPECT_TRUE(r.ok()) << why(r);
}
TEST_P(Laws, Pairing) {
  Report r = props::pairing_laws(a, *g, 30);
  EXPECT_TRUE(r.ok()) << why(r);
}
TEST_P(Laws, DoublePerp) {
  Report r = props::double_perp_law(*pool, *g, 8);
  EXPECT_TRUE(r.ok()) << why(r);
}
TEST_P(Laws, PerpShift) {
  Report r = props::perp_shift_law(*pool, *g, 8);
  EXPECT_TRUE(r.ok()) << why(r);
}
TEST_P(Laws, Fibers) {
  Report r = props::fiber_law(*pool, *g, 8);
  EXPECT_TRUE(r.ok()) << why(r);
}
TEST_P(Laws, Bispectral) {
  Report r = props::bispectral_law(*pool, *g, 4);
  EXPECT_TRUE(r.ok()) << why(r);
}
TEST_P(Laws, BasisIndependence) {
  Report r = props::basis_independence(*pool, *g, 3);
  EXPECT_TRUE(r.ok()) << why(r);
}

INSTANTIATE_TEST_SUITE_P(Catalog, Laws, ::testing::Range<std::size_t>(0, props::catalog_algebras().size()), algebra_name);

// The same seed gives the same report.
TEST(Suite, Deterministic) {
  props::Options o;
  o.seed = 99;
  o.cases = o.heavy_cases = o.bispectral_cases = o.basis_cases = 2;
  o.pool = 3;
  EXPECT_EQ(io::emit_json(props::run_all(o)), io::emit_json(props::run_all(o)));
}
