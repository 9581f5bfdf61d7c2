#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "adelic/random.hpp"

using namespace adelic;
using namespace testing_util;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result cli(const std::string& args) {
  std::string cmd = std::string(ADELIC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class Workdir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("adelic_cli_" + std::to_string(::getpid()) + "_" +
                                       ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string at(const std::string& f) const { return (dir / f).string(); }
  fs::path dir;
};

std::string kernel_arg(const std::string& name) { return catalog::kernel_path(name).string(); }

}  // namespace

TEST(IO, RationalParseErrors) {
  EXPECT_THROW(io::rational_from(Json("1/0"), "test"), ParseError);
  EXPECT_THROW(io::rational_from(Json("x"), "test"), ParseError);
  EXPECT_EQ(io::rational_from(Json("-6/4"), "test"), Rational(-3, 2));
}

TEST(IO, MissingFieldNamesThePath) {
  Json j = io::read_json_file(io::data_dir() / "algebras" / "dual_numbers.json");
  j.erase("one");
  try {
    io::algebra_from(j, "dual");
    FAIL() << "accepted an algebra without a unit";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("one"), std::string::npos) << e.what();
  }
}

TEST(IO, PolynomialRoundTrips) {
  for (const auto& [name, a] : props::catalog_algebras()) {
    gen::Gen g(23);
    for (int i = 0; i < 50; ++i) {
      ScalarPolynomial s = g.scalar_poly(5);
      ASSERT_EQ(io::scalar_poly_from(io::to_json(s), "t"), s);
      AlgebraPolynomial p = g.algebra_poly(a, 4);
      ASSERT_EQ(io::algebra_poly_from(io::to_json(p), a, "t"), p) << name;
    }
  }
}

TEST(IO, AlgebraRoundTrip) {
  for (const auto& [name, a] : props::catalog_algebras()) {
    Algebra b = io::algebra_from(io::to_json(*a));
    EXPECT_EQ(io::to_json(*b), io::to_json(*a)) << name;
  }
}

TEST(IO, KernelAndOperatorRoundTrip) {
  for (const std::string name : {"dual-numbers", "a2", "kronecker"}) {
    KernelBasis v = kernel(name);
    EXPECT_EQ(io::kernel_basis_from(io::kernel_basis_json(v), v.algebra(), "t"), v) << name;
    DifferentialOperator P = operator_from_kernel(v);
    EXPECT_EQ(io::operator_from_json(io::operator_json(P), v.algebra(), "t"), P) << name;
  }
}

TEST(IO, PointFileRoundTripIsBitExact) {
  for (const std::string name : {"dual-numbers", "a2", "kronecker"}) {
    io::KernelFile kf = io::load_kernel(catalog::kernel_path(name));
    io::PointFile pf{kf.algebra, build_point(kf.kernel)};
    std::string text = io::dump(io::to_json(pf));
    io::PointFile back = io::point_file_from(Json::parse(text), catalog::kernel_path(name).parent_path());
    EXPECT_TRUE(back.point == pf.point) << name;
    EXPECT_EQ(io::dump(io::to_json(back)), text) << name;
  }
}

TEST(IO, ReportRoundTrip) {
  Report r("root");
  r.add(Report::pass("a", "fine"));
  Report sub("sub");
  sub.add(Report::fail("b", "witness b"));
  r.add(sub);
  Json j = io::report_json(r);
  Report back = io::report_from(j);
  EXPECT_EQ(io::report_json(back), j);
  EXPECT_FALSE(back.ok());
  EXPECT_EQ(back.first_failure()->witness, "witness b");
}

TEST_F(Workdir, PointLifecycle) {
  std::string p = at("p.json"), s = at("s.json"), m = at("m.json");
  EXPECT_EQ(cli("point build --kernel " + kernel_arg("a2") + " -o " + p).code, 0);
  std::string first = slurp(p);
  // Rewriting a loaded point reproduces the file byte for byte.
  io::PointFile pf = io::load_point(p);
  EXPECT_EQ(io::dump(io::to_json(io::PointFile{io::rebase(pf.algebra, p), pf.point})), first);

  EXPECT_EQ(cli("point normalize " + p).code, 0);
  EXPECT_EQ(cli("verify bispectral " + p).code, 0);
  EXPECT_EQ(cli("point successor " + p + " --gamma 1,0 -o " + s).code, 0);
  EXPECT_EQ(cli("point same-fiber " + p + " " + s).code, 0);
  EXPECT_EQ(cli("point embed " + p + " -o " + m).code, 0);
  EXPECT_EQ(cli("verify rational " + m).code, 0);
  EXPECT_EQ(io::load_point(s).point.order(), 2u);
}

TEST_F(Workdir, ExitCodes) {
  std::string dual = (io::data_dir() / "algebras" / "dual_numbers.json").string();
  EXPECT_EQ(cli("algebra check " + dual).code, 0);
  EXPECT_EQ(cli("algebra radical " + dual).code, 0);
  EXPECT_EQ(cli("perp --kernel " + kernel_arg("dual-numbers")).code, 0);
  // Rejected kernel: a failing report.
  EXPECT_EQ(cli("point build --kernel " + kernel_arg("degenerate-m2") + " -o " + at("d.json")).code, 1);
  EXPECT_FALSE(fs::exists(at("d.json")));
  // Context too small for the kernel.
  EXPECT_EQ(cli("perp --kernel " + kernel_arg("dual-numbers") + " --context 1:2").code, 1);
  // Usage errors.
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("algebra check " + at("missing.json")).code, 2);
  EXPECT_EQ(cli("perp --kernel " + kernel_arg("dual-numbers") + " --context 1").code, 2);
  std::string p = at("p.json");
  ASSERT_EQ(cli("point build --kernel " + kernel_arg("a2") + " -o " + p).code, 0);
  EXPECT_EQ(cli("point successor " + p + " --gamma 0 -o " + at("s.json")).code, 2);
  // Malformed input.
  Json j = io::read_json_file(io::data_dir() / "algebras" / "dual_numbers.json");
  j["one"][0] = "1/0";
  io::write_file(at("bad.json"), io::dump(j));
  EXPECT_EQ(cli("algebra check " + at("bad.json")).code, 2);
}

TEST_F(Workdir, TamperedPointFails) {
  std::string p = at("p.json");
  ASSERT_EQ(cli("point build --kernel " + kernel_arg("dual-numbers") + " -o " + p).code, 0);
  Json j = io::read_json_file(p);
  j["certificate"] = io::to_json(ScalarPolynomial::linear_root(Rational(1)));
  io::write_file(at("t.json"), io::dump(j));
  Result r = cli("--format json verify bispectral " + at("t.json"));
  EXPECT_EQ(r.code, 1);
  Json out = Json::parse(r.out);
  EXPECT_FALSE(out["ok"].get<bool>());
  EXPECT_GT(out["failures"].get<int>(), 0);
}

TEST(Cli, JsonFormatParses) {
  Result r = cli("--format json examples dual-numbers");
  EXPECT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["failures"].get<int>(), 0);
  EXPECT_TRUE(j["report"].contains("children"));
}

TEST(Cli, ExamplesPassAgainstGoldens) {
  Result r = cli("examples all");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
}

TEST(Cli, SelftestSmall) {
  Result r = cli("selftest --seed 7 --cases 3");
  EXPECT_EQ(r.code, 0) << r.out;
}
