// adelic: command-line front end.  Every verb produces a report; the exit
// code is 0 iff the report has no failure nodes, 2 on usage or parse errors.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adelic/catalog.hpp"
#include "adelic/io.hpp"
#include "adelic/properties.hpp"

namespace fs = std::filesystem;
using namespace adelic;

namespace {

struct Usage : Error {
  using Error::Error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::vector<Rational> parse_gamma(const std::string& s, std::size_t m) {
  std::vector<Rational> g;
  for (const auto& t : split(s, ',')) g.push_back(Rational::parse(t));
  if (g.size() != m)
    throw Usage("--gamma needs " + std::to_string(m) + " values, one per idempotent; got " + std::to_string(g.size()));
  return g;
}

// "a:N,b:M"
PairingContext parse_context(const std::string& s) {
  std::vector<std::pair<Rational, unsigned>> parts;
  for (const auto& t : split(s, ',')) {
    auto colon = t.find(':');
    if (colon == std::string::npos) throw Usage("--context entry '" + t + "' is not of the form alpha:N");
    int n = 0;
    try {
      n = std::stoi(t.substr(colon + 1));
    } catch (const std::exception&) {
      throw Usage("--context entry '" + t + "': bad multiplicity");
    }
    if (n <= 0) throw Usage("--context entry '" + t + "': multiplicity must be positive");
    parts.emplace_back(Rational::parse(t.substr(0, colon)), static_cast<unsigned>(n));
  }
  try {
    return PairingContext(std::move(parts));
  } catch (const std::invalid_argument& e) {
    throw Usage(std::string("--context: ") + e.what());
  }
}

std::string join(const std::vector<AlgebraPolynomial>& ps, char var) {
  std::string s;
  for (const auto& p : ps) s += (s.empty() ? "" : "; ") + p.str(var);
  return s.empty() ? "(none)" : s;
}

std::string exponents_text(const std::vector<std::vector<Rational>>& m) { return exponent_matrix_str(m); }

Report point_summary(const DecoratedAdelicPoint& pt) {
  Report r("point");
  r.add(Report::pass("operator", pt.P.str()));
  r.add(Report::pass("exponents", exponents_text(pt.exponents)));
  r.add(Report::pass("certificate", "q(t) = " + pt.certificate.str('t')));
  return r;
}

void write_point(const io::AlgebraRef& alg, const DecoratedAdelicPoint& pt, const fs::path& out) {
  io::write_file(out, io::dump(io::to_json(io::PointFile{io::rebase(alg, out), pt})));
}

// Loads a point file and re-verifies it; a file that fails verification is reported, not used.
std::optional<io::PointFile> load_verified(const fs::path& p, Report& rep) {
  io::PointFile pf = io::load_point(p);
  Report v = verify_point(pf.point);
  bool ok = v.ok();
  v.name = "loaded " + p.filename().string();
  rep.add(std::move(v));
  if (!ok) return std::nullopt;
  return pf;
}

Report cmd_algebra_check(const fs::path& file) {
  Algebra a = io::load_algebra(file);
  Report r("algebra " + file.filename().string());
  r.add(Report::pass("dimension", std::to_string(a->dim())));
  r.add(verify_algebra(a));
  r.add(verify_idempotent_family(a));
  return r;
}

Report cmd_algebra_radical(const fs::path& file) {
  Algebra a = io::load_algebra(file);
  auto J = radical(a);
  std::string basis;
  for (const auto& j : J) basis += (basis.empty() ? "" : ", ") + j.str();
  Report r("radical of " + file.filename().string());
  r.add(Report::pass("dimension", std::to_string(J.size())));
  r.add(Report::pass("basis", basis.empty() ? "(zero)" : basis));
  r.add(verify_radical(a, J));
  return r;
}

Report cmd_point_build(const std::optional<fs::path>& algebra, const fs::path& kernel, const fs::path& out) {
  Json j = io::read_json_file(kernel);
  io::KernelFile kf = [&] {
    if (!algebra) return io::kernel_file_from(j, kernel.parent_path(), kernel.filename().string());
    io::AlgebraRef a = io::algebra_ref_file(*algebra);
    std::string where = kernel.filename().string();
    return io::KernelFile{a, io::kernel_basis_from(io::field(j, "basis", where), a.algebra, where + ".basis")};
  }();
  Report r("point build");
  try {
    DecoratedAdelicPoint pt = build_point(kf.kernel);
    write_point(kf.algebra, pt, out);
    r.add(point_summary(pt));
    r.add(Report::pass("written", out.string()));
  } catch (const PointRejected& e) {
    r.add(e.report);
    r.add(Report::fail("kernel accepted", "rejected: " + e.reason));
  }
  return r;
}

Report cmd_point_normalize(const fs::path& file) {
  Report r("point normalize");
  auto pf = load_verified(file, r);
  if (!pf) return r;
  NormalizedAdelicPoint n = normalize(pf->point);
  r.add(Report::pass("normalizer g(z)", n.g.str('z')));
  return r;
}

Report cmd_point_successor(const fs::path& file, const std::string& gamma, const fs::path& out) {
  Report r("point successor");
  auto pf = load_verified(file, r);
  if (!pf) return r;
  std::vector<Rational> g = parse_gamma(gamma, pf->point.algebra->num_idempotents());
  DecoratedAdelicPoint s = immediate_successor(pf->point, g);
  write_point(pf->algebra, s, out);
  r.add(point_summary(s));
  r.add(Report::check("same fiber as the source", same_fiber(pf->point, s), "successor of order " + std::to_string(s.order())));
  r.add(Report::pass("written", out.string()));
  return r;
}

Report cmd_point_same_fiber(const fs::path& f1, const fs::path& f2) {
  Report r("point same-fiber");
  auto p1 = load_verified(f1, r);
  auto p2 = load_verified(f2, r);
  if (!p1 || !p2) return r;
  require_same(p1->point.algebra, p2->point.algebra);
  bool same = same_fiber(p1->point, p2->point);
  r.add(Report::check("same normalized point", same,
                      same ? "P1 g2(d) = P2 g1(d)" : "P1 g2(d) != P2 g1(d) for P1 = " + p1->point.P.str() + ", P2 = " + p2->point.P.str()));
  return r;
}

Report cmd_point_embed(const fs::path& file, const fs::path& out) {
  Report r("point embed");
  auto pf = load_verified(file, r);
  if (!pf) return r;
  RationalPoint M = embed_iota(normalize(pf->point));
  r.add(Report::pass("theta", M.theta.str('z')));
  r.add(Report::pass("generators", join(M.generators, 'z')));
  r.add(Report::pass("h", M.h.str('z')));
  r.add(is_rational_point(M));
  io::write_file(out, io::dump(io::to_json(io::RationalPointFile{io::rebase(pf->algebra, out), M})));
  r.add(Report::pass("written", out.string()));
  return r;
}

Report cmd_perp(const fs::path& kernel, const std::optional<std::string>& context) {
  io::KernelFile kf = io::load_kernel(kernel);
  PairingContext ctx = context ? parse_context(*context) : PairingContext::for_kernel(kf.kernel);
  PerpModule pm = perp_of_kernel(kf.kernel, ctx);
  Report r("perp");
  r.add(Report::pass("context", ctx.str()));
  r.add(Report::pass("h(z)", pm.h.str('z')));
  r.add(Report::pass("dimension mod h", std::to_string(pm.dim())));
  r.add(Report::pass("basis mod h", join(pm.elements(), 'z')));
  r.add(double_perp(kf.kernel, ctx));
  return r;
}

Report cmd_verify_bispectral(const fs::path& file) {
  Report r("verify bispectral");
  auto pf = load_verified(file, r);
  if (!pf) return r;
  const DecoratedAdelicPoint& pt = pf->point;
  BispectralData bd = bispectral_data(pt.P, DifferentialOperator::scalar_constant(pt.algebra, pt.certificate));
  r.add(Report::pass("g(x)", bd.g.str('x')));
  r.add(Report::pass("h(d)", bd.h.str('d')));
  r.add(Report::pass("P'", bd.Pp.str()));
  r.add(Report::pass("Q'", bd.Qp.str()));
  r.add(verify_bispectral(bd.Pp, bd.Qp, bd.g, bd.h, bd.L));
  return r;
}

Report cmd_verify_rational(const fs::path& file) {
  io::RationalPointFile rf = io::load_rational_point(file);
  Report r("verify rational");
  r.add(is_rational_point(rf.point));
  return r;
}

Report cmd_examples(const std::string& name, bool bless, bool printed) {
  if (name != "all") {
    const auto& ns = catalog::names();
    if (std::find(ns.begin(), ns.end(), name) == ns.end()) {
      std::string known;
      for (const auto& n : ns) known += (known.empty() ? "" : ", ") + n;
      throw Usage("unknown example '" + name + "'; known: " + known + ", all");
    }
    return catalog::run_example(name, bless, printed);
  }
  Report r("examples");
  for (const auto& n : catalog::names()) r.add(catalog::run_example(n, bless, printed));
  return r;
}

Report cmd_selftest(std::uint64_t seed, std::optional<std::size_t> cases) {
  props::Options o;
  o.seed = seed;
  if (cases) o.cases = o.heavy_cases = o.bispectral_cases = o.basis_cases = *cases;
  return props::run_all(o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact constructions and checks for adelic Grassmannians of finite-dimensional algebras"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));

  std::function<Report()> run;
  auto fmt = [&](CLI::App* sub) {
    sub->fallthrough();
    return sub;
  };

  // algebra
  auto* alg = fmt(app.add_subcommand("algebra", "Inspect an algebra file"));
  alg->require_subcommand(1);
  std::string alg_file;
  auto* alg_check = fmt(alg->add_subcommand("check", "Verify axioms and the idempotent family"));
  alg_check->add_option("file", alg_file)->required()->check(CLI::ExistingFile);
  alg_check->callback([&] { run = [&] { return cmd_algebra_check(alg_file); }; });
  auto* alg_rad = fmt(alg->add_subcommand("radical", "Compute and verify the Jacobson radical"));
  alg_rad->add_option("file", alg_file)->required()->check(CLI::ExistingFile);
  alg_rad->callback([&] { run = [&] { return cmd_algebra_radical(alg_file); }; });

  // point
  auto* pt = fmt(app.add_subcommand("point", "Decorated adelic points"));
  pt->require_subcommand(1);
  std::string pt_file, pt_file2, out_file, kernel_file, gamma;
  std::optional<std::string> algebra_file;
  auto* build = fmt(pt->add_subcommand("build", "Build a point from a kernel basis"));
  build->add_option("--algebra", algebra_file, "Algebra file; overrides the kernel's reference")->check(CLI::ExistingFile);
  build->add_option("--kernel", kernel_file)->required()->check(CLI::ExistingFile);
  build->add_option("-o,--output", out_file)->required();
  build->callback([&] {
    run = [&] {
      std::optional<fs::path> a;
      if (algebra_file) a = *algebra_file;
      return cmd_point_build(a, kernel_file, out_file);
    };
  });
  auto* norm = fmt(pt->add_subcommand("normalize", "Print the normalizer g(z)"));
  norm->add_option("file", pt_file)->required()->check(CLI::ExistingFile);
  norm->callback([&] { run = [&] { return cmd_point_normalize(pt_file); }; });
  auto* succ = fmt(pt->add_subcommand("successor", "Immediate successor P (d - sum gamma_i e_i)"));
  succ->add_option("file", pt_file)->required()->check(CLI::ExistingFile);
  succ->add_option("--gamma", gamma, "Comma-separated rationals, one per idempotent")->required();
  succ->add_option("-o,--output", out_file)->required();
  succ->callback([&] { run = [&] { return cmd_point_successor(pt_file, gamma, out_file); }; });
  auto* fiber = fmt(pt->add_subcommand("same-fiber", "Do two points have the same normalization"));
  fiber->add_option("first", pt_file)->required()->check(CLI::ExistingFile);
  fiber->add_option("second", pt_file2)->required()->check(CLI::ExistingFile);
  fiber->callback([&] { run = [&] { return cmd_point_same_fiber(pt_file, pt_file2); }; });
  auto* embed = fmt(pt->add_subcommand("embed", "Image in the rational Grassmannian"));
  embed->add_option("file", pt_file)->required()->check(CLI::ExistingFile);
  embed->add_option("-o,--output", out_file)->required();
  embed->callback([&] { run = [&] { return cmd_point_embed(pt_file, out_file); }; });

  // perp
  std::optional<std::string> context;
  auto* perp = fmt(app.add_subcommand("perp", "Orthogonal complement of a kernel"));
  perp->add_option("--kernel", kernel_file)->required()->check(CLI::ExistingFile);
  perp->add_option("--context", context, "alpha:N,... (default: from the kernel)");
  perp->callback([&] { run = [&] { return cmd_perp(kernel_file, context); }; });

  // verify
  auto* ver = fmt(app.add_subcommand("verify", "Verification routines"));
  ver->require_subcommand(1);
  auto* bis = fmt(ver->add_subcommand("bispectral", "Bispectral identities for a point file"));
  bis->add_option("file", pt_file)->required()->check(CLI::ExistingFile);
  bis->callback([&] { run = [&] { return cmd_verify_bispectral(pt_file); }; });
  auto* rat = fmt(ver->add_subcommand("rational", "Check a rational Grassmannian point file"));
  rat->add_option("file", pt_file)->required()->check(CLI::ExistingFile);
  rat->callback([&] { run = [&] { return cmd_verify_rational(pt_file); }; });

  // examples
  std::string example;
  bool bless = false, printed = false;
  auto* ex = fmt(app.add_subcommand("examples", "Run catalog examples against their golden files"));
  ex->add_option("name", example, "dual-numbers, a2, kronecker, degenerate-m2 or all")->required();
  ex->add_flag("--bless", bless, "Rewrite the golden files from the computed values");
  ex->add_flag("--printed", printed, "Also compare against the published values");
  ex->callback([&] { run = [&] { return cmd_examples(example, bless, printed); }; });

  // selftest
  std::uint64_t seed = props::Options{}.seed;
  std::optional<std::size_t> cases;
  auto* self = fmt(app.add_subcommand("selftest", "Seeded property suite over the catalog algebras"));
  self->add_option("--seed", seed);
  self->add_option("--cases", cases, "Cases per property and algebra (default: the acceptance sizes)");
  self->callback([&] { run = [&] { return cmd_selftest(seed, cases); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Report r = run();
    std::cout << (format == "json" ? io::emit_json(r) : emit_text(r));
    return r.ok() ? 0 : 1;
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    Report r("adelic");
    r.add(Report::fail("completed", e.what()));
    std::cout << (format == "json" ? io::emit_json(r) : emit_text(r));
    return 1;
  }
}
