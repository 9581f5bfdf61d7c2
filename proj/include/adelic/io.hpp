#pragma once

// JSON encodings of algebras, polynomials, kernels, operators, points and reports.  Rationals
// are strings "n" or "p/q"; polynomials are coefficient lists, lowest first.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "adelic/diffop.hpp"
#include "adelic/grassmannian.hpp"
#include "adelic/point.hpp"

namespace adelic {

using Json = nlohmann::ordered_json;

namespace io {

inline std::filesystem::path data_dir() {
#ifdef ADELIC_DATA_DIR
  return ADELIC_DATA_DIR;
#else
  return "data";
#endif
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ParseError(p.string() + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(p.string() + ": " + e.what());
  }
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw ParseError(p.string() + ": cannot write");
  out << text;
}

// Field access with path-qualified diagnostics.
inline const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}
inline const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  return j;
}

inline Json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw ParseError(where + ": expected a rational string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(where + ": malformed rational '" + j.get<std::string>() + "'");
  }
}

inline Json to_json(const Coords& c) {
  Json a = Json::array();
  for (const auto& x : c) a.push_back(to_json(x));
  return a;
}

inline Coords coords_from(const Json& j, std::size_t d, const std::string& where) {
  array(j, where);
  if (j.size() != d) throw ParseError(where + ": expected " + std::to_string(d) + " coordinates, got " + std::to_string(j.size()));
  Coords c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(rational_from(j[i], where + "[" + std::to_string(i) + "]"));
  return c;
}

// Algebras

inline Json to_json(const FiniteDimAlgebra& a) {
  Json j;
  j["dim"] = a.dim();
  j["basis_names"] = a.basis_names();
  Json sc = Json::array();
  for (const auto& ci : a.structure_constants()) {
    Json row = Json::array();
    for (const auto& cij : ci) row.push_back(to_json(cij));
    sc.push_back(row);
  }
  j["structure_constants"] = sc;
  j["one"] = to_json(a.one());
  Json id = Json::array();
  for (const auto& e : a.idempotents()) id.push_back(to_json(e));
  j["idempotents"] = id;
  if (a.split()) j["split"] = *a.split();
  return j;
}

inline Algebra algebra_from(const Json& j, const std::string& where = "algebra") {
  const Json& dj = field(j, "dim", where);
  if (!dj.is_number_unsigned() || dj.get<std::size_t>() == 0) throw ParseError(where + ".dim: expected a positive integer");
  const std::size_t d = dj.get<std::size_t>();
  std::vector<std::string> names;
  if (j.contains("basis_names")) {
    const Json& nj = array(j["basis_names"], where + ".basis_names");
    for (const auto& n : nj) {
      if (!n.is_string()) throw ParseError(where + ".basis_names: expected strings");
      names.push_back(n.get<std::string>());
    }
    if (names.size() != d) throw ParseError(where + ".basis_names: expected " + std::to_string(d) + " names");
  } else {
    for (std::size_t i = 0; i < d; ++i) names.push_back("b" + std::to_string(i + 1));
  }
  const Json& sc = array(field(j, "structure_constants", where), where + ".structure_constants");
  if (sc.size() != d) throw ParseError(where + ".structure_constants: expected " + std::to_string(d) + " slices");
  FiniteDimAlgebra::Constants c(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::string wi = where + ".structure_constants[" + std::to_string(i) + "]";
    array(sc[i], wi);
    if (sc[i].size() != d) throw ParseError(wi + ": expected " + std::to_string(d) + " rows");
    for (std::size_t k = 0; k < d; ++k) c[i].push_back(coords_from(sc[i][k], d, wi + "[" + std::to_string(k) + "]"));
  }
  Coords one = coords_from(field(j, "one", where), d, where + ".one");
  std::vector<Coords> idem;
  const Json& ij = array(field(j, "idempotents", where), where + ".idempotents");
  for (std::size_t i = 0; i < ij.size(); ++i) idem.push_back(coords_from(ij[i], d, where + ".idempotents[" + std::to_string(i) + "]"));
  std::optional<bool> split;
  if (j.contains("split")) {
    if (!j["split"].is_boolean()) throw ParseError(where + ".split: expected a boolean");
    split = j["split"].get<bool>();
  }
  try {
    return FiniteDimAlgebra::create(std::move(names), std::move(c), std::move(one), std::move(idem), split);
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline Algebra load_algebra(const std::filesystem::path& p) { return algebra_from(read_json_file(p), p.filename().string()); }

// An algebra as referenced from another file: a path or an inline object.
struct AlgebraRef {
  Algebra algebra;
  std::optional<std::string> path;  // as written in the referencing file
  std::optional<std::filesystem::path> resolved;
};

inline std::filesystem::path resolve(const std::string& ref, const std::filesystem::path& base) {
  std::filesystem::path p(ref);
  if (p.is_absolute()) return p;
  for (const auto& dir : {base, data_dir() / "algebras", data_dir()}) {
    if (dir.empty()) continue;
    if (std::filesystem::exists(dir / p)) return dir / p;
  }
  if (std::filesystem::exists(p)) return p;
  throw ParseError("algebra reference '" + ref + "' not found");
}

inline AlgebraRef algebra_ref_from(const Json& j, const std::filesystem::path& base, const std::string& where) {
  if (j.is_string()) {
    std::filesystem::path p = resolve(j.get<std::string>(), base);
    return {load_algebra(p), j.get<std::string>(), std::filesystem::absolute(p)};
  }
  return {algebra_from(j, where), std::nullopt, std::nullopt};
}

// The same reference as seen from a file written to out: a catalog name stays
// as is, other paths become relative to the output directory.
inline AlgebraRef rebase(const AlgebraRef& r, const std::filesystem::path& out) {
  if (!r.resolved) return r;
  std::filesystem::path name = r.resolved->filename();
  std::filesystem::path cat = data_dir() / "algebras" / name;
  if (std::filesystem::exists(cat) && std::filesystem::equivalent(cat, *r.resolved)) return {r.algebra, name.string(), r.resolved};
  std::filesystem::path dir = std::filesystem::absolute(out).parent_path();
  return {r.algebra, std::filesystem::relative(*r.resolved, dir).string(), r.resolved};
}

inline AlgebraRef algebra_ref_file(const std::filesystem::path& p) {
  return {load_algebra(p), p.string(), std::filesystem::absolute(p)};
}
inline Json to_json(const AlgebraRef& r) { return r.path ? Json(*r.path) : to_json(*r.algebra); }

// Polynomials

inline Json to_json(const ScalarPolynomial& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}
inline ScalarPolynomial scalar_poly_from(const Json& j, const std::string& where) {
  array(j, where);
  std::vector<Rational> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(rational_from(j[i], where + "[" + std::to_string(i) + "]"));
  return ScalarPolynomial(std::move(c));
}

inline Json to_json(const AlgebraPolynomial& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}
inline AlgebraPolynomial algebra_poly_from(const Json& j, const Algebra& a, const std::string& where) {
  array(j, where);
  std::vector<Coords> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(coords_from(j[i], a->dim(), where + "[" + std::to_string(i) + "]"));
  return AlgebraPolynomial(a, std::move(c));
}

// Kernels.  Idempotent indices are 1-based in files.

inline Json kernel_basis_json(const KernelBasis& v) {
  Json basis = Json::array();
  for (const auto& el : v.elements_structured()) {
    Json ej = Json::array();
    for (std::size_t i = 0; i < el.size(); ++i) {
      Json t;
      t["idempotent"] = i + 1;
      t["exponent"] = to_json(el[i].exponent);
      t["poly"] = to_json(el[i].poly);
      ej.push_back(t);
    }
    basis.push_back(ej);
  }
  return basis;
}

inline KernelBasis kernel_basis_from(const Json& j, const Algebra& a, const std::string& where) {
  array(j, where);
  const std::size_t m = a->num_idempotents();
  std::vector<std::vector<KernelTerm>> elems;
  for (std::size_t jj = 0; jj < j.size(); ++jj) {
    std::string wj = where + "[" + std::to_string(jj) + "]";
    array(j[jj], wj);
    std::vector<std::optional<KernelTerm>> el(m);
    for (std::size_t t = 0; t < j[jj].size(); ++t) {
      std::string wt = wj + "[" + std::to_string(t) + "]";
      const Json& tj = j[jj][t];
      const Json& ij = field(tj, "idempotent", wt);
      if (!ij.is_number_unsigned() || ij.get<std::size_t>() < 1 || ij.get<std::size_t>() > m)
        throw ParseError(wt + ".idempotent: expected an index in 1.." + std::to_string(m));
      std::size_t i = ij.get<std::size_t>() - 1;
      if (el[i]) throw ParseError(wt + ".idempotent: index " + std::to_string(i + 1) + " repeated");
      el[i] = KernelTerm{rational_from(field(tj, "exponent", wt), wt + ".exponent"),
                         algebra_poly_from(field(tj, "poly", wt), a, wt + ".poly")};
    }
    std::vector<KernelTerm> full;
    for (std::size_t i = 0; i < m; ++i) full.push_back(el[i] ? *el[i] : KernelTerm{Rational(0), AlgebraPolynomial(a)});
    elems.push_back(std::move(full));
  }
  return KernelBasis(a, std::move(elems));
}

struct KernelFile {
  AlgebraRef algebra;
  KernelBasis kernel;
};

inline Json to_json(const KernelFile& k) {
  Json j;
  j["algebra"] = to_json(k.algebra);
  j["basis"] = kernel_basis_json(k.kernel);
  return j;
}
inline KernelFile kernel_file_from(const Json& j, const std::filesystem::path& base, const std::string& where = "kernel") {
  AlgebraRef a = algebra_ref_from(field(j, "algebra", where), base, where + ".algebra");
  return {a, kernel_basis_from(field(j, "basis", where), a.algebra, where + ".basis")};
}
inline KernelFile load_kernel(const std::filesystem::path& p) {
  return kernel_file_from(read_json_file(p), p.parent_path(), p.filename().string());
}

// Operators

inline Json operator_coeffs_json(const DifferentialOperator& P) {
  Json cs = Json::array();
  for (const auto& c : P.coeffs()) {
    Json cj;
    cj["num"] = to_json(c.num());
    cj["den"] = to_json(c.den());
    cs.push_back(cj);
  }
  return cs;
}

inline Json operator_json(const DifferentialOperator& P) {
  Json j;
  j["order"] = P.order();
  j["coeffs"] = operator_coeffs_json(P);
  return j;
}

inline DifferentialOperator operator_from_json(const Json& j, const Algebra& a, const std::string& where) {
  const Json& cs = array(field(j, "coeffs", where), where + ".coeffs");
  std::vector<AlgebraRationalFunction> c;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    std::string wk = where + ".coeffs[" + std::to_string(k) + "]";
    ScalarPolynomial den = scalar_poly_from(field(cs[k], "den", wk), wk + ".den");
    if (den.is_zero()) throw ParseError(wk + ".den: zero denominator");
    c.emplace_back(algebra_poly_from(field(cs[k], "num", wk), a, wk + ".num"), den);
  }
  DifferentialOperator P(a, std::move(c));
  if (j.contains("order") && (!j["order"].is_number_integer() || j["order"].get<int>() != P.order()))
    throw ParseError(where + ".order: does not match the coefficient list");
  return P;
}

struct OperatorFile {
  AlgebraRef algebra;
  DifferentialOperator op;
};

inline Json to_json(const OperatorFile& o) {
  Json j;
  j["algebra"] = to_json(o.algebra);
  Json body = operator_json(o.op);
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}
inline OperatorFile operator_file_from(const Json& j, const std::filesystem::path& base, const std::string& where = "operator") {
  AlgebraRef a = algebra_ref_from(field(j, "algebra", where), base, where + ".algebra");
  return {a, operator_from_json(j, a.algebra, where)};
}

// Points

inline Json exponents_json(const std::vector<std::vector<Rational>>& m) {
  Json a = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    a.push_back(r);
  }
  return a;
}

inline std::vector<std::vector<Rational>> exponents_from(const Json& j, const std::string& where) {
  array(j, where);
  std::vector<std::vector<Rational>> m;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string wi = where + "[" + std::to_string(i) + "]";
    array(j[i], wi);
    std::vector<Rational> row;
    for (std::size_t k = 0; k < j[i].size(); ++k) row.push_back(rational_from(j[i][k], wi + "[" + std::to_string(k) + "]"));
    m.push_back(std::move(row));
  }
  return m;
}

struct PointFile {
  AlgebraRef algebra;
  DecoratedAdelicPoint point;
};

inline Json to_json(const PointFile& p) {
  Json j;
  j["algebra"] = to_json(p.algebra);
  j["kernel"] = kernel_basis_json(p.point.kernel);
  j["operator"] = operator_json(p.point.P);
  j["exponents"] = exponents_json(p.point.exponents);
  j["certificate"] = to_json(p.point.certificate);
  return j;
}

// Parsing only checks the schema; verify_point re-establishes the invariants.
inline PointFile point_file_from(const Json& j, const std::filesystem::path& base, const std::string& where = "point") {
  AlgebraRef a = algebra_ref_from(field(j, "algebra", where), base, where + ".algebra");
  KernelBasis v = kernel_basis_from(field(j, "kernel", where), a.algebra, where + ".kernel");
  DifferentialOperator P = operator_from_json(field(j, "operator", where), a.algebra, where + ".operator");
  auto ex = exponents_from(field(j, "exponents", where), where + ".exponents");
  ScalarPolynomial q = scalar_poly_from(field(j, "certificate", where), where + ".certificate");
  return {a, DecoratedAdelicPoint{a.algebra, std::move(v), std::move(P), std::move(ex), std::move(q)}};
}
inline PointFile load_point(const std::filesystem::path& p) {
  return point_file_from(read_json_file(p), p.parent_path(), p.filename().string());
}

// Rational Grassmannian points

struct RationalPointFile {
  AlgebraRef algebra;
  RationalPoint point;
};

inline Json to_json(const RationalPointFile& r) {
  Json j;
  j["algebra"] = to_json(r.algebra);
  j["theta"] = to_json(r.point.theta);
  Json gens = Json::array();
  for (const auto& n : r.point.generators) gens.push_back(to_json(n));
  j["generators"] = gens;
  j["h"] = to_json(r.point.h);
  j["g"] = to_json(r.point.g);
  return j;
}

inline RationalPointFile rational_point_from(const Json& j, const std::filesystem::path& base,
                                             const std::string& where = "rational point") {
  AlgebraRef a = algebra_ref_from(field(j, "algebra", where), base, where + ".algebra");
  RationalPoint M{a.algebra, scalar_poly_from(field(j, "theta", where), where + ".theta"), {},
                  scalar_poly_from(field(j, "h", where), where + ".h"), scalar_poly_from(field(j, "g", where), where + ".g")};
  if (M.theta.is_zero() || M.h.is_zero() || M.g.is_zero()) throw ParseError(where + ": theta, h and g must be nonzero");
  const Json& gj = array(field(j, "generators", where), where + ".generators");
  for (std::size_t i = 0; i < gj.size(); ++i)
    M.generators.push_back(algebra_poly_from(gj[i], a.algebra, where + ".generators[" + std::to_string(i) + "]"));
  return {a, std::move(M)};
}
inline RationalPointFile load_rational_point(const std::filesystem::path& p) {
  return rational_point_from(read_json_file(p), p.parent_path(), p.filename().string());
}

// Reports

inline Json report_json(const Report& r) {
  Json j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  if (!r.witness.empty()) j["witness"] = r.witness;
  if (!r.children.empty()) {
    Json cs = Json::array();
    for (const auto& c : r.children) cs.push_back(report_json(c));
    j["children"] = cs;
  }
  return j;
}

inline std::string emit_json(const Report& r) {
  Json j;
  j["ok"] = r.ok();
  j["failures"] = r.failures();
  j["report"] = report_json(r);
  return dump(j);
}

inline Report report_from(const Json& j, const std::string& where = "report") {
  Report r;
  const Json& n = field(j, "name", where);
  const Json& p = field(j, "passed", where);
  if (!n.is_string() || !p.is_boolean()) throw ParseError(where + ": malformed report node");
  r.name = n.get<std::string>();
  r.passed = p.get<bool>();
  if (j.contains("witness")) r.witness = j["witness"].get<std::string>();
  if (j.contains("children")) {
    const Json& cs = array(j["children"], where + ".children");
    for (std::size_t i = 0; i < cs.size(); ++i) r.children.push_back(report_from(cs[i], where + ".children[" + std::to_string(i) + "]"));
  }
  return r;
}

}  // namespace io
}  // namespace adelic
