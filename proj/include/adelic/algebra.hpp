#pragma once

// Finite-dimensional associative Q-algebras given by structure constants
// b_i b_j = sum_k c_ijk b_k, their elements, regular representations,
// Jacobson radical and idempotent-family verification.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "adelic/errors.hpp"
#include "adelic/linalg.hpp"
#include "adelic/rational.hpp"
#include "adelic/report.hpp"

namespace adelic {

using Coords = std::vector<Rational>;

inline std::string coords_str(const Coords& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

class FiniteDimAlgebra;
using Algebra = std::shared_ptr<const FiniteDimAlgebra>;

class FiniteDimAlgebra {
 public:
  using Constants = std::vector<std::vector<std::vector<Rational>>>;  // [i][j][k]

  // Shape is validated here; the algebraic axioms are checked by verify_algebra.
  static Algebra create(std::vector<std::string> names, Constants c, Coords one, std::vector<Coords> idempotents,
                        std::optional<bool> split = std::nullopt) {
    const std::size_t d = names.size();
    if (d == 0) throw std::invalid_argument("algebra dimension must be positive");
    if (c.size() != d) throw std::invalid_argument("structure constants: expected " + std::to_string(d) + " slices");
    for (const auto& ci : c) {
      if (ci.size() != d) throw std::invalid_argument("structure constants: bad row count");
      for (const auto& cij : ci)
        if (cij.size() != d) throw std::invalid_argument("structure constants: bad entry length");
    }
    if (one.size() != d) throw std::invalid_argument("identity has wrong length");
    for (const auto& e : idempotents)
      if (e.size() != d) throw std::invalid_argument("idempotent has wrong length");
    if (idempotents.empty()) throw std::invalid_argument("at least one idempotent is required");
    auto a = std::shared_ptr<FiniteDimAlgebra>(new FiniteDimAlgebra());
    a->names_ = std::move(names);
    a->c_ = std::move(c);
    a->one_ = std::move(one);
    a->idem_ = std::move(idempotents);
    a->split_ = split;
    a->tab_.resize(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          if (!a->c_[i][j][k].is_zero()) a->tab_[i * d + j].emplace_back(k, a->c_[i][j][k]);
    return a;
  }

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& basis_names() const { return names_; }
  const Constants& structure_constants() const { return c_; }
  const Coords& one() const { return one_; }
  const std::vector<Coords>& idempotents() const { return idem_; }
  std::size_t num_idempotents() const { return idem_.size(); }
  std::optional<bool> split() const { return split_; }

  Coords mul(const Coords& a, const Coords& b) const {
    const std::size_t d = dim();
    Coords out(d, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (b[j].is_zero()) continue;
        Rational ab = a[i] * b[j];
        for (const auto& [k, c] : tab_[i * d + j]) out[k] += ab * c;
      }
    }
    return out;
  }

  // Matrix of x -> a x (column j is a * b_j).
  Matrix<Rational> left_matrix(const Coords& a) const {
    const std::size_t d = dim();
    Matrix<Rational> m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j)
        for (const auto& [k, c] : tab_[i * d + j]) m(k, j) += a[i] * c;
    }
    return m;
  }
  // Matrix of x -> x a (column j is b_j * a).
  Matrix<Rational> right_matrix(const Coords& a) const {
    const std::size_t d = dim();
    Matrix<Rational> m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j)
        for (const auto& [k, c] : tab_[j * d + i]) m(k, j) += a[i] * c;
    }
    return m;
  }

  bool same_as(const FiniteDimAlgebra& o) const {
    return this == &o || (names_ == o.names_ && c_ == o.c_ && one_ == o.one_ && idem_ == o.idem_);
  }

 private:
  FiniteDimAlgebra() = default;
  std::vector<std::string> names_;
  Constants c_;
  Coords one_;
  std::vector<Coords> idem_;
  std::optional<bool> split_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> tab_;
};

inline void require_same(const Algebra& a, const Algebra& b) {
  if (!a || !b) throw std::invalid_argument("missing algebra");
  if (a != b && !a->same_as(*b)) throw AlgebraMismatch();
}

class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(Algebra alg, Coords x) : alg_(std::move(alg)), x_(std::move(x)) {
    if (!alg_) throw std::invalid_argument("element without algebra");
    if (x_.size() != alg_->dim()) throw std::invalid_argument("coordinate vector has wrong length");
  }
  static AlgebraElement zero(const Algebra& a) { return AlgebraElement(a, Coords(a->dim(), Rational(0))); }
  static AlgebraElement one(const Algebra& a) { return AlgebraElement(a, a->one()); }
  static AlgebraElement scalar(const Algebra& a, const Rational& s) { return one(a).scaled(s); }
  static AlgebraElement basis(const Algebra& a, std::size_t i) {
    Coords x(a->dim(), Rational(0));
    x.at(i) = Rational(1);
    return AlgebraElement(a, std::move(x));
  }
  static AlgebraElement idempotent(const Algebra& a, std::size_t i) { return AlgebraElement(a, a->idempotents().at(i)); }

  const Algebra& algebra() const { return alg_; }
  const Coords& coords() const { return x_; }
  const Rational& operator[](std::size_t i) const { return x_[i]; }
  bool is_zero() const {
    for (const auto& v : x_)
      if (!v.is_zero()) return false;
    return true;
  }

  AlgebraElement scaled(const Rational& s) const {
    AlgebraElement r = *this;
    for (auto& v : r.x_) v *= s;
    return r;
  }
  AlgebraElement& operator+=(const AlgebraElement& o) {
    require_same(alg_, o.alg_);
    for (std::size_t i = 0; i < x_.size(); ++i) x_[i] += o.x_[i];
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    require_same(alg_, o.alg_);
    for (std::size_t i = 0; i < x_.size(); ++i) x_[i] -= o.x_[i];
    return *this;
  }
  AlgebraElement operator-() const { return scaled(Rational(-1)); }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    require_same(a.alg_, b.alg_);
    return AlgebraElement(a.alg_, a.alg_->mul(a.x_, b.x_));
  }
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.x_ == b.x_; }

  // Named by the basis labels, e.g. "1 + 1/2*eps".
  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (x_[i].is_zero()) continue;
      Rational mag = x_[i].sign() < 0 ? -x_[i] : x_[i];
      s += s.empty() ? (x_[i].sign() < 0 ? "-" : "") : (x_[i].sign() < 0 ? " - " : " + ");
      const std::string& name = alg_->basis_names()[i];
      if (!mag.is_one()) s += mag.str() + "*";
      s += name;
    }
    return s.empty() ? "0" : s;
  }

 private:
  Algebra alg_;
  Coords x_;
};

inline AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }

inline Matrix<Rational> left_regular_matrix(const AlgebraElement& r) { return r.algebra()->left_matrix(r.coords()); }
inline Matrix<Rational> right_regular_matrix(const AlgebraElement& r) { return r.algebra()->right_matrix(r.coords()); }

inline bool is_invertible(const AlgebraElement& r) { return !determinant(left_regular_matrix(r)).is_zero(); }

inline AlgebraElement invert(const AlgebraElement& r) {
  Matrix<Rational> l = left_regular_matrix(r);
  Rational det = determinant(l);
  if (det.is_zero()) throw NonInvertible("element " + r.str() + " is not invertible", det.str());
  auto x = solve(l, r.algebra()->one());
  return AlgebraElement(r.algebra(), *x);
}

// Span (as column basis) of a list of coordinate vectors.
inline Matrix<Rational> span_of(const std::vector<Coords>& vs, std::size_t d) {
  return column_basis(Matrix<Rational>::from_columns(vs, d));
}

// Trace-form kernel: x in rad R iff tr(L_{xy}) = 0 for every y (characteristic zero).
inline std::vector<AlgebraElement> radical(const Algebra& A) {
  const std::size_t d = A->dim();
  const auto& c = A->structure_constants();
  std::vector<Rational> tau(d, Rational(0));  // tau_k = tr L_{b_k}
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) tau[k] += c[k][j][j];
  Matrix<Rational> t(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) t(i, j) += c[i][j][k] * tau[k];
  Matrix<Rational> ns = nullspace(t.transpose());
  std::vector<AlgebraElement> out;
  for (std::size_t j = 0; j < ns.cols(); ++j) out.emplace_back(A, ns.column(j));
  return out;
}

namespace detail {
inline std::vector<Coords> coords_of(const std::vector<AlgebraElement>& xs) {
  std::vector<Coords> v;
  for (const auto& x : xs) v.push_back(x.coords());
  return v;
}
inline std::size_t span_dim(const std::vector<Coords>& vs, std::size_t d) {
  if (vs.empty()) return 0;
  return rank(Matrix<Rational>::from_columns(vs, d));
}
}  // namespace detail

// Checks that J is a nilpotent two-sided ideal, trace-orthogonal to R, with semisimple quotient.
inline Report verify_radical(const Algebra& A, const std::vector<AlgebraElement>& J) {
  const std::size_t d = A->dim();
  Report rep("radical");
  std::vector<Coords> jc = detail::coords_of(J);
  std::size_t jdim = detail::span_dim(jc, d);
  Matrix<Rational> jspan = jdim ? span_of(jc, d) : Matrix<Rational>(d, 0);

  bool ideal = true;
  std::string bad;
  for (const auto& j : J)
    for (std::size_t i = 0; i < d; ++i) {
      auto b = AlgebraElement::basis(A, i);
      for (const auto& prod : {b * j, j * b}) {
        if (jdim == 0 ? !prod.is_zero()
                      : !column_span_contains(jspan, Matrix<Rational>::from_columns({prod.coords()}, d))) {
          ideal = false;
          bad = prod.str();
        }
      }
    }
  rep.add(Report::check("two-sided ideal", ideal, ideal ? "dim " + std::to_string(jdim) : "product outside: " + bad));

  // J^l = 0 for some l <= d.
  std::vector<Coords> power = jc;
  std::size_t l = 1;
  while (detail::span_dim(power, d) > 0 && l <= d) {
    std::vector<Coords> next;
    for (const auto& p : power)
      for (const auto& j : jc) next.push_back(A->mul(p, j));
    power = next;
    ++l;
  }
  bool nil = detail::span_dim(power, d) == 0;
  rep.add(Report::check("nilpotent", nil, nil ? "J^" + std::to_string(l) + " = 0" : "J^" + std::to_string(d + 1) + " != 0"));

  // Trace form of R/J: tr_R(L_z) - tr_J(L_z|_J) for z = b_i b_j; its kernel must be exactly J.
  Matrix<Rational> form(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Coords z = A->mul(AlgebraElement::basis(A, i).coords(), AlgebraElement::basis(A, j).coords());
      Matrix<Rational> lz = A->left_matrix(z);
      Rational tr(0);
      for (std::size_t k = 0; k < d; ++k) tr += lz(k, k);
      if (jdim) {
        // restriction of L_z to J in the basis jspan
        Matrix<Rational> img = lz * jspan;
        auto coeffs = solve_matrix(jspan, img);
        if (coeffs)
          for (std::size_t k = 0; k < jdim; ++k) tr -= (*coeffs)(k, k);
      }
      form(i, j) = tr;
    }
  std::size_t kernel_dim = d - rank(form);
  bool semisimple = kernel_dim == jdim;
  rep.add(Report::check("quotient semisimple", semisimple,
                        "quotient trace-form kernel dim " + std::to_string(kernel_dim) + " vs dim J " +
                            std::to_string(jdim)));
  return rep;
}

// Associativity on basis triples and two-sided identity.
inline Report verify_algebra(const Algebra& A) {
  const std::size_t d = A->dim();
  Report rep("algebra axioms");
  std::string bad;
  for (std::size_t i = 0; i < d && bad.empty(); ++i)
    for (std::size_t j = 0; j < d && bad.empty(); ++j)
      for (std::size_t k = 0; k < d && bad.empty(); ++k) {
        auto bi = AlgebraElement::basis(A, i), bj = AlgebraElement::basis(A, j), bk = AlgebraElement::basis(A, k);
        if ((bi * bj) * bk != bi * (bj * bk))
          bad = "(" + A->basis_names()[i] + "*" + A->basis_names()[j] + ")*" + A->basis_names()[k];
      }
  rep.add(Report::check("associative", bad.empty(), bad.empty() ? std::to_string(d * d * d) + " basis triples" : bad));
  auto one = AlgebraElement::one(A);
  std::string unit_bad;
  for (std::size_t i = 0; i < d; ++i) {
    auto b = AlgebraElement::basis(A, i);
    if (one * b != b || b * one != b) unit_bad = A->basis_names()[i];
  }
  rep.add(Report::check("identity", unit_bad.empty(), unit_bad.empty() ? one.str() : "fails on " + unit_bad));
  return rep;
}

// dim_Q of e_i (R/J) e_j.
inline std::size_t corner_dim_mod_radical(const Algebra& A, const Coords& ei, const Coords& ej,
                                          const std::vector<AlgebraElement>& J) {
  const std::size_t d = A->dim();
  std::vector<Coords> full, rad;
  for (std::size_t b = 0; b < d; ++b) full.push_back(A->mul(A->mul(ei, AlgebraElement::basis(A, b).coords()), ej));
  for (const auto& j : J) rad.push_back(A->mul(A->mul(ei, j.coords()), ej));
  return detail::span_dim(full, d) - detail::span_dim(rad, d);
}

inline Report verify_idempotent_family(const Algebra& A) {
  Report rep("idempotent family");
  const auto& es = A->idempotents();
  const std::size_t m = es.size();
  const std::size_t d = A->dim();
  if (A->split() == std::optional<bool>(false)) {
    rep.add(Report::fail("split", "algebra declared non-split; primitivity cannot be certified"));
    return rep;
  }
  Coords zero(d, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    bool ok = A->mul(es[i], es[i]) == es[i];
    rep.add(Report::check("e" + std::to_string(i + 1) + " idempotent", ok,
                          ok ? coords_str(es[i]) : "e^2 = " + coords_str(A->mul(es[i], es[i]))));
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      Coords p = A->mul(es[i], es[j]);
      if (p != zero)
        rep.add(Report::fail("orthogonal", "e" + std::to_string(i + 1) + "*e" + std::to_string(j + 1) + " = " + coords_str(p)));
    }
  Coords sum(d, Rational(0));
  for (const auto& e : es)
    for (std::size_t k = 0; k < d; ++k) sum[k] += e[k];
  rep.add(Report::check("sum is identity", sum == A->one(), coords_str(sum)));

  auto J = radical(A);
  std::size_t quotient_dim = d - J.size();
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t c = corner_dim_mod_radical(A, es[i], es[i], J);
    rep.add(Report::check("e" + std::to_string(i + 1) + " primitive", c == 1,
                          "dim e(R/rad R)e = " + std::to_string(c)));
  }
  // Split semisimple quotient: dim R/J = sum over equivalence classes of (class size)^2.
  std::vector<int> cls(m, -1);
  int ncls = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = ncls;
    for (std::size_t j = i + 1; j < m; ++j)
      if (cls[j] < 0 && corner_dim_mod_radical(A, es[i], es[j], J) > 0) cls[j] = ncls;
    ++ncls;
  }
  std::size_t expect = 0;
  for (int k = 0; k < ncls; ++k) {
    std::size_t n = 0;
    for (int c : cls) n += (c == k);
    expect += n * n;
  }
  rep.add(Report::check("quotient is a product of matrix algebras", expect == quotient_dim,
                        "dim R/rad R = " + std::to_string(quotient_dim) + ", expected " + std::to_string(expect)));
  return rep;
}

}  // namespace adelic
