#pragma once

// Kernel modules V = sum_j f_j R inside QP(R): structured bases, the
// classification conditions (freeness, exponent grading, nondegeneracy), and
// the Fitting-split solution operator F_A of (d/dx + A) v = u.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adelic/quasi.hpp"

namespace adelic {

// Q-coordinates on a finite piece of QP(R): one block of d coordinates for each
// (exponent, power of x) pair that has been registered.
class QPCoordinates {
 public:
  explicit QPCoordinates(std::size_t d) : d_(d) {}

  void include(const QuasiExp& f) {
    for (const auto& [a, p] : f.terms())
      for (std::size_t t = 0; t < p.size(); ++t) add(a, t);
  }
  void add(const Rational& alpha, std::size_t power) {
    auto key = std::make_pair(alpha, power);
    if (!idx_.count(key)) {
      std::size_t n = idx_.size();
      idx_.emplace(key, n);
      keys_.push_back(key);
    }
  }
  std::size_t dim() const { return idx_.size() * d_; }
  const std::vector<std::pair<Rational, std::size_t>>& keys() const { return keys_; }

  std::vector<Rational> vec(const QuasiExp& f) const {
    std::vector<Rational> v(dim(), Rational(0));
    for (const auto& [a, p] : f.terms())
      for (std::size_t t = 0; t < p.size(); ++t) {
        auto it = idx_.find({a, t});
        if (it == idx_.end()) throw std::out_of_range("quasipolynomial term outside the coordinate range");
        for (std::size_t c = 0; c < d_; ++c) v[it->second * d_ + c] = p.coeffs()[t][c];
      }
    return v;
  }

  QuasiExp element(const Algebra& a, const std::vector<Rational>& v) const {
    std::map<Rational, std::vector<Coords>> polys;
    for (std::size_t k = 0; k < keys_.size(); ++k) {
      auto& cs = polys[keys_[k].first];
      if (cs.size() <= keys_[k].second) cs.resize(keys_[k].second + 1, Coords(d_, Rational(0)));
      for (std::size_t c = 0; c < d_; ++c) cs[keys_[k].second][c] = v[k * d_ + c];
    }
    QuasiExp f(a);
    for (auto& [alpha, cs] : polys) f += QuasiExp(AlgebraPolynomial(a, cs), alpha);
    return f;
  }

 private:
  std::size_t d_;
  std::map<std::pair<Rational, std::size_t>, std::size_t> idx_;
  std::vector<std::pair<Rational, std::size_t>> keys_;
};

// Columns f_j b_c spanning V over Q.
inline Matrix<Rational> q_span_matrix(const std::vector<QuasiExp>& fs, const Algebra& a, const QPCoordinates& co) {
  std::vector<std::vector<Rational>> cols;
  for (const auto& f : fs)
    for (std::size_t c = 0; c < a->dim(); ++c) cols.push_back(co.vec(f.right_mul(AlgebraElement::basis(a, c))));
  return Matrix<Rational>::from_columns(cols, co.dim());
}

struct KernelTerm {
  Rational exponent;
  AlgebraPolynomial poly;  // contributes poly(x) exp(exponent x) e_i
  friend bool operator==(const KernelTerm&, const KernelTerm&) = default;
};

// Basis f_j = sum_i p_ij(x) exp(alpha_ij x) e_i, stored as elems[j][i].
class KernelBasis {
 public:
  KernelBasis() = default;
  KernelBasis(Algebra a, std::vector<std::vector<KernelTerm>> elems) : alg_(std::move(a)), e_(std::move(elems)) {
    for (const auto& el : e_) {
      if (el.size() != alg_->num_idempotents())
        throw std::invalid_argument("kernel element needs one term per idempotent");
      for (const auto& t : el)
        if (!t.poly.is_zero()) require_same(alg_, t.poly.algebra());
    }
  }

  const Algebra& algebra() const { return alg_; }
  std::size_t rank() const { return e_.size(); }
  std::size_t idempotent_count() const { return alg_->num_idempotents(); }
  const std::vector<std::vector<KernelTerm>>& elements_structured() const { return e_; }
  const KernelTerm& term(std::size_t j, std::size_t i) const { return e_.at(j).at(i); }

  // p_ij e_i
  AlgebraPolynomial component(std::size_t i, std::size_t j) const {
    const auto& t = e_.at(j).at(i);
    if (t.poly.is_zero()) return AlgebraPolynomial(alg_);
    return t.poly.right_mul(AlgebraElement::idempotent(alg_, i));
  }
  QuasiExp element(std::size_t j) const {
    QuasiExp f(alg_);
    for (std::size_t i = 0; i < idempotent_count(); ++i) f += QuasiExp(component(i, j), e_[j][i].exponent);
    return f;
  }
  std::vector<QuasiExp> elements() const {
    std::vector<QuasiExp> v;
    for (std::size_t j = 0; j < rank(); ++j) v.push_back(element(j));
    return v;
  }
  // alpha_ij as an m x l table.
  std::vector<std::vector<Rational>> exponent_matrix() const {
    std::vector<std::vector<Rational>> m(idempotent_count(), std::vector<Rational>(rank()));
    for (std::size_t j = 0; j < rank(); ++j)
      for (std::size_t i = 0; i < idempotent_count(); ++i) m[i][j] = e_[j][i].exponent;
    return m;
  }

  // Reads the structured form off a raw basis when every f_j e_i carries a single exponent.
  static std::optional<KernelBasis> from_raw(const Algebra& a, const std::vector<QuasiExp>& fs) {
    std::vector<std::vector<KernelTerm>> elems;
    for (const auto& f : fs) {
      std::vector<KernelTerm> el;
      for (std::size_t i = 0; i < a->num_idempotents(); ++i) {
        QuasiExp fe = f.right_mul(AlgebraElement::idempotent(a, i));
        if (fe.terms().size() > 1) return std::nullopt;
        if (fe.is_zero()) el.push_back({Rational(0), AlgebraPolynomial(a)});
        else el.push_back({fe.terms().begin()->first, fe.terms().begin()->second});
      }
      elems.push_back(std::move(el));
    }
    return KernelBasis(a, std::move(elems));
  }

  friend bool operator==(const KernelBasis& x, const KernelBasis& y) { return x.e_ == y.e_; }

 private:
  Algebra alg_;
  std::vector<std::vector<KernelTerm>> e_;
};

inline std::string exponent_matrix_str(const std::vector<std::vector<Rational>>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += (i ? ", [" : "[");
    for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? ", " : "") + m[i][j].str();
    s += "]";
  }
  return s + "]";
}

struct TheoremACheck {
  Report report;
  bool free = false;
  bool graded = false;
  bool nondegenerate = false;
  QuasiScalar det;
  std::optional<KernelBasis> structured;
  bool ok() const { return free && graded && nondegenerate && structured.has_value(); }
  // Name of the first failing condition, for rejections.
  std::string failed_condition() const {
    if (!nondegenerate) return "degenerate";
    if (!free) return "freeness";
    if (!graded) return "exponent grading";
    if (!structured) return "structured form";
    return "";
  }
};

// Freeness, exponent grading and nondegeneracy of V = sum f_j R.
inline TheoremACheck check_theorem_A(const Algebra& a, const std::vector<QuasiExp>& fs) {
  TheoremACheck out;
  out.report = Report("kernel classification conditions");
  const std::size_t d = a->dim(), l = fs.size();
  QPCoordinates co(d);
  for (const auto& f : fs) co.include(f);
  Matrix<Rational> span = q_span_matrix(fs, a, co);
  std::size_t r = rank(span);
  out.free = (r == l * d);
  out.report.add(Report::check("freeness", out.free,
                               "dim_Q V = " + std::to_string(r) + ", l*d = " + std::to_string(l * d)));

  std::string bad;
  for (std::size_t j = 0; j < l && bad.empty(); ++j)
    for (const auto& [alpha, p] : fs[j].terms()) {
      Matrix<Rational> col = Matrix<Rational>::from_columns({co.vec(QuasiExp(p, alpha))}, co.dim());
      if (!column_span_contains(span, col)) {
        bad = "exp(" + alpha.str() + "x)-component of f" + std::to_string(j + 1) + " is not in V";
        break;
      }
    }
  out.graded = bad.empty();
  out.report.add(Report::check("exponent grading", out.graded, out.graded ? "components lie in V" : bad));

  if (out.graded) {
    out.structured = KernelBasis::from_raw(a, fs);
    out.report.add(Report::check("structured form", out.structured.has_value(),
                                 out.structured ? exponent_matrix_str(out.structured->exponent_matrix())
                                                : "some f_j e_i mixes exponents; supply a structured basis"));
  }
  auto nd = is_nondegenerate(fs, a);
  out.nondegenerate = nd.nondegenerate;
  out.det = nd.det;
  out.report.add(Report::check("nondegenerate", out.nondegenerate, "flattened Wronski det = " + nd.det.str()));
  return out;
}

inline TheoremACheck check_theorem_A(const KernelBasis& v) {
  TheoremACheck out = check_theorem_A(v.algebra(), v.elements());
  if (out.structured) out.structured = v;  // keep the caller's exponent labels
  return out;
}

struct FittingSplit {
  Matrix<Rational> A;
  Matrix<Rational> U0;  // columns: basis of ker A^d
  Matrix<Rational> U1;  // columns: basis of im A^d
};

inline FittingSplit fitting_split(const Matrix<Rational>& A) {
  const std::size_t d = A.rows();
  Matrix<Rational> p = Matrix<Rational>::identity(d);
  for (std::size_t i = 0; i < d; ++i) p = p * A;
  FittingSplit fs{A, nullspace(p), column_basis(p)};
  if (fs.U0.cols() + fs.U1.cols() != d || rank(fs.U0.hcat(fs.U1)) != d)
    throw ConsistencyError("Fitting decomposition is not a direct sum");
  return fs;
}

namespace detail {
using VecPoly = std::vector<Coords>;  // coefficient vectors of a polynomial with values in Q^d

inline Coords mat_vec(const Matrix<Rational>& m, const Coords& v) { return m * v; }
inline bool zero_vec(const Coords& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}
}  // namespace detail

// Solves (d/dx + A) v = u for polynomial u with values in Q^d, choosing the
// solution of the nilpotent part that vanishes at 0.
inline std::vector<Coords> f_a_apply_matrix(const Matrix<Rational>& A, const std::vector<Coords>& u) {
  using detail::VecPoly;
  const std::size_t d = A.rows();
  if (u.empty()) return {};
  FittingSplit fs = fitting_split(A);
  const std::size_t k0 = fs.U0.cols();
  Matrix<Rational> basis = fs.U0.hcat(fs.U1);
  Matrix<Rational> binv = *inverse(basis);
  VecPoly u0(u.size(), Coords(d, Rational(0))), u1(u.size(), Coords(d, Rational(0)));
  for (std::size_t t = 0; t < u.size(); ++t) {
    Coords y = binv * u[t];
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t k = 0; k < d; ++k) {
        if (y[k].is_zero()) continue;
        (k < k0 ? u0[t] : u1[t])[c] += basis(c, k) * y[k];
      }
  }
  VecPoly out(u.size() + d + 1, Coords(d, Rational(0)));

  // Nilpotent part: exp(-Ax) int_0^x exp(At) u0(t) dt, all series finite since A^d U0 = 0.
  {
    VecPoly integrand(u.size() + d, Coords(d, Rational(0)));
    for (std::size_t s = 0; s < u.size(); ++s) {
      Coords v = u0[s];
      for (std::size_t k = 0; k < d && !detail::zero_vec(v); ++k) {
        Rational inv_fact = Rational(1) / factorial(static_cast<unsigned>(k));
        for (std::size_t c = 0; c < d; ++c) integrand[k + s][c] += v[c] * inv_fact;
        v = A * v;
      }
    }
    VecPoly integral(integrand.size() + 1, Coords(d, Rational(0)));
    for (std::size_t n = 0; n < integrand.size(); ++n)
      for (std::size_t c = 0; c < d; ++c) integral[n + 1][c] = integrand[n][c] / Rational(static_cast<long>(n + 1));
    Matrix<Rational> negA = Matrix<Rational>(d, d) - A;
    for (std::size_t n = 0; n < integral.size(); ++n) {
      Coords v = integral[n];
      for (std::size_t k = 0; k < d && !detail::zero_vec(v); ++k) {
        if (n + k >= out.size()) out.resize(n + k + 1, Coords(d, Rational(0)));
        Rational inv_fact = Rational(1) / factorial(static_cast<unsigned>(k));
        for (std::size_t c = 0; c < d; ++c) out[n + k][c] += v[c] * inv_fact;
        v = negA * v;
      }
    }
  }

  // Invertible part: sum_k (-1)^k A^{-k-1} u1^{(k)}, computed in U1-coordinates where A acts by M.
  const std::size_t k1 = fs.U1.cols();
  if (k1 > 0) {
    Matrix<Rational> minv = *inverse(*solve_matrix(fs.U1, A * fs.U1));  // A U1 = U1 M
    VecPoly c(u.size(), Coords(k1, Rational(0)));
    for (std::size_t t = 0; t < u.size(); ++t) {
      Coords y = binv * u[t];
      for (std::size_t k = 0; k < k1; ++k) c[t][k] = y[k0 + k];
    }
    VecPoly deriv = c;  // c^{(k)}
    Matrix<Rational> power = minv;  // M^{-k-1}
    Rational sign(1);
    for (std::size_t k = 0; k < u.size(); ++k) {
      for (std::size_t t = 0; t < deriv.size(); ++t) {
        Coords w = power * deriv[t];
        Coords back = fs.U1 * w;
        for (std::size_t j = 0; j < d; ++j) out[t][j] += sign * back[j];
      }
      VecPoly next;
      for (std::size_t t = 1; t < deriv.size(); ++t) {
        Coords v = deriv[t];
        for (auto& x : v) x *= Rational(static_cast<long>(t));
        next.push_back(std::move(v));
      }
      deriv = std::move(next);
      power = power * minv;
      sign = -sign;
    }
  }
  while (!out.empty() && detail::zero_vec(out.back())) out.pop_back();
  return out;
}

}  // namespace adelic

namespace adelic {

// A = left multiplication by sum_i (alpha - gamma_i) e_i.
inline Matrix<Rational> successor_shift_matrix(const Algebra& a, const Rational& alpha, const std::vector<Rational>& gamma) {
  if (gamma.size() != a->num_idempotents()) throw std::invalid_argument("gamma needs one entry per idempotent");
  AlgebraElement s = AlgebraElement::zero(a);
  for (std::size_t i = 0; i < gamma.size(); ++i) s += AlgebraElement::idempotent(a, i).scaled(alpha - gamma[i]);
  return left_regular_matrix(s);
}

// F_A(u) with A = left multiplication by sum_i (alpha - gamma_i) e_i; satisfies (d/dx + A) F_A(u) = u.
inline AlgebraPolynomial f_a_apply(const Rational& alpha, const std::vector<Rational>& gamma, const AlgebraPolynomial& u) {
  const Algebra& a = u.algebra();
  if (u.is_zero()) return u;
  return AlgebraPolynomial(a, f_a_apply_matrix(successor_shift_matrix(a, alpha, gamma), u.coeffs()));
}

}  // namespace adelic
